"""Command-line front end.

Exit codes: 0 success, 1 mathematical mismatch, 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import warnings

from .curve import enumerate_components, table_violations
from .exactnum import CycloNum, format_exact
from .lefschetz import ContributionInput, contribution_residue, contribution_ring, ingredient_dump
from .pipeline import (
    HypothesisWarning,
    MathematicalInconsistency,
    TraceRequest,
    compute_dimension,
    compute_trace,
    eigenspace_dims,
)
from .specfile import SpecError, load_spec

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


def parse_levels(text: str) -> range:
    """``a..b`` (inclusive) or a single level ``a``."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"levels must look like a..b, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or negative level range {text!r}")
    return range(lo, hi + 1)


def _human(value) -> str:
    return format_exact(value)


def _json_value(value):
    if isinstance(value, CycloNum) and not value.is_rational():
        return {"p": value.p, "coeffs": [format_exact(c) for c in value.coeffs]}
    s = format_exact(value)
    return int(s) if "/" not in s else s


def _requests(spec, args):
    if args.mode == "verlinde":
        if args.levels is None:
            raise ValueError("verlinde mode needs --levels")
        return [TraceRequest(spec, "verlinde", level=l) for l in args.levels]
    if args.m is None or args.n is None:
        raise ValueError("thaddeus mode needs --m and --n")
    return [TraceRequest(spec, "thaddeus", m=args.m, n=args.n)]


def _print_table(headers, rows, out):
    cells = [headers] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    for r in cells:
        out.write("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def cmd_trace(args, out) -> int:
    spec = load_spec(args.spec)
    reports = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        for req in _requests(spec, args):
            reports.append(compute_trace(req))
    w = (spec.d - 1) // 2
    ni = [f"N{i}" for i in range(1, w + 1)]
    if args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["level", "m", "n", "N0", *ni, "trace"])
        for r in reports:
            level = "" if r.level is None else r.level
            writer.writerow([level, r.m, r.n, _human(r.N0), *map(_human, r.Ni), _human(r.trace)])
    elif args.format == "json-lines":
        for r in reports:
            row = {
                "level": r.level,
                "m": r.m,
                "n": r.n,
                "N0": _json_value(r.N0),
                "Ni": [_json_value(v) for v in r.Ni],
                "trace": _json_value(r.trace),
                "hypothesis_ok": r.hypothesis_ok,
            }
            out.write(json.dumps(row) + "\n")
    else:
        rows = [
            ["-" if r.level is None else r.level, r.m, r.n, _human(r.N0), *map(_human, r.Ni),
             _human(r.trace), "ok" if r.hypothesis_ok else "OUTSIDE"]
            for r in reports
        ]
        _print_table(["level", "m", "n", "N0", *ni, "trace", "hypothesis"], rows, out)
    return EXIT_OK


def cmd_crosscheck(args, out) -> int:
    spec = load_spec(args.spec)
    for i in range(1, (spec.d - 1) // 2 + 1):
        for comp in enumerate_components(spec, i):
            problems = table_violations(comp, spec.d, spec.g_X)
            if problems:
                out.write(
                    f"MISMATCH: degree table of component i={comp.i} k={comp.k} "
                    f"divisor={comp.divisor} is inconsistent\n"
                )
                for msg in problems:
                    out.write(f"  {msg}\n")
                m, n = (args.levels[0], args.levels[0] * (spec.d // 2 - 1)) if args.levels else (1, 1)
                out.write(ingredient_dump(ContributionInput(comp, m, n, spec.d, spec.g_X)) + "\n")
                return EXIT_MISMATCH
    checked = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        for req in _requests(spec, args):
            report = compute_trace(req, crosscheck=True)
            for rec in report.crosscheck:
                checked += 1
                tag = "ok" if rec.ok else "MISMATCH"
                out.write(
                    f"level={req.level} m={req.m} n={req.n} i={rec.i} k={rec.k} "
                    f"mult={rec.multiplicity} A={_human(rec.path_a)} B={_human(rec.path_b)} {tag}\n"
                )
                if not rec.ok:
                    out.write(ingredient_dump(rec.contribution) + "\n")
                    return EXIT_MISMATCH
    out.write(f"all {checked} component evaluations agree\n")
    return EXIT_OK


def cmd_dimension(args, out) -> int:
    spec = load_spec(args.spec)
    rows = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        for req in _requests(spec, args):
            dim = compute_dimension(spec, req.m, req.n)
            trace = compute_trace(req).trace
            eig = eigenspace_dims(spec, req)
            rows.append(["-" if req.level is None else req.level, req.m, req.n, dim,
                         _human(trace), " ".join(map(str, eig))])
    _print_table(["level", "m", "n", "dim", "trace", "eigendims"], rows, out)
    return EXIT_OK


def cmd_contribution(args, out) -> int:
    spec = load_spec(args.spec)
    req = _requests(spec, args)[0]
    comps = [c for c in enumerate_components(spec, args.i) if args.k is None or c.k == args.k]
    if not comps:
        raise ValueError(f"no fixed components with i={args.i}" + (f", k={args.k}" if args.k is not None else ""))
    status = EXIT_OK
    for comp in comps:
        inp = ContributionInput(comp, req.m, req.n, spec.d, spec.g_X)
        if args.dump:
            out.write(ingredient_dump(inp) + "\n")
            continue
        a = contribution_residue(inp)
        line = f"i={comp.i} k={comp.k} mult={comp.multiplicity} divisor={comp.divisor} residue={_human(a)}"
        if args.path == "both":
            b = contribution_ring(inp)
            line += f" ring={_human(b)} {'ok' if a == b else 'MISMATCH'}"
            if a != b:
                status = EXIT_MISMATCH
        out.write(line + "\n")
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verlinde-traces",
        description="Exact traces of curve automorphisms on Verlinde and Thaddeus spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("spec", help="curve/automorphism spec file")
        p.add_argument("--levels", type=parse_levels, help="level range a..b (verlinde mode)")
        p.add_argument("--mode", choices=["verlinde", "thaddeus"], default="verlinde")
        p.add_argument("--m", type=int)
        p.add_argument("--n", type=int)

    p = sub.add_parser("trace", help="trace of h, one row per level")
    common(p)
    p.add_argument("--format", choices=["table", "csv", "json-lines"], default="table")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("crosscheck", help="compare residue and ring evaluations per component")
    common(p)
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("dimension", help="dimension, trace and eigenspace dimensions")
    common(p)
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("contribution", help="contributions of the components of S^i X")
    common(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--path", choices=["residue", "both"], default="both")
    p.add_argument("--dump", action="store_true", help="print every ingredient")
    p.set_defaults(func=cmd_contribution)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except MathematicalInconsistency as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_MISMATCH
    except (SpecError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
