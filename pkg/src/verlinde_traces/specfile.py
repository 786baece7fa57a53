"""Line-oriented curve/automorphism spec files.

Grammar (``#`` starts a comment, blank lines are ignored)::

    [curve]
    p = 3
    g_X = 2
    g_Y = 0
    d = 4
    lambda = K^2

    [fixed_points]
    rot=1 lam=1
    rot=2 lam=2
    # or, for an involution:  hyperelliptic genus=2

    [h0]
    dims = 3 1 1

    [component i=1 k=0 mult=1]
    m1 = 0 -1 0
    m2 = -1 -1 0
    mp2 = -3 -1 -2
    nsmall = 0 -1 -2
    nprime = 0 -2 -2
    l = 0
    lprime = 0
    divisor = 1 0 0 0

``[h0]`` is optional when fixed points are given; it is recomputed and
cross-checked either way.  Component blocks are only needed for p > 2.
"""

from __future__ import annotations

import re
from dataclasses import replace
from pathlib import Path

from .curve import AutomorphismSpec, ComponentDatum, EigenDegreeTable, FixedPoint

__all__ = ["SpecError", "parse_spec", "load_spec"]


class SpecError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<spec>"):
        self.line = line
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


_CURVE_KEYS = {"p", "g_X", "g_Y", "d", "lambda"}
_COMPONENT_ROWS = ("m1", "m2", "mp2", "nsmall", "nprime")
_COMPONENT_KEYS = set(_COMPONENT_ROWS) | {"l", "lprime", "divisor"}
_HEADER = re.compile(r"^\[(\w+)((?:\s+\w+=\S+)*)\s*\]$")


def _int(text: str, line: int, source: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise SpecError(f"expected an integer, got {text!r}", line, source) from None


def _ints(text: str, line: int, source: str) -> tuple[int, ...]:
    return tuple(_int(tok, line, source) for tok in text.split())


def _pairs(tokens, allowed, line, source) -> dict:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise SpecError(f"expected key=value, got {tok!r}", line, source)
        key, val = tok.split("=", 1)
        if key not in allowed:
            raise SpecError(f"unknown key {key!r}", line, source)
        if key in out:
            raise SpecError(f"duplicate key {key!r}", line, source)
        out[key] = _int(val, line, source)
    missing = set(allowed) - set(out)
    if missing:
        raise SpecError(f"missing {', '.join(sorted(missing))}", line, source)
    return out


def parse_spec(text: str, source: str = "<spec>") -> AutomorphismSpec:
    curve: dict = {}
    curve_line = None
    points: list[FixedPoint] = []
    points_line = None
    h0 = None
    comp_blocks: list[tuple[int, dict, dict]] = []
    block = None
    seen = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = _HEADER.match(line)
        if head:
            name, args = head.group(1), head.group(2).split()
            if name == "component":
                header = _pairs(args, {"i", "k", "mult"}, lineno, source)
                comp_blocks.append((lineno, header, {}))
            elif name in ("curve", "fixed_points", "h0"):
                if args:
                    raise SpecError(f"[{name}] takes no arguments", lineno, source)
                if name in seen:
                    raise SpecError(f"duplicate [{name}] block", lineno, source)
                if name == "curve":
                    curve_line = lineno
                if name == "fixed_points":
                    points_line = lineno
            else:
                raise SpecError(f"unknown block [{name}]", lineno, source)
            seen.add(name)
            block = name
            continue
        if line.startswith("["):
            raise SpecError(f"malformed block header {line!r}", lineno, source)
        if block is None:
            raise SpecError("content before the first block header", lineno, source)

        if block == "fixed_points":
            toks = line.split()
            if toks[0] == "hyperelliptic":
                g = _pairs(toks[1:], {"genus"}, lineno, source)["genus"]
                points.extend(FixedPoint(1, 0) for _ in range(2 * g + 2))
                curve.setdefault("_hyperelliptic", (g, lineno))
            else:
                kv = _pairs(toks, {"rot", "lam"}, lineno, source)
                points.append(FixedPoint(kv["rot"], kv["lam"]))
            continue

        if "=" not in line:
            raise SpecError(f"expected key = value, got {line!r}", lineno, source)
        key, val = (s.strip() for s in line.split("=", 1))
        if block == "curve":
            if key not in _CURVE_KEYS:
                raise SpecError(f"unknown key {key!r} in [curve]", lineno, source)
            if key in curve:
                raise SpecError(f"duplicate key {key!r}", lineno, source)
            curve[key] = val if key == "lambda" else _int(val, lineno, source)
        elif block == "h0":
            if key != "dims" or h0 is not None:
                raise SpecError(f"unknown or repeated key {key!r} in [h0]", lineno, source)
            h0 = (_ints(val, lineno, source), lineno)
        else:
            body = comp_blocks[-1][2]
            if key not in _COMPONENT_KEYS:
                raise SpecError(f"unknown key {key!r} in [component]", lineno, source)
            if key in body:
                raise SpecError(f"duplicate key {key!r}", lineno, source)
            if key in ("l", "lprime"):
                body[key] = _int(val, lineno, source)
            else:
                body[key] = _ints(val, lineno, source)

    if curve_line is None:
        raise SpecError("missing [curve] block", None, source)
    missing = {"p", "g_X", "g_Y", "d"} - set(curve)
    if missing:
        raise SpecError(f"[curve] is missing {', '.join(sorted(missing))}", curve_line, source)
    if "_hyperelliptic" in curve:
        g, line = curve["_hyperelliptic"]
        if g != curve["g_X"] or curve["p"] != 2 or curve["g_Y"] != 0:
            raise SpecError(
                f"hyperelliptic genus={g} needs p=2, g_Y=0 and g_X={g}", line, source
            )

    p = curve["p"]
    components = []
    for line, header, body in comp_blocks:
        absent = (set(_COMPONENT_ROWS) | {"l", "lprime"}) - set(body)
        if absent:
            raise SpecError(f"component block lacks {', '.join(sorted(absent))}", line, source)
        try:
            table = EigenDegreeTable(
                p=p, k=header["k"], g_Y=curve["g_Y"], **{r: body[r] for r in _COMPONENT_ROWS}
            )
            components.append(
                ComponentDatum(
                    i=header["i"],
                    k=header["k"],
                    multiplicity=header["mult"],
                    table=table,
                    l_exp=body["l"] % p,
                    lprime_exp=body["lprime"] % p,
                    divisor=body.get("divisor"),
                )
            )
        except ValueError as exc:
            raise SpecError(str(exc), line, source) from None

    try:
        spec = AutomorphismSpec(
            p=p,
            g_X=curve["g_X"],
            g_Y=curve["g_Y"],
            d=curve["d"],
            fixed_points=tuple(points),
            h0_eigendims=h0[0] if h0 else None,
            lambda_tag=curve.get("lambda", ""),
            components=tuple(components),
        )
    except ValueError as exc:
        line = h0[1] if h0 and "eigenspace" in str(exc) else (points_line or curve_line)
        raise SpecError(str(exc), line, source) from None
    try:
        dims = spec.h0_dims()
    except ValueError as exc:
        raise SpecError(str(exc), h0[1] if h0 else points_line, source) from None
    return replace(spec, h0_eigendims=dims)


def load_spec(path) -> AutomorphismSpec:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecError(f"cannot read spec file: {exc.strerror}", None, str(path)) from None
    return parse_spec(text, str(path))
