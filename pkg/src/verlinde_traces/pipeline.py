"""Traces of h on V_{m,n} and on Verlinde spaces, and dimensions.

The trace is the alternating sum N_0 - N_1 + N_2 - ... over i <= w = (d-1)//2,
where N_0 comes from the symmetric algebra of H^0(X, K_X Lambda) and each
N_i (i >= 1) is a sum of fixed-component contributions on S^i X.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .curve import AutomorphismSpec, ComponentDatum, EigenDegreeTable, enumerate_components
from .exactnum import CycloNum, root_of_unity
from .lefschetz import ContributionInput, contribution_residue, contribution_ring
from .series import TruncSeries

__all__ = [
    "MathematicalInconsistency",
    "HypothesisWarning",
    "TraceRequest",
    "TraceReport",
    "CrosscheckRecord",
    "hypothesis_holds",
    "verlinde_mn",
    "compute_N0",
    "compute_Ni",
    "compute_trace",
    "compute_dimension",
    "dimension_components",
    "eigenspace_dims",
]


class MathematicalInconsistency(ArithmeticError):
    """A computed quantity violates an identity it must satisfy."""


class HypothesisWarning(UserWarning):
    pass


def hypothesis_holds(m: int, n: int, d: int, g_X: int) -> bool:
    """The range m(d-2) - 2n > -d + 2g_X - 2 where the alternating sum is proven."""
    return m * (d - 2) - 2 * n > -d + 2 * g_X - 2


def verlinde_mn(level: int, d: int, g_X: int) -> tuple[int, int]:
    """(m, n) with V_{m,n} isomorphic to the level-k Verlinde space."""
    if d % 2:
        raise ValueError(f"Verlinde mode needs even d, got d={d}")
    if d <= 2 * g_X - 2:
        raise ValueError(f"Verlinde mode needs d > 2g_X - 2 = {2 * g_X - 2}, got d={d}")
    if level < 0:
        raise ValueError("level must be non-negative")
    return level, level * (d // 2 - 1)


@dataclass(frozen=True)
class TraceRequest:
    spec: AutomorphismSpec
    mode: str = "verlinde"
    level: int | None = None
    m: int | None = None
    n: int | None = None
    power: int = 1

    def __post_init__(self):
        if self.mode == "verlinde":
            if self.level is None:
                raise ValueError("verlinde mode needs a level")
            m, n = verlinde_mn(self.level, self.spec.d, self.spec.g_X)
            object.__setattr__(self, "m", m)
            object.__setattr__(self, "n", n)
        elif self.mode == "thaddeus":
            if self.m is None or self.n is None:
                raise ValueError("thaddeus mode needs m and n")
        else:
            raise ValueError(f"unknown mode {self.mode!r}; expected verlinde or thaddeus")

    @property
    def hypothesis_ok(self) -> bool:
        return hypothesis_holds(self.m, self.n, self.spec.d, self.spec.g_X)


@dataclass(frozen=True)
class CrosscheckRecord:
    i: int
    k: int
    multiplicity: int
    divisor: tuple[int, ...] | None
    path_a: CycloNum
    path_b: CycloNum
    contribution: ContributionInput

    @property
    def ok(self) -> bool:
        return self.path_a == self.path_b


@dataclass(frozen=True)
class TraceReport:
    m: int
    n: int
    N0: CycloNum
    Ni: tuple[CycloNum, ...]
    trace: CycloNum
    w: int
    hypothesis_ok: bool
    level: int | None = None
    crosscheck: tuple[CrosscheckRecord, ...] = field(default=())

    @property
    def crosscheck_ok(self) -> bool:
        return all(r.ok for r in self.crosscheck)


def compute_N0(spec: AutomorphismSpec, m: int, n: int, power: int = 1) -> CycloNum:
    """Trace of h^power on S^(m+n) H^0(X, K_X Lambda)."""
    p = spec.p
    dims = spec.h0_dims()
    M = m + n
    if M < 0:
        return CycloNum.zero(p)
    one = CycloNum.one(p)
    gen = TruncSeries.constant(one, M, "t")
    for j, mult in enumerate(dims):
        if mult:
            factor = 1 - TruncSeries.monomial(1, M, root_of_unity(p, j * power), "t")
            gen = gen * factor ** (-mult)
    return gen.coeff(M)


def _weight(i: int) -> int:
    return -1 if i % 2 else 1


def compute_Ni(
    spec: AutomorphismSpec,
    i: int,
    m: int,
    n: int,
    *,
    crosscheck: bool = False,
    x_extra: int = 3,
    t_extra: int = 0,
):
    """Lefschetz number of h on B_{i,m,n}; returns (value, crosscheck records)."""
    total = CycloNum.zero(spec.p)
    records = []
    for comp in enumerate_components(spec, i):
        inp = ContributionInput(comp, m, n, spec.d, spec.g_X, x_extra, t_extra)
        try:
            a = contribution_residue(inp)
            b = contribution_ring(inp) if crosscheck else None
        except (ValueError, ArithmeticError) as exc:
            raise type(exc)(
                f"component i={i} k={comp.k} divisor={comp.divisor}: {exc}"
            ) from exc
        total = total + a * comp.multiplicity
        if crosscheck:
            records.append(CrosscheckRecord(i, comp.k, comp.multiplicity, comp.divisor, a, b, inp))
    return total, records


def compute_trace(
    request: TraceRequest,
    *,
    crosscheck: bool = False,
    x_extra: int = 3,
    t_extra: int = 0,
) -> TraceReport:
    """Trace of h^power on V_{m,n} as N_0 - N_1 + N_2 - ..."""
    spec = request.spec
    if request.power % spec.p == 0:
        raise ValueError("use compute_dimension for the identity element")
    m, n = request.m, request.n
    ok = request.hypothesis_ok
    if not ok:
        warnings.warn(
            f"(m, n) = ({m}, {n}) lies outside m(d-2) - 2n > -d + 2g_X - 2; "
            "the alternating sum is evaluated anyway",
            HypothesisWarning,
            stacklevel=2,
        )
    spec_l = spec.power(request.power) if request.power != 1 else spec
    w = (spec.d - 1) // 2
    N0 = compute_N0(spec_l, m, n)
    Ni, records = [], []
    for i in range(1, w + 1):
        val, recs = compute_Ni(
            spec_l, i, m, n, crosscheck=crosscheck, x_extra=x_extra, t_extra=t_extra
        )
        Ni.append(val)
        records.extend(recs)
    trace = N0
    for i, val in enumerate(Ni, start=1):
        trace = trace + val * _weight(i)
    if spec.p == 2 and not (trace.is_rational() and trace.to_rational().denominator == 1):
        raise MathematicalInconsistency(
            f"trace of an involution must be an integer, got {trace} at (m, n) = ({m}, {n})"
        )
    return TraceReport(m, n, N0, tuple(Ni), trace, w, ok, request.level, tuple(records))


def dimension_components(g_X: int, d: int, i: int) -> list[ComponentDatum]:
    """The identity element fixes all of S^i X: one component with Y = X, k = i."""
    table = EigenDegreeTable(
        p=1, k=i, g_Y=g_X, m1=(d,), m2=(d,), mp2=(-d,), nsmall=(0,), nprime=(0,)
    )
    return [ComponentDatum(i=i, k=i, multiplicity=1, table=table, l_exp=0, lprime_exp=0)]


def compute_dimension(
    spec: AutomorphismSpec, m: int, n: int, *, x_extra: int = 3, t_extra: int = 0
) -> int:
    """dim V_{m,n}, from the contribution machinery at the identity."""
    d, g = spec.d, spec.g_X
    w = (d - 1) // 2
    M = m + n
    total = Fraction(math.comb(M + d + g - 2, M)) if M >= 0 else Fraction(0)
    for i in range(1, w + 1):
        for comp in dimension_components(g, d, i):
            inp = ContributionInput(comp, m, n, d, g, x_extra, t_extra)
            total += _weight(i) * comp.multiplicity * contribution_residue(inp).to_rational()
    if total.denominator != 1 or total < 0:
        raise MathematicalInconsistency(
            f"machinery inconsistency: dim V_{{{m},{n}}} evaluated to {total}"
        )
    return int(total)


def eigenspace_dims(spec: AutomorphismSpec, request: TraceRequest) -> tuple[int, ...]:
    """Multiplicities of nu^j as eigenvalues of h on V_{m,n}, from traces of h^l."""
    p = spec.p
    m, n = request.m, request.n
    traces = [CycloNum.rational(p, compute_dimension(spec, m, n))]
    for l in range(1, p):
        req = TraceRequest(spec, "thaddeus", m=m, n=n, power=l)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", HypothesisWarning)
            traces.append(compute_trace(req).trace)
    dims = []
    for j in range(p):
        acc = CycloNum.zero(p)
        for l, tr in enumerate(traces):
            acc = acc + root_of_unity(p, -j * l) * tr
        val = acc / p
        if not val.is_rational() or val.to_rational().denominator != 1 or val.to_rational() < 0:
            raise MathematicalInconsistency(
                f"trace computation inconsistent: eigenvalue nu^{j} has multiplicity {val}"
            )
        dims.append(int(val.to_rational()))
    return tuple(dims)
