"""Curve-level equivariant data for a cyclic automorphism h of order p.

Everything the contribution formula needs is derived here from the fixed
points of h on X: Lefschetz numbers of h^l on Lambda^s(-nD) (Riemann-Roch
for l = 0, Atiyah-Bott otherwise), their discrete Fourier inversion into
eigenspace dimensions, and from those the degrees of the eigenbundles
lambda_{s,j,n} on the quotient curve Y.

Conventions: ``rotation`` r means dh acts on the tangent line at P by nu^r,
so O(-P) restricted to P (the cotangent line) has weight -r; ``lam`` is the
weight of h on the fibre of Lambda at P.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .exactnum import CycloNum, root_of_unity

__all__ = [
    "FixedPoint",
    "AutomorphismSpec",
    "EigenDegreeTable",
    "ComponentDatum",
    "hyperelliptic_spec",
    "lefschetz_number_curve",
    "eigen_dims",
    "degree_table",
    "eigen_exponents",
    "enumerate_components",
    "table_violations",
    "wedge_exponent",
    "is_prime",
]


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class FixedPoint:
    rotation: int
    lam: int = 0


@dataclass(frozen=True)
class EigenDegreeTable:
    """Degrees of the eigenbundles lambda_{s,j,n} on Y, indexed j = 0..p-1.

    ``m1[j], m2[j]`` are deg lambda_{1,j,1}, deg lambda_{1,j,2};
    ``mp2[j]`` is deg lambda_{-1,j,-2}; ``nsmall[j]`` and ``nprime[j]`` are
    deg lambda_{0,j,-1} and deg lambda_{0,j,0}.
    """

    p: int
    k: int
    g_Y: int
    m1: tuple[int, ...]
    m2: tuple[int, ...]
    mp2: tuple[int, ...]
    nsmall: tuple[int, ...]
    nprime: tuple[int, ...]

    def __post_init__(self):
        for name in ("m1", "m2", "mp2", "nsmall", "nprime"):
            vals = tuple(getattr(self, name))
            if len(vals) != self.p:
                raise ValueError(f"table row {name} has {len(vals)} entries, expected p={self.p}")
            object.__setattr__(self, name, vals)

    def rank_wminus(self, j: int) -> int:
        return self.m1[j] - self.m2[j] + self.k

    def rank_wplus(self, j: int) -> int:
        return -(1 + self.mp2[j] + 2 * self.k - self.g_Y)

    def normal_rank(self, j: int) -> int:
        """rank N(nu^j)."""
        return self.nsmall[j] - self.nprime[j] + self.k

    def a(self, j: int) -> int:
        """a_j = rank N(nu^(p-j)), j = 1..p-1."""
        return self.normal_rank((self.p - j) % self.p)

    def relabel(self, l: int) -> EigenDegreeTable:
        """The same bundles seen as eigenbundles of h^l (l coprime to p)."""
        p = self.p

        def move(row):
            out = [0] * p
            for j, v in enumerate(row):
                out[(j * l) % p] = v
            return tuple(out)

        return replace(
            self,
            m1=move(self.m1),
            m2=move(self.m2),
            mp2=move(self.mp2),
            nsmall=move(self.nsmall),
            nprime=move(self.nprime),
        )


@dataclass(frozen=True)
class ComponentDatum:
    """A family of fixed components Z_D = S^k Y inside S^i X sharing one table."""

    i: int
    k: int
    multiplicity: int
    table: EigenDegreeTable
    l_exp: int
    lprime_exp: int
    divisor: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.table.k != self.k:
            raise ValueError("table dimension does not match component dimension")
        if self.i - self.table.p * self.k < 0:
            raise ValueError(f"d_k = i - p k is negative for i={self.i}, k={self.k}")

    @property
    def p(self) -> int:
        return self.table.p

    @property
    def g_Y(self) -> int:
        return self.table.g_Y

    def power(self, l: int) -> ComponentDatum:
        p = self.p
        return replace(
            self,
            table=self.table.relabel(l),
            l_exp=(self.l_exp * l) % p,
            lprime_exp=(self.lprime_exp * l) % p,
        )


@dataclass(frozen=True)
class AutomorphismSpec:
    p: int
    g_X: int
    g_Y: int
    d: int
    fixed_points: tuple[FixedPoint, ...] = ()
    h0_eigendims: tuple[int, ...] | None = None
    lambda_tag: str = ""
    components: tuple[ComponentDatum, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "fixed_points", tuple(self.fixed_points))
        object.__setattr__(self, "components", tuple(self.components))
        if self.h0_eigendims is not None:
            object.__setattr__(self, "h0_eigendims", tuple(self.h0_eigendims))
        if self.p < 2:
            raise ValueError(f"automorphism order must be at least 2, got {self.p}")
        if self.g_X < 2:
            raise ValueError(f"curve genus must be at least 2, got {self.g_X}")
        if self.g_Y < 0:
            raise ValueError("quotient genus must be non-negative")
        for P in self.fixed_points:
            if math.gcd(P.rotation, self.p) != 1:
                raise ValueError(
                    f"rotation exponent {P.rotation} is not coprime to p={self.p}"
                )
        nfix = len(self.fixed_points)
        if self.fixed_points and is_prime(self.p):
            # Riemann-Hurwitz for a prime-order cyclic cover.
            lhs = 2 * self.g_X - 2
            rhs = self.p * (2 * self.g_Y - 2) + (self.p - 1) * nfix
            if lhs != rhs:
                raise ValueError(
                    f"Riemann-Hurwitz fails: 2g_X-2={lhs} but p(2g_Y-2)+(p-1)#fix={rhs}"
                )
        if self.h0_eigendims is not None:
            if len(self.h0_eigendims) != self.p:
                raise ValueError(f"need {self.p} eigenspace dimensions for H^0(K_X Lambda)")
            if any(v < 0 for v in self.h0_eigendims):
                raise ValueError("eigenspace dimensions must be non-negative")
            if self.d > 2 * self.g_X - 2 and sum(self.h0_eigendims) != self.d + self.g_X - 1:
                raise ValueError(
                    f"eigenspace dimensions sum to {sum(self.h0_eigendims)}, "
                    f"expected d + g_X - 1 = {self.d + self.g_X - 1}"
                )

    @property
    def has_fixed_point_data(self) -> bool:
        return bool(self.fixed_points)

    def nu(self, k: int = 1) -> CycloNum:
        return root_of_unity(self.p, k)

    def power(self, l: int) -> AutomorphismSpec:
        """The spec of h^l for l coprime to p."""
        p = self.p
        if math.gcd(l, p) != 1:
            raise ValueError(f"h^{l} is not a generator for p={p}")
        dims = None
        if self.h0_eigendims is not None:
            out = [0] * p
            for j, v in enumerate(self.h0_eigendims):
                out[(j * l) % p] = v
            dims = tuple(out)
        return replace(
            self,
            fixed_points=tuple(
                FixedPoint((P.rotation * l) % p, (P.lam * l) % p) for P in self.fixed_points
            ),
            h0_eigendims=dims,
            components=tuple(c.power(l) for c in self.components),
        )

    def h0_dims(self) -> tuple[int, ...]:
        """Eigenspace dimensions of h on H^0(X, K_X Lambda), cross-validated."""
        computed = None
        if self.has_fixed_point_data and is_prime(self.p):
            computed = eigen_dims(self, 1, 0, None, canonical=1)
        if self.h0_eigendims is None:
            if computed is None:
                raise ValueError("no H^0(K_X Lambda) eigendims and no fixed-point data")
            return computed
        if computed is not None and computed != self.h0_eigendims:
            raise ValueError(
                f"H^0(K_X Lambda) eigendims {self.h0_eigendims} disagree with the "
                f"fixed-point data, which gives {computed}"
            )
        return self.h0_eigendims


def hyperelliptic_spec(g: int, *, with_h0: bool = True) -> AutomorphismSpec:
    """The hyperelliptic involution on a genus-g curve with Lambda = K_X^2."""
    points = tuple(FixedPoint(1, 0) for _ in range(2 * g + 2))
    spec = AutomorphismSpec(
        p=2, g_X=g, g_Y=0, d=4 * g - 4, fixed_points=points, lambda_tag="K^2"
    )
    if with_h0:
        spec = replace(spec, h0_eigendims=spec.h0_dims())
    return spec


def _divisor(spec: AutomorphismSpec, D: Sequence[int] | int | None) -> tuple[int, ...]:
    """Per-point multiplicities.  A bare integer is a reduced divisor of that
    degree, allowed only when every fixed point looks the same."""
    npts = len(spec.fixed_points)
    if D is None:
        return (0,) * npts
    if isinstance(D, int):
        if len(set(spec.fixed_points)) > 1:
            raise ValueError(
                "fixed points differ in rotation or lambda weight; give per-point multiplicities"
            )
        if not 0 <= D <= npts:
            raise ValueError(
                f"a reduced divisor of degree {D} does not fit on {npts} fixed points"
            )
        return (1,) * D + (0,) * (npts - D)
    D = tuple(D)
    if len(D) != len(spec.fixed_points):
        raise ValueError(
            f"divisor lists {len(D)} multiplicities but there are "
            f"{len(spec.fixed_points)} fixed points; D must be supported on fixed points"
        )
    if any(c < 0 for c in D):
        raise ValueError("divisor multiplicities must be non-negative")
    return D


def lefschetz_number_curve(
    spec: AutomorphismSpec,
    power: int,
    s: int,
    n: int,
    D: Sequence[int] | int | None = None,
    canonical: int = 0,
) -> CycloNum:
    """L(h^power, X, K_X^canonical Lambda^s(-nD)).

    ``D`` gives a multiplicity for each fixed point.  For power = 0 this is
    the Euler characteristic; otherwise the Atiyah-Bott sum
    sum_P (fibre weight at P) / (1 - (tangent weight at P)^-1).
    """
    p = spec.p
    D = _divisor(spec, D)
    if power % p == 0:
        deg = s * spec.d + canonical * (2 * spec.g_X - 2) - n * sum(D)
        return CycloNum.rational(p, deg - spec.g_X + 1)
    if not is_prime(p):
        raise ValueError(
            f"Atiyah-Bott sum over fixed points of h needs prime order, got p={p}"
        )
    total = CycloNum.zero(p)
    for P, mult in zip(spec.fixed_points, D):
        weight = s * P.lam - canonical * P.rotation - n * mult * P.rotation
        num = root_of_unity(p, power * weight)
        total = total + num / (1 - root_of_unity(p, -power * P.rotation))
    return total


def eigen_dims(
    spec: AutomorphismSpec,
    s: int,
    n: int,
    D: Sequence[int] | int | None = None,
    canonical: int = 0,
) -> tuple[int, ...]:
    """Virtual dimensions of the nu^j-eigenspaces of H^0 - H^1.

    Discrete Fourier inversion: dim W(nu^j) = (1/p) sum_l nu^(-jl) L(h^l).
    """
    p = spec.p
    L = [lefschetz_number_curve(spec, l, s, n, D, canonical) for l in range(p)]
    dims = []
    for j in range(p):
        acc = CycloNum.zero(p)
        for l in range(p):
            acc = acc + root_of_unity(p, -j * l) * L[l]
        val = acc / p
        if not val.is_rational() or val.to_rational().denominator != 1:
            raise ValueError(
                f"inconsistent fixed-point data: eigenspace nu^{j} of "
                f"K^{canonical} Lambda^{s}(-{n}D) has dimension {val}"
            )
        dims.append(int(val.to_rational()))
    return tuple(dims)


def degree_table(
    spec: AutomorphismSpec, i: int, k: int, D: Sequence[int] | int | None
) -> EigenDegreeTable:
    """Degrees of lambda_{s,j,n} = f_*(Lambda^s(-nD))(nu^j): dim W(nu^j) - 1 + g_Y."""
    D = _divisor(spec, D)
    dk = i - spec.p * k
    if dk < 0:
        raise ValueError(f"no {k}-dimensional components in S^{i}X for p={spec.p}")
    if sum(D) != dk:
        raise ValueError(f"divisor has degree {sum(D)}, expected i - p k = {dk}")

    def degs(s, n):
        return tuple(v - 1 + spec.g_Y for v in eigen_dims(spec, s, n, D))

    return EigenDegreeTable(
        p=spec.p,
        k=k,
        g_Y=spec.g_Y,
        m1=degs(1, 1),
        m2=degs(1, 2),
        mp2=degs(-1, -2),
        nsmall=degs(0, -1),
        nprime=degs(0, 0),
    )


def eigen_exponents(spec: AutomorphismSpec, i: int, k: int) -> tuple[int, int]:
    """(l, l') with h acting by nu^l on L_i and by nu^l' on wedge^i W^-_i.

    Known in closed form only for involutions with Lambda trivial at every
    fixed point: (-1)^i and (-1)^(i+k).
    """
    if spec.p != 2:
        raise ValueError(
            f"exponents required: supply l and l' for p={spec.p} components explicitly"
        )
    if any(P.lam % 2 for P in spec.fixed_points):
        raise ValueError(
            "exponents required: h acts non-trivially on a fibre of Lambda; "
            "supply component blocks"
        )
    return i % 2, (i + k) % 2


def wedge_exponent(table: EigenDegreeTable) -> int:
    """Weight of h on the top exterior power of W^-, read off the eigenranks."""
    return sum(j * table.rank_wminus(j) for j in range(table.p)) % table.p


def _choose_divisors(spec: AutomorphismSpec, deg: int):
    """Reduced divisors of the given degree on the fixed points, grouped by
    point type; yields (multiplicity, representative divisor)."""
    types = Counter(spec.fixed_points)
    kinds = sorted(types, key=lambda P: (P.rotation, P.lam))
    positions = {P: [idx for idx, Q in enumerate(spec.fixed_points) if Q == P] for P in kinds}
    ranges = [range(min(types[P], deg) + 1) for P in kinds]
    for counts in itertools.product(*ranges):
        if sum(counts) != deg:
            continue
        mult = 1
        D = [0] * len(spec.fixed_points)
        for P, c in zip(kinds, counts):
            mult *= math.comb(types[P], c)
            for idx in positions[P][:c]:
                D[idx] = 1
        yield mult, tuple(D)


def enumerate_components(spec: AutomorphismSpec, i: int) -> list[ComponentDatum]:
    """Fixed components of h in S^i X, one datum per (k, divisor type)."""
    if spec.components:
        return [c for c in spec.components if c.i == i]
    if spec.p != 2:
        raise ValueError(
            f"component enumeration is only automatic for involutions; "
            f"supply component blocks for p={spec.p}"
        )
    if not spec.has_fixed_point_data:
        raise ValueError("fixed-point data required to enumerate components")
    out = []
    for k in range(i // 2 + 1):
        for mult, D in _choose_divisors(spec, i - 2 * k):
            l, lp = eigen_exponents(spec, i, k)
            out.append(
                ComponentDatum(
                    i=i,
                    k=k,
                    multiplicity=mult,
                    table=degree_table(spec, i, k, D),
                    l_exp=l,
                    lprime_exp=lp,
                    divisor=D,
                )
            )
    return out


def table_violations(comp: ComponentDatum, d: int, g_X: int) -> list[str]:
    """Rank and codimension identities every consistent table satisfies."""
    t = comp.table
    p, i, k = t.p, comp.i, comp.k
    problems = []
    wminus = sum(t.rank_wminus(j) for j in range(p))
    if wminus != i:
        problems.append(f"sum of W- eigenranks is {wminus}, expected i = {i}")
    wplus = sum(t.rank_wplus(j) for j in range(p))
    if wplus != d + g_X - 1 - 2 * i:
        problems.append(
            f"sum of W+ eigenranks is {wplus}, expected d+g_X-1-2i = {d + g_X - 1 - 2 * i}"
        )
    a = [t.a(j) for j in range(1, p)]
    if any(v < 0 for v in a):
        problems.append(f"negative normal-bundle rank among a_j = {a}")
    if sum(a) != i - k:
        problems.append(f"codimension sum a_j = {sum(a)}, expected i - k = {i - k}")
    return problems
