"""Contribution of one fixed component Z_D = S^k Y to a holomorphic Lefschetz number.

Two independent evaluations are provided:

* :func:`contribution_residue` multiplies everything out as a series in
  ``x`` with coefficients that are series in ``t``, with theta already
  eliminated, and reads off a residue and a ``t`` coefficient;
* :func:`contribution_ring` builds each equivariant characteristic class in
  the (theta, x) ring of S^k Y and integrates their product.

Both return an element of Q(nu); they agree on every admissible input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curve import ComponentDatum, EigenDegreeTable
from .exactnum import CycloNum, format_exact, root_of_unity
from .series import TruncSeries, exp_linear, laurent_div_pow, residue
from .symprod import CohClass, RingParams, coh_exp, degree, eval_series_at

__all__ = [
    "ContributionInput",
    "ch_Wplus_eigen",
    "c_Wplus_eigen",
    "ch_Wminus_eigen",
    "c_Wminus_eigen",
    "normal_bundle_classes",
    "chh_L_power",
    "chh_wedge_Wminus",
    "chh_sym_U",
    "todd_class",
    "todd_x_series",
    "bernoulli_tail_series",
    "det_normal_factor",
    "contribution_residue",
    "contribution_ring",
    "ingredient_dump",
]


@dataclass(frozen=True)
class ContributionInput:
    """One component, one line bundle O(m, n), and the ambient (d, g_X).

    ``x_extra`` and ``t_extra`` are guard orders beyond what the residue and
    coefficient extraction read; they never change the result.
    """

    component: ComponentDatum
    m: int
    n: int
    d: int
    g_X: int
    x_extra: int = 3
    t_extra: int = 0
    printed_prefactor: bool = False

    @property
    def i(self) -> int:
        return self.component.i

    @property
    def k(self) -> int:
        return self.component.k

    @property
    def q_i(self) -> int:
        return self.n - (self.i - 1) * self.m

    @property
    def A(self) -> int:
        return self.component.k + 1 - self.component.g_Y

    @property
    def t_target(self) -> int:
        return self.q_i - self.i

    @property
    def x_order(self) -> int:
        return self.k + self.x_extra

    @property
    def t_order(self) -> int:
        return max(self.t_target, 0) + self.t_extra


# ---------------------------------------------------------------- series


def todd_x_series(order: int, one=Fraction(1)) -> TruncSeries:
    """x / (1 - e^-x)."""
    # (1 - e^-x)/x = sum_n (-1)^n x^n / (n+1)!
    den = TruncSeries(
        [one * Fraction((-1) ** n, _fact(n + 1)) for n in range(order + 1)]
    )
    return den.inverse()


def bernoulli_tail_series(order: int, one=Fraction(1)) -> TruncSeries:
    """1/(e^x - 1) - 1/x, as the regular series (x - (e^x - 1)) / (x (e^x - 1))."""
    # Numerator and denominator both have valuation 2; divide each by x^2.
    num = TruncSeries([one * Fraction(-1, _fact(n + 2)) for n in range(order + 1)])
    den = TruncSeries([one * Fraction(1, _fact(n + 1)) for n in range(order + 1)])
    return num / den


def _fact(n: int) -> int:
    out = 1
    for r in range(2, n + 1):
        out *= r
    return out


def det_normal_factor(table: EigenDegreeTable, printed: bool = False) -> CycloNum:
    """det(Id - h | N^dual) = prod_{j=1}^{p-1} (1 - nu^-j)^(rank N(nu^j)).

    ``printed=True`` pairs (1 - nu^-j) with a_j = rank N(nu^(p-j)) instead,
    which is det(Id - h | N).  The two agree for p = 2; for p > 2 only the
    default is compatible with the normalization of U_j.
    """
    p = table.p
    out = CycloNum.one(p)
    for j in range(1, p):
        e = table.a(j) if printed else table.normal_rank(j)
        out = out * (1 - root_of_unity(p, -j)) ** e
    return out


# ---------------------------------------------------------------- ring classes


def _ring(table: EigenDegreeTable, one=Fraction(1)):
    params = RingParams(table.k, table.g_Y)
    return params, CohClass.x(params, one), CohClass.theta(params, one)


def ch_Wplus_eigen(table: EigenDegreeTable, j: int) -> CohClass:
    _, x, th = _ring(table)
    k, g = table.k, table.g_Y
    return -coh_exp(x * 2) * (1 + table.mp2[j] + 2 * k - g - th * 4)


def c_Wplus_eigen(table: EigenDegreeTable, j: int) -> CohClass:
    _, x, th = _ring(table)
    k, g = table.k, table.g_Y
    s = 1 + x * 2
    return coh_exp(th * 4 / s) / s ** (1 + table.mp2[j] + 2 * k - g)


def ch_Wminus_eigen(table: EigenDegreeTable, j: int) -> CohClass:
    _, x, th = _ring(table)
    k, g = table.k, table.g_Y
    return coh_exp(-x) * (1 + table.m1[j] - k - g - th) - coh_exp(x * -2) * (
        1 + table.m2[j] - 2 * k - g - th * 4
    )


def c_Wminus_eigen(table: EigenDegreeTable, j: int) -> CohClass:
    _, x, th = _ring(table)
    k, g = table.k, table.g_Y
    a, b = 1 - x, 1 - x * 2
    return (
        a ** (1 + table.m1[j] - k - g)
        / b ** (1 + table.m2[j] - 2 * k - g)
        * coh_exp(-th / a + th * 4 / b)
    )


def _U(table: EigenDegreeTable, j: int, one: CycloNum) -> CohClass:
    p = table.p
    if j % p == 0:
        raise ValueError("U_j needs nu^j != 1; the invariant part of N is zero")
    _, x, th = _ring(table, one)
    A = table.k + 1 - table.g_Y
    nu, nuinv = root_of_unity(p, j), root_of_unity(p, -j)
    E = coh_exp(-x)
    unit = 1 - nuinv
    return (
        unit**A
        * (1 - E * nuinv) ** (-A)
        * coh_exp(th * E / (nu - E))
        * ((1 - E * nuinv) / unit) ** (-table.nsmall[j])
    )


def normal_bundle_classes(table: EigenDegreeTable, j: int) -> dict:
    """ch and c of N(nu^j), and its stable class U_j."""
    _, x, th = _ring(table)
    k, g = table.k, table.g_Y
    ch = -(1 + table.nprime[j] - g) + coh_exp(x) * (1 + table.nsmall[j] + k - g - th)
    c = (1 + x) ** (1 + table.nsmall[j] + k - g) * coh_exp(-th / (1 + x))
    return {"ch": ch, "c": c, "U": _U(table, j, CycloNum.one(table.p))}


def chh_L_power(component: ComponentDatum, m: int, d: int) -> CohClass:
    """ch_h of the restricted L_i^m."""
    t = component.table
    p, i = t.p, component.i
    _, x, th = _ring(t, CycloNum.one(p))
    return coh_exp(x * (m * (d - 2 * i)) + th * (2 * m * p)) * root_of_unity(
        p, component.l_exp * m
    )


def chh_wedge_Wminus(component: ComponentDatum, d: int, g_X: int) -> CohClass:
    """ch_h of the restricted top exterior power of W^-_i."""
    t = component.table
    p, i = t.p, component.i
    _, x, th = _ring(t, CycloNum.one(p))
    return coh_exp(x * (d - 3 * i + 1 - g_X) + th * (3 * t.p)) * root_of_unity(
        p, component.lprime_exp
    )


def chh_sym_U(inp: ContributionInput) -> CohClass:
    """ch_h of the restricted S^(q_i - i) U_i, from its generating function in t."""
    t_ = inp.component.table
    p, k, g = t_.p, t_.k, t_.g_Y
    params = RingParams(k, g)
    one = CycloNum.one(p)
    if inp.t_target < 0:
        return CohClass.scalar(params, one * 0)
    one_t = TruncSeries.constant(one, inp.t_order, "t")
    tv = TruncSeries.monomial(1, inp.t_order, one, "t")
    tp = tv**p
    x = CohClass.x(params, one_t)
    th = CohClass.theta(params, one_t)
    E1, E2 = coh_exp(-x), coh_exp(x * -2)
    Ep, E2p, Epos = coh_exp(x * -p), coh_exp(x * (-2 * p)), coh_exp(x * p)
    gen = (1 - Ep * tp) ** (k + g - 1) / (1 - E2p * tp) ** (2 * g - 2)
    for j in range(p):
        nt = tv * root_of_unity(p, j)
        e2 = t_.m2[j] + t_.mp2[(p - j) % p]
        gen = gen * (1 - E2 * nt) ** e2 / (1 - E1 * nt) ** t_.m1[j]
    gen = gen * coh_exp(th * tp * (-p) / (Epos - tp))
    target = inp.t_target
    return gen.map(lambda s: s.coeff(target))


def todd_class(params: RingParams, one=Fraction(1)) -> CohClass:
    """Todd class of S^k Y restricted to the (theta, x) ring."""
    k, g = params.k, params.g_Y
    x = CohClass.x(params, one)
    th = CohClass.theta(params, one)
    return eval_series_at(todd_x_series(k, one), x) ** (k - g + 1) * coh_exp(
        th * eval_series_at(bernoulli_tail_series(k, one), x)
    )


def _ring_factors(inp: ContributionInput) -> dict:
    c = inp.component
    t = c.table
    p = t.p
    one = CycloNum.one(p)
    params = RingParams(t.k, t.g_Y)
    U = CohClass.scalar(params, one)
    for j in range(1, p):
        U = U * _U(t, j, one)
    return {
        "chh_L": chh_L_power(c, inp.m, inp.d),
        "chh_wedge": chh_wedge_Wminus(c, inp.d, inp.g_X),
        "chh_sym_U": chh_sym_U(inp),
        "U_product": U,
        "todd": todd_class(params, one),
        "det": det_normal_factor(t, inp.printed_prefactor),
    }


def contribution_ring(inp: ContributionInput) -> CycloNum:
    """Integral over S^k Y of the equivariant integrand, divided by det(Id - h|N^dual)."""
    f = _ring_factors(inp)
    total = f["chh_L"] * f["chh_wedge"] * f["chh_sym_U"] * f["U_product"] * f["todd"]
    return degree(total) / f["det"]


# ---------------------------------------------------------------- residue path


def _m_poly(E: TruncSeries, p: int):
    """m(E) = sum_{j<p} E^j and z m'(z) at E."""
    one = E.one()
    m, zdm, power = one * 0, one * 0, one
    for j in range(p):
        m = m + power
        zdm = zdm + power * j
        power = power * E
    return m, zdm


def contribution_residue(inp: ContributionInput) -> CycloNum:
    """Coefficient of t^(q_i - i) of the residue at x = 0 of the theta-free integrand."""
    c = inp.component
    t_ = c.table
    p, k, g = t_.p, t_.k, t_.g_Y
    one = CycloNum.one(p)
    if inp.t_target < 0:
        return one * 0
    X, T = inp.x_order, inp.t_order
    m, d, i = inp.m, inp.d, inp.i
    A = inp.A

    # Factors free of t, over Q(nu).
    E = exp_linear(-1, X, one)
    mE, zdm = _m_poly(E, p)
    pure = mE ** (-A)
    for j in range(1, p):
        nuinv = root_of_unity(p, -j)
        pure = pure * ((1 - E * nuinv) / (1 - nuinv)) ** (-t_.nsmall[j])
    pure = pure * exp_linear(d * (1 + m) - i * (3 + 2 * m) + 1 - inp.g_X, X, one)
    pure = pure * todd_x_series(X, one) ** (k - g + 1)
    bracket_pure = -zdm / mE + p * (3 + 2 * m) + bernoulli_tail_series(X, one)

    # Factors carrying t: x-series whose coefficients are t-series.
    one_t = TruncSeries.constant(one, T, "t")
    tv = TruncSeries.monomial(1, T, one, "t")
    tp = tv**p
    lift = lambda f: f.map(lambda a: one_t * a)
    gen = (1 - exp_linear(-p, X, tp)) ** (k + g - 1) / (
        1 - exp_linear(-2 * p, X, tp)
    ) ** (2 * g - 2)
    for j in range(p):
        nt = tv * root_of_unity(p, j)
        e2 = t_.m2[j] + t_.mp2[(p - j) % p]
        gen = gen * (1 - exp_linear(-2, X, nt)) ** e2 / (1 - exp_linear(-1, X, nt)) ** t_.m1[j]
    theta_term = tp * (-p) / (exp_linear(p, X, one_t) - tp)
    xs = TruncSeries.variable(X, one_t)
    bracket = 1 + xs * (lift(bracket_pure) + theta_term)
    integrand = lift(pure) * gen * bracket**g

    coeff = residue(laurent_div_pow(integrand, k)).coeff(inp.t_target)
    prefactor = (
        root_of_unity(p, c.lprime_exp + c.l_exp * m) * Fraction(p) ** A
        / det_normal_factor(t_, inp.printed_prefactor)
    )
    return prefactor * coeff


def ingredient_dump(inp: ContributionInput) -> str:
    """Every factor of both evaluations, one per line, for diagnosing a mismatch."""
    c = inp.component
    t = c.table
    lines = [
        f"component i={c.i} k={c.k} mult={c.multiplicity} l={c.l_exp} l'={c.lprime_exp}",
        f"  m={inp.m} n={inp.n} d={inp.d} g_X={inp.g_X} q_i={inp.q_i} A={inp.A} t_target={inp.t_target}",
        f"  table m1={list(t.m1)} m2={list(t.m2)} mp2={list(t.mp2)} "
        f"nsmall={list(t.nsmall)} nprime={list(t.nprime)}",
        f"  a_j={[t.a(j) for j in range(1, t.p)]}",
    ]
    for name, val in _ring_factors(inp).items():
        lines.append(f"  {name}: {val if not isinstance(val, CycloNum) else format_exact(val)}")
    lines.append(f"  path A (residue): {format_exact(contribution_residue(inp))}")
    lines.append(f"  path B (ring):    {format_exact(contribution_ring(inp))}")
    return "\n".join(lines)
