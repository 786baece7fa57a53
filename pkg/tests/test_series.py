import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from verlinde_traces.exactnum import CycloNum, root_of_unity
from verlinde_traces.series import LaurentSeries, TruncSeries, exp_linear, laurent_div_pow, residue

ORDER = 6
coeff = st.fractions(min_value=-4, max_value=4, max_denominator=5)
series = st.lists(coeff, min_size=ORDER + 1, max_size=ORDER + 1).map(TruncSeries)
nilpotent = st.lists(coeff, min_size=ORDER, max_size=ORDER).map(lambda cs: TruncSeries([0] + cs))
units = series.filter(lambda f: f.coeff(0) != 0)


def test_exp_linear_coefficients():
    e = exp_linear(3, 5)
    assert e.coeffs == tuple(Fraction(3**n, math.factorial(n)) for n in range(6))
    assert TruncSeries([0, 3, 0, 0, 0, 0]).exp() == e


def test_geometric_inverse():
    f = TruncSeries([1, -1, 0, 0, 0])
    assert f.inverse() == TruncSeries([1] * 5)
    assert f**-2 == TruncSeries([n + 1 for n in range(5)])


def test_non_unit_inverse_rejected():
    with pytest.raises(ValueError, match="not a unit"):
        TruncSeries([0, 1, 2]).inverse()


def test_precision_is_enforced():
    f = TruncSeries([1, 2, 3])
    assert f.coeff(-1) == 0
    with pytest.raises(IndexError):
        f.coeff(3)
    with pytest.raises(ValueError, match="order mismatch"):
        f + TruncSeries([1, 2])
    with pytest.raises(ValueError):
        f.truncate(5)
    with pytest.raises(ValueError):
        TruncSeries([0, 1]).derivative().derivative()


def test_nested_series_either_order():
    # an x-series with t-series coefficients, combined with a bare t-series
    one_t = TruncSeries.constant(Fraction(1), 3, "t")
    t = TruncSeries.variable(3, var="t")
    fx = exp_linear(1, 2, one_t)
    for prod in (fx * t, t * fx):
        assert prod.var == "x"
        assert prod.coeff(2) == t * Fraction(1, 2)
    assert (fx / (1 - t)).coeff(0) == TruncSeries([1, 1, 1, 1], "t")
    assert ((1 - t) - fx).coeff(0) == -t
    assert (t + fx) == (fx + t)


def test_cyclotomic_coefficients():
    nu = root_of_unity(3)
    f = 1 - TruncSeries.monomial(1, 5, nu, "t")
    g = f.inverse()
    assert g.coeff(3) == 1
    assert g.coeff(4) == nu


def test_laurent_residue():
    f = TruncSeries([5, 7, 11, 13])
    L = laurent_div_pow(f, 2)
    assert L.valuation == -3
    assert residue(L) == 11
    with pytest.raises(ValueError):
        laurent_div_pow(TruncSeries([1, 2]), 2)
    # a derivative never has a residue
    assert residue(L.derivative()) == 0


def test_laurent_normalizes_valuation():
    L = LaurentSeries(-2, TruncSeries([0, 0, 3, 4]))
    assert L.valuation == 0
    assert L.coeff(-1) == 0 and L.coeff(1) == 4


def test_laurent_product():
    a = laurent_div_pow(TruncSeries([1, 1, 1, 1]), 1)  # x^-2 (1 + x + x^2 + x^3)
    b = LaurentSeries(1, TruncSeries([1, -1, 0, 0]))  # x - x^2
    prod = a * b  # (1 - x^4)/(1 - x) * x^-1 (1 - x) -> x^-1 (1 - x^4)
    assert prod.valuation == -1
    assert [prod.coeff(n) for n in range(-1, 3)] == [1, 0, 0, 0]


@settings(max_examples=80, deadline=None)
@given(series, series, series)
def test_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f


@settings(max_examples=80, deadline=None)
@given(units, series)
def test_division_inverts_multiplication(f, g):
    assert (g / f) * f == g
    assert f * f.inverse() == f.one()


@settings(max_examples=60, deadline=None)
@given(nilpotent, nilpotent)
def test_exp_is_a_homomorphism(f, g):
    assert (f + g).exp() == f.exp() * g.exp()
    # d/dx exp(f) = f' exp(f), compared where both are known
    lhs = f.exp().derivative()
    rhs = f.derivative() * f.exp().truncate(ORDER - 1)
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(units, st.integers(-3, 3), st.integers(-3, 3))
def test_integer_powers(f, a, b):
    assert f**a * f**b == f ** (a + b)


def test_cyclonum_coefficients_under_exp():
    p = 5
    one = CycloNum.one(p)
    nu = root_of_unity(p)
    assert exp_linear(nu, 4, one) * exp_linear(-nu, 4, one) == TruncSeries.constant(one, 4)
