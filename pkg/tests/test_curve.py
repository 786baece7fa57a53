import math
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from oracles import hyperelliptic_table
from verlinde_traces.curve import (
    AutomorphismSpec,
    FixedPoint,
    degree_table,
    eigen_dims,
    eigen_exponents,
    enumerate_components,
    hyperelliptic_spec,
    lefschetz_number_curve,
    table_violations,
    wedge_exponent,
)
from verlinde_traces.exactnum import CycloNum, root_of_unity
from verlinde_traces.specfile import load_spec

SPECS = Path(__file__).resolve().parents[1] / "specs"


@pytest.fixture(scope="module")
def cyclic3():
    return load_spec(SPECS / "cyclic3-g2.spec")


@pytest.fixture(scope="module")
def cyclic5():
    return load_spec(SPECS / "cyclic5-g2.spec")


def test_genus2_examples():
    spec = hyperelliptic_spec(2)
    for deg in range(7):
        assert lefschetz_number_curve(spec, 0, 1, 1, deg) == 3 - deg
    for n in (0, 2, 4):
        assert lefschetz_number_curve(spec, 1, 1, n, 3) == 3
    assert lefschetz_number_curve(spec, 0, 0, 0) == -1


@pytest.mark.parametrize("g", [2, 3, 4])
def test_hyperelliptic_closed_form(g):
    # each fixed point contributes (-1)^(n * [P in D]) / 2
    spec = hyperelliptic_spec(g)
    for s in (-1, 0, 1, 2):
        for n in range(-2, 3):
            for deg in range(2 * g + 3):
                expected = Fraction((-1 if n % 2 else 1) * deg + (2 * g + 2 - deg), 2)
                assert lefschetz_number_curve(spec, 1, s, n, deg) == expected


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_hyperelliptic_canonical_eigendims(g):
    # holomorphic differentials are anti-invariant, H^1(K) is invariant
    assert eigen_dims(hyperelliptic_spec(g), 0, 0, None, canonical=1) == (-1, g)
    # K^3 = pi^*O(3g-3): pullbacks times (dx/y)^3 are odd (3g-2 of them),
    # y times pullbacks are even (2g-3 of them)
    assert hyperelliptic_spec(g).h0_dims() == (2 * g - 3, 3 * g - 2)


def test_cyclic_canonical_eigendims(cyclic3, cyclic5):
    # dx/y and x dx/y carry weights 1 and 2 (in the dual labelling used for p = 5)
    assert eigen_dims(cyclic3, 0, 0, None, canonical=1) == (-1, 1, 1)
    assert eigen_dims(cyclic5, 0, 0, None, canonical=1) == (-1, 0, 0, 1, 1)
    assert cyclic3.h0_dims() == (3, 1, 1)
    assert cyclic5.h0_dims() == (1, 1, 2, 0, 1)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["cyclic3", "cyclic5", "hyper3"]), st.integers(-2, 2), st.integers(-2, 2), st.data())
def test_fourier_round_trip(name, s, n, data):
    spec = {
        "cyclic3": lambda: load_spec(SPECS / "cyclic3-g2.spec"),
        "cyclic5": lambda: load_spec(SPECS / "cyclic5-g2.spec"),
        "hyper3": lambda: hyperelliptic_spec(3),
    }[name]()
    D = tuple(data.draw(st.integers(0, 1)) for _ in spec.fixed_points)
    dims = eigen_dims(spec, s, n, D)
    p = spec.p
    assert sum(dims) == s * spec.d - n * sum(D) - spec.g_X + 1
    for l in range(1, p):
        recon = CycloNum.zero(p)
        for j, v in enumerate(dims):
            recon = recon + root_of_unity(p, j * l) * v
        assert recon == lefschetz_number_curve(spec, l, s, n, D)


def test_spec_validation():
    with pytest.raises(ValueError, match="Riemann-Hurwitz"):
        AutomorphismSpec(2, 2, 0, 4, [FixedPoint(1)] * 5)
    with pytest.raises(ValueError, match="coprime"):
        AutomorphismSpec(3, 2, 0, 4, [FixedPoint(3)] * 4)
    with pytest.raises(ValueError, match="at least 2"):
        AutomorphismSpec(1, 2, 0, 4)
    with pytest.raises(ValueError, match="sum to"):
        AutomorphismSpec(2, 2, 0, 4, [FixedPoint(1)] * 6, h0_eigendims=(1, 3))
    wrong = replace(hyperelliptic_spec(2), h0_eigendims=(2, 3))
    with pytest.raises(ValueError, match="disagree"):
        wrong.h0_dims()


def test_inconsistent_fixed_points_detected():
    # Riemann-Hurwitz holds, but four points of equal rotation give a fractional eigenspace
    spec = AutomorphismSpec(3, 2, 0, 4, [FixedPoint(1)] * 4)
    with pytest.raises(ValueError, match="inconsistent fixed-point data"):
        spec.h0_dims()


def test_divisor_validation(cyclic3):
    spec = hyperelliptic_spec(2)
    with pytest.raises(ValueError, match="supported on fixed points"):
        lefschetz_number_curve(spec, 1, 1, 1, (1, 0))
    with pytest.raises(ValueError, match="does not fit"):
        lefschetz_number_curve(spec, 1, 1, 1, 7)
    with pytest.raises(ValueError, match="per-point"):
        lefschetz_number_curve(cyclic3, 1, 1, 1, 2)
    with pytest.raises(ValueError, match="expected i - p k"):
        degree_table(spec, 3, 1, 2)


def test_composite_order_needs_prime():
    spec = AutomorphismSpec(4, 3, 0, 8, [FixedPoint(1)] * 2)
    assert lefschetz_number_curve(spec, 0, 1, 0) == 6
    with pytest.raises(ValueError, match="prime order"):
        lefschetz_number_curve(spec, 1, 1, 0)


def test_eigen_exponents(cyclic3):
    spec = hyperelliptic_spec(2)
    assert eigen_exponents(spec, 1, 0) == (1, 1)
    assert eigen_exponents(spec, 2, 1) == (0, 1)
    with pytest.raises(ValueError, match="exponents required"):
        eigen_exponents(cyclic3, 1, 0)
    twisted = AutomorphismSpec(2, 2, 0, 4, [FixedPoint(1, 1)] * 6)
    with pytest.raises(ValueError, match="exponents required"):
        enumerate_components(twisted, 1)


@pytest.mark.parametrize("g", [2, 3, 4])
def test_wedge_exponent_matches_involution_rule(g):
    spec = hyperelliptic_spec(g)
    for i in range(1, 2 * g - 2):
        for comp in enumerate_components(spec, i):
            assert wedge_exponent(comp.table) == comp.lprime_exp


def test_wedge_exponent_matches_fixture_data(cyclic3, cyclic5):
    for spec in (cyclic3, cyclic5):
        for comp in spec.components:
            assert wedge_exponent(comp.table) == comp.lprime_exp
            assert table_violations(comp, spec.d, spec.g_X) == []


@pytest.mark.parametrize("g", [2, 3])
def test_component_enumeration(g):
    spec = hyperelliptic_spec(g)
    assert [(c.k, c.multiplicity) for c in enumerate_components(spec, 1)] == [(0, 2 * g + 2)]
    two = enumerate_components(spec, 2)
    assert [(c.k, c.multiplicity) for c in two] == [(0, math.comb(2 * g + 2, 2)), (1, 1)]
    for comp in two:
        assert comp.table.m1 == hyperelliptic_table(g, 2, comp.k)["m1"]


def test_enumeration_requires_components_for_odd_order():
    spec = AutomorphismSpec(3, 2, 0, 4, [FixedPoint(1), FixedPoint(1), FixedPoint(2), FixedPoint(2)])
    with pytest.raises(ValueError, match="supply component blocks"):
        enumerate_components(spec, 1)


@pytest.mark.parametrize("l", [2, 3, 4])
def test_power_relabels_tables(cyclic5, l):
    hl = cyclic5.power(l)
    for D in [(1, 0, 0), (0, 0, 1), (1, 1, 1)]:
        assert degree_table(hl, sum(D), 0, D) == degree_table(cyclic5, sum(D), 0, D).relabel(l)
    assert hl.h0_dims() == tuple(cyclic5.h0_dims()[(j * pow(l, -1, 5)) % 5] for j in range(5))
    with pytest.raises(ValueError):
        cyclic5.power(5)
