import warnings

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from liaison.groebner import Ideal
from liaison.linkage import LinkInstance, koszul_diagram
from liaison.resolution import (
    BettiDiagram,
    GradedMap,
    Resolution,
    betti,
    cancel_pair,
    free_resolution,
    hilbert_degree,
    minimalize,
    resolution_numerator,
)
from liaison.ring import Ring

import oracles
from strategies import nonzero_homogeneous, small_ring


@pytest.fixture
def R4():
    return Ring(4)


def example_22(R):
    x, y, z, w = R.gens()
    return Ideal([x**2, y**2, z**6, x * y])


def test_resolution_of_two_linear_forms():
    R = Ring(3)
    x, y, z = R.gens()
    res = free_resolution(Ideal([x, y]))
    assert betti(res) == BettiDiagram({(0, 0): 1, (1, 1): 2, (2, 2): 1})
    assert res.is_complex()


def test_koszul_complex_of_monomial_ci(R4):
    x, y, z, w = R4.gens()
    res = minimalize(free_resolution(Ideal([x**2, y**2, z**6])))
    assert betti(res).columns() == [[0], [2, 2, 6], [4, 8, 8], [10]]
    assert betti(res) == koszul_diagram((2, 2, 6))
    assert betti(res).table == {(0, 0): 1, (1, 2): 2, (1, 6): 1, (2, 4): 1, (2, 8): 2, (3, 10): 1}


def test_example_22_minimal_resolution(R4):
    res = minimalize(free_resolution(example_22(R4)))
    D = betti(res)
    assert D.totals() == [1, 4, 5, 2]
    assert D.table == {(0, 0): 1, (1, 2): 3, (1, 6): 1, (2, 3): 2, (2, 8): 3, (3, 9): 2}
    assert not res.has_unit_entries() and res.is_complex()


def test_zero_ideal_diagram():
    R = Ring(2)
    assert betti(free_resolution(Ideal([], R))) == BettiDiagram({(0, 0): 1})


def test_minimalize_fixpoint(R4):
    x, y, z, w = R4.gens()
    res = minimalize(free_resolution(Ideal([x**2, y**2, z**6])))
    again = minimalize(res)
    assert betti(again) == betti(res)
    assert [d.cols for d in again.maps] == [d.cols for d in res.maps]


def test_appended_identity_pair_cancels():
    R = Ring(3)
    x, y, z = R.gens()
    base = free_resolution(Ideal([x, y]))
    d1, d2 = base.maps
    d2_ext = GradedMap(R, list(d2.source) + [3], d2.target, list(d2.cols) + [{}])
    d3 = GradedMap(R, [3], d2_ext.source, [{1: R.one()}])
    padded = Resolution(R, [d1, d2_ext, d3])
    assert padded.is_complex() and padded.ranks() == [1, 2, 2, 1]
    trimmed = minimalize(padded)
    assert betti(trimmed) == betti(base)


def test_betti_independent_of_pivot_choice(R4):
    x, y, z, w = R4.gens()
    cone = LinkInstance.from_ideals(Ideal([x**2, y**2, z**6]), Ideal([x, y, z**6])).cone_resolution()
    expected = betti(minimalize(cone))
    tried = 0
    for k, d in enumerate(cone.maps):
        for r, c in d.unit_entries():
            assert betti(minimalize(cancel_pair(cone, k, r, c))) == expected
            tried += 1
    assert tried >= 1


def test_hilbert_degree_examples(R4):
    x, y, z, w = R4.gens()
    assert hilbert_degree(Ideal([x**2, y**2, z**6])).degree == 24
    assert hilbert_degree(example_22(R4)).degree == 18
    R2 = Ring(2)
    a, b = R2.gens()
    data = hilbert_degree(Ideal([a**2, a * b]))
    assert (data.degree, data.codim) == (1, 1)


def test_unit_ideal_degree_is_flagged(R4):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        data = hilbert_degree(Ideal([R4.one()], R4))
    assert data.degree == 0 and data.unit
    assert any("unit ideal" in str(w.message) for w in caught)


def test_degree_matches_stable_hilbert_function(R4):
    # for points in P^3 the Hilbert function settles at the degree
    I = example_22(R4)
    gens = [g.coeffs for g in I.gens]
    assert oracles.hilbert_function(gens, 12, 4, R4.prime) == 18


def test_diagram_json_round_trip(R4):
    D = betti(free_resolution(example_22(R4)))
    assert BettiDiagram.from_json(D.to_json()) == D


# --- properties ------------------------------------------------------------

R3 = small_ring()
ideals = st.lists(nonzero_homogeneous(R3, max_degree=2, max_terms=3), min_size=1, max_size=3)


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(ideals)
def test_resolution_invariants(gens):
    I = Ideal(gens)
    res = free_resolution(I)
    assert res.is_complex()
    assert all(d.check_degrees() for d in res.maps)
    assert res.length <= R3.nvars
    if not I.is_unit():
        assert resolution_numerator(res) == hilbert_degree(I).numerator
        if I.codim() >= 1:
            assert sum((-1) ** i * r for i, r in enumerate(res.ranks())) == 0
    small = minimalize(res)
    assert small.is_complex() and not small.has_unit_entries()
    assert betti(small) <= betti(res)
    assert resolution_numerator(small) == resolution_numerator(res)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=5))
def test_koszul_gorenstein_symmetry(degrees):
    D = koszul_diagram(degrees)
    n, alpha = len(degrees), sum(degrees)
    for (i, j), v in D.table.items():
        assert D.table.get((n - i, alpha - j)) == v


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 3))
def test_equal_degree_ci_is_pure(delta, n):
    R = Ring(n + 1)
    res = minimalize(free_resolution(Ideal([R.var(i) ** delta for i in range(n)])))
    D = betti(res)
    assert all(len(set(D.column(i))) == 1 for i in range(n + 1))
    assert hilbert_degree(Ideal([R.var(i) ** delta for i in range(n)])).degree == delta**n
