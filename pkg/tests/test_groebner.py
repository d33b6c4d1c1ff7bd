import pytest
import sympy
from hypothesis import HealthCheck, given, settings, strategies as st

from liaison.groebner import (
    Ideal,
    buchberger,
    codim,
    colon,
    colon_ideal,
    intersect,
    is_regular_sequence,
)
from liaison.ring import MonomialOrder, Ring, normal_form

import oracles
from strategies import nonzero_homogeneous, small_ring


@pytest.fixture
def xyz():
    R = Ring(3, names="xyz")
    return (R,) + tuple(R.gens())


def to_sympy(f, symbols):
    return sum(
        (c * sympy.prod([s**e for s, e in zip(symbols, m)]) for m, c in f.coeffs.items()),
        sympy.Integer(0),
    )


def sympy_gb(polys, p):
    R = polys[0].ring
    syms = sympy.symbols("s0:%d" % R.nvars)
    G = sympy.groebner([to_sympy(f, syms) for f in polys], *syms, modulus=p, order="grevlex")
    out = []
    for g in G.exprs:
        P = sympy.Poly(g, *syms, modulus=p)
        out.append({m: int(c) % p for m, c in P.terms() if int(c) % p})
    return sorted(out, key=lambda f: oracles.grevlex(oracles.lead(f)), reverse=True)


def as_dicts(G):
    """Basis as coefficient dicts, largest leading monomial first."""
    out = [dict(g.coeffs) for g in G]
    return sorted(out, key=lambda f: oracles.grevlex(oracles.lead(f)), reverse=True)


# --- buchberger ------------------------------------------------------------


def test_monomial_ideal_is_its_own_basis(xyz):
    R, x, y, z = xyz
    assert as_dicts(buchberger([x**2, y**2, z**6])) == as_dicts([x**2, y**2, z**6])


def test_linear_forms(xyz):
    R, x, y, z = xyz
    assert as_dicts(buchberger([x - y, x + y])) == as_dicts([x, y])


def test_twisted_cubic_style_example_against_brute_force(xyz):
    R, x, y, z = xyz
    gens = [x**2 - y * z, y**2 - x * z]
    expected = oracles.naive_groebner([f.coeffs for f in gens], R.prime)
    assert as_dicts(buchberger(gens)) == expected
    assert as_dicts(buchberger(gens)) == sympy_gb(gens, R.prime)


def test_empty_and_unit_inputs(xyz):
    R, x, y, z = xyz
    assert buchberger([]) == []
    assert buchberger([R.zero()]) == []
    assert as_dicts(buchberger([x + y, R.one()])) == [{(0, 0, 0): 1}]
    assert Ideal([], R).is_zero() and Ideal([R.one()], R).is_unit()


def test_elimination_order_basis(xyz):
    R, x, y, z = xyz
    order = MonomialOrder(3, block=1)
    G = buchberger([x - y, y - z], order)
    assert G[0].ring.order == order
    assert sorted(g.lm for g in G) == [(0, 1, 0), (1, 0, 0)]


def test_ideal_rejects_inhomogeneous(xyz):
    R, x, y, z = xyz
    with pytest.raises(ValueError):
        Ideal([x + y**2])


# --- colon and intersection ------------------------------------------------


def test_colon_examples(xyz):
    R, x, y, z = xyz
    I = Ideal([x**2, y**2, z**6])
    assert colon(I, x * y) == Ideal([x, y, z**6])
    assert colon(I, R.one()) == I
    assert colon(Ideal([x**2]), x) == Ideal([x])
    with pytest.raises(ValueError):
        colon(I, R.zero())


def test_colon_ideal_examples(xyz):
    R, x, y, z = xyz
    I_X = Ideal([x**2, y**2, z**6])
    I_Z = Ideal([x, y, z**6])
    I_Y = colon_ideal(I_X, I_Z)
    assert I_Y == Ideal([x**2, y**2, z**6, x * y])
    assert colon_ideal(I_X, Ideal([R.one()], R)) == I_X
    assert colon_ideal(I_X, I_Y) == I_Z
    with pytest.raises(ValueError):
        colon_ideal(I_X, Ideal([], R))


def test_intersection_examples(xyz):
    R, x, y, z = xyz
    assert intersect(Ideal([x]), Ideal([y])) == Ideal([x * y])
    I = Ideal([x**2 + y * z, y**3])
    assert intersect(I, I) == I
    assert intersect(Ideal([x, y]), Ideal([x, z])) == Ideal([x, y * z])


def test_intersection_against_linear_algebra(xyz):
    R, x, y, z = xyz
    I = [x**2, y * z]
    J = [x * y, z**2 + x * z]
    K = intersect(Ideal(I), Ideal(J))
    for d in range(1, 6):
        expected = oracles.intersection_dim([f.coeffs for f in I], [f.coeffs for f in J], d, 3, R.prime)
        assert oracles.ideal_dim([g.coeffs for g in K.gens], d, 3, R.prime) == expected


# --- codimension and regular sequences -------------------------------------


def test_codim_examples():
    R4 = Ring(4)
    x0, x1, x2, x3 = R4.gens()
    assert codim(Ideal([x0**2, x1**2, x2**6])) == 3
    assert codim(Ideal([x3, x0 * x1, x0 * x2, x1 * x2])) == 3
    R2 = Ring(2)
    x, y = R2.gens()
    assert codim(Ideal([x**2, x * y])) == 1
    assert codim(Ideal([], R2)) == 0
    assert codim(Ideal([R2.one()], R2)) == 3


def test_regular_sequence_examples():
    R4 = Ring(4)
    x0, x1, x2, x3 = R4.gens()
    assert is_regular_sequence([x0**2, x1**2, x2**6])
    assert not is_regular_sequence([x0, x0 * x1])
    assert not is_regular_sequence([])


# --- properties ------------------------------------------------------------

R3 = small_ring()
gen_lists = st.lists(nonzero_homogeneous(R3, max_degree=2, max_terms=3), min_size=1, max_size=3)


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(gen_lists)
def test_matches_brute_force_closure(gens):
    assert as_dicts(buchberger(gens)) == oracles.naive_groebner([f.coeffs for f in gens], R3.prime)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(gen_lists)
def test_matches_sympy(gens):
    assert as_dicts(buchberger(gens)) == sympy_gb(gens, R3.prime)


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(gen_lists, st.lists(st.integers(0, 100), min_size=3, max_size=3), st.data())
def test_basis_is_reduced_and_sound(gens, coeffs, data):
    G = buchberger(gens)
    leads = [g.lm for g in G]
    for i, g in enumerate(G):
        assert g.lc == 1
        for j, m in enumerate(leads):
            if i != j:
                assert not any(all(a <= b for a, b in zip(m, t)) for t in g.coeffs)
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            assert not oracles.remainder(oracles.spoly(G[i].coeffs, G[j].coeffs, R3.prime),
                                         [g.coeffs for g in G], R3.prime)
    # random combinations of the generators reduce to zero
    d = max(f.degree() for f in gens) + 1
    combo = R3.zero()
    for c, f in zip(coeffs, gens):
        mult = data.draw(nonzero_homogeneous(R3, min_degree=d - f.degree(), max_degree=d - f.degree())) \
            if d > f.degree() else R3.one()
        combo = combo + (mult * f).scale(c)
    assert not normal_form(combo, list(G))


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(gen_lists, nonzero_homogeneous(R3, max_degree=2, max_terms=2))
def test_colon_correctness(gens, f):
    I = Ideal(gens)
    Q = colon(I, f)
    for g in Q.gens:
        assert I.contains(g * f)
    for g in I.gens:
        assert Q.contains(g)
