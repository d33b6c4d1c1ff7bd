import pytest
from hypothesis import given, settings, strategies as st

from liaison.groebner import Ideal
from liaison.ring import (
    EQ,
    GT,
    LT,
    MonomialOrder,
    Ring,
    is_prime,
    monomial_cmp,
    monomials_of_degree,
    normal_form,
    packer,
    poly_mul,
)

from strategies import exponents, homogeneous, nonzero_homogeneous, small_ring


@pytest.fixture
def xyz():
    R = Ring(3, names="xyz")
    return (R,) + tuple(R.gens())


GREVLEX = MonomialOrder(3)


def test_grevlex_examples():
    assert monomial_cmp((2, 0, 0), (1, 1, 0), GREVLEX) == GT
    assert monomial_cmp((0, 2, 0), (1, 0, 1), GREVLEX) == GT
    assert monomial_cmp((1, 2, 3), (1, 2, 3), GREVLEX) == EQ
    assert monomial_cmp((1, 1, 0), (2, 0, 0), GREVLEX) == LT


def test_grevlex_degree_two_chain():
    chain = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
    assert sorted(chain, key=GREVLEX.key, reverse=True) == chain


def test_elimination_order_puts_first_block_on_top():
    order = MonomialOrder(3, block=1)
    assert monomial_cmp((1, 0, 0), (0, 5, 0), order) == GT
    assert monomial_cmp((1, 1, 0), (1, 0, 1), order) == GT


def test_order_rejects_wrong_length_and_bad_block():
    with pytest.raises(ValueError):
        monomial_cmp((1, 0), (1, 0, 0), GREVLEX)
    with pytest.raises(ValueError):
        MonomialOrder(3, block=3)


def test_ring_rejects_composite_prime():
    assert is_prime(32003) and not is_prime(4) and not is_prime(1)
    with pytest.raises(ValueError):
        Ring(2, 4)


def test_poly_mul_examples(xyz):
    R, x, y, z = xyz
    assert poly_mul(x + y, x - y) == x**2 - y**2
    assert poly_mul(x + y, R.zero()) == R.zero()
    R2 = Ring(2, 2)
    a, b = R2.gens()
    assert poly_mul(a + b, a + b) == a**2 + b**2


def test_poly_mul_rejects_ring_mismatch(xyz):
    R, x, y, z = xyz
    other = Ring(3, 101).var(0)
    with pytest.raises(ValueError):
        poly_mul(x, other)


def test_normal_form_examples(xyz):
    R, x, y, z = xyz
    assert normal_form(x**2 * y, [x**2]) == R.zero()
    assert normal_form(x**2, [y]) == x**2
    assert normal_form(x * y + y**2, [x + y]) == R.zero()


def test_normal_form_rejects_zero_divisor(xyz):
    R, x, y, z = xyz
    with pytest.raises(ValueError):
        normal_form(x, [R.zero()])


def test_leading_term_and_format(xyz):
    R, x, y, z = xyz
    f = 3 * y * z - x**2 + z**2
    assert f.lm == (2, 0, 0)
    assert f.lc == R.prime - 1
    assert str(f) == "-x^2 + 3*y*z + z^2"
    assert (x * y).is_homogeneous() and not (x + y**2).is_homogeneous()


def test_monomials_of_degree_count():
    assert len(monomials_of_degree(4, 3)) == 20
    assert monomials_of_degree(2, -1) == ()


# --- packed monomials ------------------------------------------------------


@given(exponents(4, 200), exponents(4, 200))
def test_packing_is_additive_and_invertible(a, b):
    P = packer(4)
    assert P.unpack(P.pack(a)) == a
    assert P.unpack(P.pack(a) + P.pack(b)) == tuple(x + y for x, y in zip(a, b))


@given(exponents(4, 30), exponents(4, 30))
def test_packed_divisibility_matches_tuples(a, b):
    P = packer(4)
    assert P.divides(P.pack(a), P.pack(b)) == all(x <= y for x, y in zip(a, b))


def test_packing_overflow():
    with pytest.raises(OverflowError):
        packer(2).pack((5000, 0))


# --- properties ------------------------------------------------------------

R3 = small_ring()


@settings(max_examples=200, deadline=None)
@given(homogeneous(R3), homogeneous(R3))
def test_product_degree(f, g):
    h = poly_mul(f, g)
    if f and g:
        assert h.is_homogeneous() and h.degree() == f.degree() + g.degree()
    else:
        assert not h


@settings(max_examples=200, deadline=None)
@given(homogeneous(R3, max_degree=4), st.lists(nonzero_homogeneous(R3), min_size=1, max_size=3))
def test_normal_form_idempotent_and_sound(f, G):
    r = normal_form(f, G)
    assert normal_form(r, G) == r
    assert Ideal(G).contains(f - r)
    leads = [g.lm for g in G]
    for m in r.coeffs:
        assert not any(all(a <= b for a, b in zip(l, m)) for l in leads)


@settings(max_examples=200)
@given(exponents(3), exponents(3), exponents(3))
def test_grevlex_is_a_monomial_order(a, b, c):
    ab, bc, ac = (monomial_cmp(a, b, GREVLEX), monomial_cmp(b, c, GREVLEX), monomial_cmp(a, c, GREVLEX))
    assert monomial_cmp(b, a, GREVLEX) == -ab
    if ab >= 0 and bc >= 0:
        assert ac >= 0
    ca = tuple(x + y for x, y in zip(a, c))
    cb = tuple(x + y for x, y in zip(b, c))
    assert monomial_cmp(ca, cb, GREVLEX) == ab
    assert monomial_cmp(ca, a, GREVLEX) in (GT, EQ)


@settings(max_examples=100)
@given(exponents(4), exponents(4), st.integers(1, 3))
def test_block_order_is_a_monomial_order(a, b, block):
    order = MonomialOrder(4, block=block)
    c = (1, 0, 2, 1)
    assert monomial_cmp(a, b, order) == monomial_cmp(
        tuple(x + y for x, y in zip(a, c)), tuple(x + y for x, y in zip(b, c)), order
    )
