"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from liaison.ring import Ring, monomials_of_degree

SMALL_PRIME = 101


def exponents(nvars, max_exp=4):
    return st.tuples(*[st.integers(0, max_exp)] * nvars)


@st.composite
def homogeneous(draw, ring, degree=None, max_degree=3, max_terms=4):
    """A homogeneous polynomial of ``ring`` (possibly zero)."""
    if degree is None:
        degree = draw(st.integers(0, max_degree))
    monos = monomials_of_degree(ring.nvars, degree)
    picks = draw(st.lists(st.sampled_from(monos), max_size=max_terms, unique=True))
    coeffs = draw(st.lists(st.integers(1, ring.prime - 1), min_size=len(picks), max_size=len(picks)))
    return ring.from_dict(dict(zip(picks, coeffs)))


@st.composite
def nonzero_homogeneous(draw, ring, min_degree=1, max_degree=3, max_terms=4):
    degree = draw(st.integers(min_degree, max_degree))
    monos = monomials_of_degree(ring.nvars, degree)
    picks = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=max_terms, unique=True))
    coeffs = draw(st.lists(st.integers(1, ring.prime - 1), min_size=len(picks), max_size=len(picks)))
    return ring.from_dict(dict(zip(picks, coeffs)))


def small_ring(nvars=3, prime=SMALL_PRIME):
    return Ring(nvars, prime)
