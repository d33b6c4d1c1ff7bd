from fractions import Fraction
from math import factorial, prod

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from liaison.bounds import (
    SweepReport,
    Verdict,
    branch_checks,
    check_tuple,
    conjecture_verdict,
    degree_tuples,
    lemma_checks,
    lemma_reports,
    one_point_checks,
    sweep,
)
from liaison.groebner import Ideal
from liaison.linkage import CIType, LinkSpec, ShiftProfile, collinear_profile, koszul_diagram, threepoints_profile
from liaison.resolution import BettiDiagram, betti, free_resolution, minimalize
from liaison.ring import Ring

EXAMPLE_MINIMAL = BettiDiagram({(0, 0): 1, (1, 2): 3, (1, 6): 1, (2, 3): 2, (2, 8): 3, (3, 9): 2})


def report(reports, label):
    (r,) = [r for r in reports if r.label == label]
    return r


# --- verdicts --------------------------------------------------------------


def test_example_verdict():
    v = conjecture_verdict(EXAMPLE_MINIMAL, 18, p=3)
    assert (v.lower_value, v.upper_value) == (9, 72)
    assert v.lower_holds and v.upper_holds and v.holds


def test_non_cohen_macaulay_example():
    R = Ring(2)
    x, y = R.gens()
    D = betti(minimalize(free_resolution(Ideal([x**2, x * y]))))
    upper = conjecture_verdict(D, 1, p=1, cohen_macaulay=False)
    assert upper.upper_holds and upper.holds
    lower = conjecture_verdict(D, 1, p=2, cohen_macaulay=False)
    assert not lower.lower_holds and lower.known_failure
    assert lower.holds == lower.upper_holds


def test_two_generator_ci_verdict():
    v = conjecture_verdict(koszul_diagram((2, 3)), 6)
    assert (v.lower_value, v.upper_value) == (5, Fraction(15, 2))
    assert v.slack == (1, Fraction(3, 2))


def test_verdict_from_profile_and_errors():
    pr = ShiftProfile(3, [2, 4, 5], [3, 4, 5], 7, "x")
    v = conjecture_verdict(pr, 7)
    assert (v.min_product, v.max_product) == (40, 60)
    with pytest.raises(ValueError):
        conjecture_verdict(BettiDiagram({(0, 0): 1, (2, 3): 1}), 1, p=2)
    with pytest.raises(TypeError):
        conjecture_verdict([2, 3], 1)


def test_verdict_serializes_exactly():
    d = Verdict(3, 18, 54, 432).to_dict()
    assert d["lower_value"] == "9" and d["upper_value"] == "72"


# --- lemma checks ----------------------------------------------------------


def test_lemma_examples():
    assert lemma_checks((2, 2, 2)) == (True, True)
    reps = lemma_reports(CIType((2, 2, 2)))
    assert (report(reps, "ci-degree/binomial").lhs, report(reps, "ci-degree/binomial").rhs) == (48, 60)
    assert (report(reps, "ci-degree/even-steps").lhs, report(reps, "ci-degree/even-steps").rhs) == (48, 48)
    reps = lemma_reports(CIType((3, 3, 3)))
    assert (report(reps, "ci-degree/binomial").lhs, report(reps, "ci-degree/binomial").rhs) == (162, 336)
    assert (report(reps, "ci-degree/even-steps").lhs, report(reps, "ci-degree/even-steps").rhs) == (162, 315)
    with pytest.raises(ValueError):
        lemma_checks((2, 2))


@settings(max_examples=200)
@given(st.lists(st.integers(2, 12), min_size=3, max_size=8))
def test_lemmas_hold_by_direct_evaluation(d):
    n, a, deg = len(d), sum(d), prod(d)
    binomial = deg * factorial(n) <= prod(a - j for j in range(1, n + 1))
    even = deg * factorial(n) <= prod(a - 2 * j for j in range(n))
    assert lemma_checks(d) == (binomial, even) == (True, True)


# --- branch reports --------------------------------------------------------


def test_collinear_all_two_branch():
    reps = branch_checks(LinkSpec(CIType((2, 2, 2)), "collinear", t=2))
    r = report(reps, "collinear/upper/n=3/all-2")
    assert (r.applicable, r.lhs, r.rhs, r.holds) == (True, 36, 40, True)


def test_three_points_boundary_branches():
    reps = branch_checks(LinkSpec(CIType((2, 2, 2)), "three-points"))
    r = report(reps, "three-points/upper/n=3/all-2")
    assert (r.applicable, r.lhs, r.rhs) == (True, 30, 30)
    r = report(reps, "three-points/lower/m_n=a-1/n=3/all-2")
    assert (r.applicable, r.lhs, r.rhs) == (True, 30, 30)
    r = report(reps, "three-points/lower/m_n=a-2/n=3/all-2")
    assert (r.lhs, r.rhs) == (24, 30)


def test_three_points_d3_case_matches_display():
    for d3 in range(3, 12):
        reps = branch_checks(LinkSpec(CIType((2, 2, d3)), "three-points"))
        r = report(reps, "three-points/upper/n=3/d1=d2=2<d3")
        assert r.applicable and r.holds
        assert (r.lhs, r.rhs) == (6 * (4 * d3 - 3), d3 * (d3 + 1) * (d3 + 3))


@pytest.mark.parametrize("delta,n", [(2, 3), (3, 3), (3, 4), (5, 5), (4, 6)])
def test_equal_degree_one_point_chain(delta, n):
    reps = one_point_checks(CIType((delta,) * n))
    final = report(reps, "one-point/upper/d1=dn/final")
    a = n * delta
    assert final.applicable and (final.lhs, final.rhs) == (a * (a - 2 * n + 2), (a - 1) * (a - n))
    assert all(r.holds for r in reps if r.applicable)


def test_expanded_form_of_the_tight_case():
    d1 = sympy.symbols("d1")
    lhs = 6 * (d1**2 * (d1 + 1) - (2 * d1 - 1))
    rhs = d1 * (3 * d1 - 1) * (3 * d1)
    assert sympy.expand(rhs - lhs - 3 * (d1 - 1) * (d1**2 - 2 * d1 + 2)) == 0
    # the factor with d1 in place of d1^2 goes negative, so it cannot be the intended one
    assert 3 * (3 - 1) * (3 - 2 * 3 + 2) < 0
    r = report(branch_checks(LinkSpec(CIType((2, 2, 3)), "collinear", t=3)),
               "collinear/upper/case2/n=3/d1=d2=d3-1/expanded")
    assert r.applicable and (r.lhs, r.rhs) == (0, 6)


def test_branch_report_serialization():
    r = branch_checks(LinkSpec(CIType((2, 2, 2)), "collinear", t=2))[0]
    assert set(r.to_dict()) >= {"label", "applicable", "lhs", "rhs", "holds"}


# --- properties ------------------------------------------------------------


@settings(max_examples=200)
@given(st.lists(st.integers(2, 9), min_size=1, max_size=7))
def test_ci_bounds_hold_with_equality_iff_pure(d):
    v = conjecture_verdict(koszul_diagram(d), prod(d))
    assert v.holds
    pure = len(set(d)) == 1
    assert (v.lower_value == v.degree) == pure
    assert (v.upper_value == v.degree) == pure


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(2, 7), min_size=3, max_size=6), st.data())
def test_branches_imply_verdicts(d, data):
    ci = CIType(tuple(d))
    t = data.draw(st.integers(1, ci.degrees[-1]))
    spec = LinkSpec(ci, "collinear", t=t)
    reps = [r for r in branch_checks(spec) if r.applicable]
    if all(r.holds for r in reps):
        for pr in collinear_profile(ci, t):
            assert conjecture_verdict(pr, spec.degree).holds


def test_small_sweeps_are_clean():
    for family, dmax in [("collinear", 4), ("three-points", 5), ("lemmas", 6), ("one-point", 5)]:
        rep = sweep(family, (3, 4), dmax)
        assert isinstance(rep, SweepReport) and rep.clean, rep.violations
        assert rep.checked == sum(1 for n in (3, 4) for _ in degree_tuples(n, dmax))


def test_sweep_rejects_unknown_family():
    with pytest.raises(ValueError):
        sweep("lines", (3, 3), 3)


def test_check_tuple_counts_instances():
    inst, verdicts, applicable, violations, *_ = check_tuple("collinear", (2, 2, 3))
    assert inst == 3 and verdicts == sum(len(collinear_profile(CIType((2, 2, 3)), t)) for t in (1, 2, 3))
    assert not violations and applicable > 0


def test_parallel_sweep_matches_serial():
    serial = sweep("three-points", (3, 5), 6, threads=1)
    parallel = sweep("three-points", (3, 5), 6, threads=2)
    assert serial.to_dict() | {"wall_time": 0} == parallel.to_dict() | {"wall_time": 0}


def test_oracle_mode_samples_and_agrees():
    rep = sweep("collinear", (3, 3), 3, oracle_density=0.5, seed=4)
    assert rep.clean
    assert rep.oracle["sampled"] == rep.oracle["agreed"] + rep.oracle["mismatched"] + len(rep.oracle["degenerate"])
    assert rep.oracle["mismatched"] == 0


def test_profiles_from_threepoints_have_both_top_branches():
    prof, _ = threepoints_profile(CIType((2, 2, 2, 5)))
    ci = CIType((2, 2, 2, 5))
    assert {pr.m[-1] for pr in prof} == {ci.alpha - 2, ci.alpha - 1}
