"""Degree bounds for linked zero-schemes, checked in exact integer arithmetic.

The conjectured bounds read  prod(m_i) <= p! * deg <= prod(M_i).  Every
comparison is done in that integer form; the rational values m/p! and
M/p! are only attached to a Verdict for reporting.

``branch_checks`` evaluates each displayed inequality of the case analyses
behind the collinear and three-point results with concrete degrees
substituted, so that a failing step can be pinned to one case.
"""

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial, prod

import numpy as np

from .linkage import (
    CIType,
    DegenerateRealization,
    LinkSpec,
    ShiftProfile,
    collinear_profile,
    realize,
    threepoints_branch_profiles,
    threepoints_profile,
)
from .resolution import BettiDiagram, betti
from .ring import DEFAULT_PRIME


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Verdict:
    """Outcome of  prod(m)/p! <= degree <= prod(M)/p!  for one resolution.

    For a non Cohen-Macaulay quotient only the upper bound is asserted;
    the lower comparison is still computed and reported.
    """

    p: int
    degree: int
    min_product: int
    max_product: int
    cohen_macaulay: bool = True

    @property
    def lower_holds(self):
        return self.min_product <= factorial(self.p) * self.degree

    @property
    def upper_holds(self):
        return factorial(self.p) * self.degree <= self.max_product

    @property
    def lower_value(self):
        return Fraction(self.min_product, factorial(self.p))

    @property
    def upper_value(self):
        return Fraction(self.max_product, factorial(self.p))

    @property
    def slack(self):
        """(degree - lower value, upper value - degree)."""
        return (self.degree - self.lower_value, self.upper_value - self.degree)

    @property
    def holds(self):
        if not self.cohen_macaulay:
            return self.upper_holds
        return self.lower_holds and self.upper_holds

    @property
    def known_failure(self):
        """Lower bound failing where it is not claimed (non-CM input)."""
        return not self.cohen_macaulay and not self.lower_holds

    def to_dict(self):
        return {
            "p": self.p,
            "degree": self.degree,
            "min_product": self.min_product,
            "max_product": self.max_product,
            "lower_value": str(self.lower_value),
            "upper_value": str(self.upper_value),
            "lower_holds": self.lower_holds,
            "upper_holds": self.upper_holds,
            "cohen_macaulay": self.cohen_macaulay,
            "holds": self.holds,
        }


def conjecture_verdict(source, degree, p=None, cohen_macaulay=True):
    """Verdict for a ShiftProfile or a minimal BettiDiagram.

    ``p`` defaults to the profile's p, or to the diagram's length.
    """
    if isinstance(source, ShiftProfile):
        p = source.p if p is None else p
        if p != source.p:
            if source.diagram is None:
                raise ValueError("profile carries shifts for p=%d only" % source.p)
            m, M = source.diagram.mins(p), source.diagram.maxs(p)
        else:
            m, M = list(source.m), list(source.M)
    elif isinstance(source, BettiDiagram):
        p = source.length if p is None else p
        m, M = source.mins(p), source.maxs(p)
    else:
        raise TypeError("expected a ShiftProfile or BettiDiagram")
    if p < 1:
        raise ValueError("p must be at least 1")
    return Verdict(p, int(degree), prod(m), prod(M), cohen_macaulay)


# ---------------------------------------------------------------------------
# branch reports


@dataclass(frozen=True, slots=True)
class BranchReport:
    """One inequality lhs <= rhs of a case analysis, with numbers substituted."""

    label: str
    applicable: bool
    lhs: int
    rhs: int

    @property
    def holds(self):
        return self.lhs <= self.rhs

    @property
    def failed(self):
        return self.applicable and self.lhs > self.rhs

    def to_dict(self):
        return {
            "label": self.label,
            "applicable": self.applicable,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
        }


def _prefix(d):
    """S[i] = d_1 + ... + d_i, with S[0] = 0."""
    out = [0]
    for x in d:
        out.append(out[-1] + x)
    return out


def _suffix(d):
    """T[i] = d_i + ... + d_n for 1 <= i <= n (T[0] unused)."""
    n = len(d)
    return [0] + [sum(d[i - 1:]) for i in range(1, n + 1)]


def lemma_checks(ci):
    """(d n! <= prod_{j=1..n} (alpha - j),  d n! <= prod_{k=0..n-1} (alpha - 2k))."""
    ci = _as_ci(ci)
    n, a, d = ci.n, ci.alpha, ci.degree
    lhs = d * factorial(n)
    return (
        lhs <= prod(a - j for j in range(1, n + 1)),
        lhs <= prod(a - 2 * k for k in range(n)),
    )


def _as_ci(ci):
    if isinstance(ci, CIType):
        return ci
    d = tuple(ci)
    if len(d) < 3:
        raise ValueError("degree inequalities need n >= 3, got n = %d" % len(d))
    return CIType(d)


def lemma_reports(ci):
    """Both CI degree inequalities plus the steps of the first one's proof."""
    ci = _as_ci(ci)
    d, n, a, deg = ci.degrees, ci.n, ci.alpha, ci.degree
    T = _suffix(d)
    nf = factorial(n)
    tail = prod(T[2:])
    out = [
        BranchReport("ci-degree/binomial", True, deg * nf, prod(a - j for j in range(1, n + 1))),
        BranchReport("ci-degree/even-steps", True, deg * nf, prod(a - 2 * k for k in range(n))),
        BranchReport("ci-degree/ci-bound", True, deg * nf, a * tail),
        BranchReport("ci-degree/d1<dn/refined", d[0] < d[-1], deg * nf, (a - 1) * tail),
    ]
    case1 = d[0] > 2
    out.append(BranchReport(
        "ci-degree/case1/bound", case1, a * tail, a * (a - 3) * prod(a - j for j in range(3, n + 1))
    ))
    out.append(BranchReport("ci-degree/case1/pair", case1, a * (a - 3), (a - 1) * (a - 2)))
    case2 = d[0] == 2
    out.append(BranchReport(
        "ci-degree/case2/bound", case2, a * tail,
        a * (a - 2) * (a - 4) * prod(a - j for j in range(4, n + 1)),
    ))
    out.append(BranchReport("ci-degree/case2/pair", case2, a * (a - 4), (a - 1) * (a - 3)))
    return out


def one_point_checks(ci):
    """Steps of the single-point residual case (collinear, t = 1)."""
    ci = _as_ci(ci)
    d, n, a, deg = ci.degrees, ci.n, ci.alpha, ci.degree
    S = _prefix(d)
    nf = factorial(n)
    out = []
    unequal = d[0] < d[-1]
    for k in range(1, n + 1):
        out.append(BranchReport("one-point/upper/d1<dn/row%d" % k, unequal, (n - k + 1) * d[k - 1], a - k))
    out.append(BranchReport(
        "one-point/upper/d1<dn/product", unequal, nf * deg, prod(a - i for i in range(1, n + 1))
    ))
    equal = not unequal
    delta = d[0]
    for k in range(n):
        out.append(BranchReport("one-point/upper/d1=dn/row%d" % k, equal, (n - k) * delta, a - 2 * k))
    for k in range(1, n - 1):
        out.append(BranchReport("one-point/upper/d1=dn/relax%d" % k, equal, a - 2 * k, a - (k + 1)))
    out.append(BranchReport(
        "one-point/upper/d1=dn/product", equal, nf * delta ** n,
        a * prod(a - i for i in range(2, n)) * (a - 2 * n + 2),
    ))
    out.append(BranchReport("one-point/upper/d1=dn/final", equal, a * (a - 2 * n + 2), (a - 1) * (a - n)))
    out.append(BranchReport("one-point/upper/target", True, nf * (deg - 1), prod(a - i for i in range(1, n + 1))))
    prefix = prod(S[1:n])
    out.append(BranchReport("one-point/lower/ci", True, prefix * a, nf * deg))
    out.append(BranchReport("one-point/lower/factorial", True, nf, prefix))
    out.append(BranchReport("one-point/lower/target", True, prefix * (a - 1), nf * (deg - 1)))
    return out


def _collinear_checks(ci, t, profiles):
    d, n, a, deg = ci.degrees, ci.n, ci.alpha, ci.degree
    S, T = _prefix(d), _suffix(d)
    nf = factorial(n)
    dn = d[-1]
    out = []
    R = out.append
    falling = prod(a - i for i in range(1, n))  # (a-1)...(a-(n-1))

    # upper bound, case 1: M_1 >= d_n
    all2 = all(x == 2 for x in d)
    R(BranchReport("collinear/upper/case1/ci-bound", True, nf * deg, prod(T[1:])))
    if n >= 4:
        R(BranchReport("collinear/upper/case1/alpha*T3", True, a * T[3], (a - 1) * (a - 3)))
        R(BranchReport("collinear/upper/case1/T2", True, T[2], a - 2))
        for k in range(4, n):
            R(BranchReport("collinear/upper/case1/T%d" % k, True, T[k], a - k))
        R(BranchReport("collinear/upper/case1/chain", True, prod(T[1:]), falling * dn))
    R(BranchReport("collinear/upper/case1/target", not (n == 3 and all2), nf * deg, falling * dn))
    if n == 3:
        d1, d2, d3 = d
        R(BranchReport("collinear/upper/n=3/d1>=3", d1 >= 3, a * (a - d1), (a - 1) * (a - 2)))
        app = d1 == 2 and d2 >= 3
        R(BranchReport("collinear/upper/n=3/d1=2,d2>=3/reduced", app, 11 * d2, d2 * d2 + 2 * d2 * d3 + d3 * d3 + d3))
        R(BranchReport("collinear/upper/n=3/d1=2,d2>=3", app, 6 * deg, (a - 1) * (a - 2) * d3))
        app = d1 == d2 == 2 and d3 >= 3
        R(BranchReport("collinear/upper/n=3/d1=d2=2,d3>=3", app, 24 * d3, d3 ** 3 + 5 * d3 ** 2 + 6 * d3))
        R(BranchReport("collinear/upper/n=3/d1=d2=2,d3>=3/reduced", app, 18, d3 * d3 + 5 * d3))
        R(BranchReport("collinear/upper/n=3/all-2", all2 and t > 1, 6 * (8 - t), 5 * 4 * 2))

    # upper bound, case 2: M_1 = d_n - 1
    case2 = any(pr.M[0] == dn - 1 for pr in profiles)
    R(BranchReport("collinear/upper/case2/refined-ci", case2, nf * deg, (a - 1) * prod(T[2:])))
    R(BranchReport("collinear/upper/case2/target", case2, nf * (deg - t), (a - t - n + 1) * falling))
    if n >= 5:
        R(BranchReport("collinear/upper/case2/claim", case2, dn * (dn + d[-2]), (dn - 1) * (dn + t)))
        R(BranchReport("collinear/upper/case2/t-bound", case2, d[-2] + n - 2, t))
        R(BranchReport("collinear/upper/case2/n>=5", case2, 2, (n - 4) * (dn - 1)))
        R(BranchReport("collinear/upper/case2/chain", case2, nf * deg, (dn - 1) * falling))
    elif n == 4:
        d1, d2, d3, d4 = d
        R(BranchReport("collinear/upper/case2/n=4/3d2<=a-3", case2 and d2 < d4, 3 * d2, a - 3))
        R(BranchReport("collinear/upper/case2/n=4/3d2<=a-2", case2 and d2 == d4, 3 * d2, a - 2))
        R(BranchReport("collinear/upper/case2/n=4/4d1<=a-3", case2 and d2 == d4, 4 * d1, a - 3))
        eq34 = case2 and d3 == d4
        R(BranchReport("collinear/upper/case2/n=4/4d1<=a-2", eq34 and d2 < d4, 4 * d1, a - 2))
        R(BranchReport("collinear/upper/case2/n=4/12d1d2", eq34, 12 * d1 * d2, (a - 2) * (a - 3)))
        R(BranchReport("collinear/upper/case2/n=4/2d3d4", eq34, 2 * d3 * d4, (a - 1) * (d4 - 1)))
        R(BranchReport("collinear/upper/case2/n=4/d4>=3", eq34, 3, d4))
        lt34 = case2 and d3 < d4
        R(BranchReport("collinear/upper/case2/n=4/4d1<=a-1", lt34, 4 * d1, a - 1))
        R(BranchReport("collinear/upper/case2/n=4/2d3d4<=(a-2)(d4-1)", lt34, 2 * d3 * d4, (a - 2) * (d4 - 1)))
        R(BranchReport("collinear/upper/case2/n=4/factor", lt34, 0, (d1 + d2 - 4 + d4 - d3) * (d4 - 1)))
    else:
        d1, d2, d3 = d
        R(BranchReport("collinear/upper/case2/n=3/d2<d3", case2, d2 + 1, d3))
        small = case2 and 3 * d1 <= a - 2
        R(BranchReport("collinear/upper/case2/n=3/3d1<=a-2", small, 3 * d1, a - 2))
        R(BranchReport("collinear/upper/case2/n=3/2d2d3", small, 2 * d2 * d3, (a - 1) * (d3 - 1)))
        R(BranchReport(
            "collinear/upper/case2/n=3/difference", small,
            (d1 - d2 + d3 - 3) * (d3 - 1), (a - 1) * (d3 - 1) - 2 * d2 * d3,
        ))
        R(BranchReport("collinear/upper/case2/n=3/factor", small, 0, (d1 - d2 + d3 - 3) * (d3 - 1)))
        tight = case2 and 3 * d1 == a - 1
        R(BranchReport(
            "collinear/upper/case2/n=3/d1=d2=d3-1", tight,
            6 * (d1 * d1 * (d1 + 1) - (2 * d1 - 1)), d1 * (3 * d1 - 1) * (3 * d1),
        ))
        R(BranchReport(
            "collinear/upper/case2/n=3/d1=d2=d3-1/expanded", tight,
            0, 3 * (d1 - 1) * (d1 * d1 - 2 * d1 + 2),
        ))

    # lower bound without cancellation
    pre = prod(S[1:n])
    R(BranchReport("collinear/lower/no-cancel/ci", True, pre * a, nf * deg))
    R(BranchReport("collinear/lower/no-cancel/factorial", True, nf * t, t * pre))
    R(BranchReport("collinear/lower/no-cancel/target", True, pre * (a - t), nf * (deg - t)))

    # lower bound, case 1: t = d_l < d_n
    dl = t < dn and t in d
    beta = prod(S[1:n - 1])
    R(BranchReport("collinear/lower/t=d_l/target", dl, pre * (a - 1), nf * (deg - t)))
    for i in range(1, n):
        R(BranchReport("collinear/lower/t=d_l/row%d" % i, dl, S[i], i * d[i - 1]))
    R(BranchReport("collinear/lower/t=d_l/row%d" % n, dl, a + 1, n * dn))
    exceptional = (
        (n == 3 and d[0] == 2)
        or (n == 4 and d[:2] in ((2, 2), (2, 3)))
        or (n == 5 and d[:3] in ((2, 2, 2), (2, 2, 3)))
    )
    R(BranchReport("collinear/lower/t=d_l/reduction", dl and not exceptional, nf * t, 2 * pre))
    R(BranchReport("collinear/lower/t=d_l/factorial<=2beta", dl and not exceptional, nf, 2 * beta))
    R(BranchReport("collinear/lower/t=d_l/power<=2beta", dl, 2 ** (n - 1) * factorial(n - 2), 2 * beta))
    if n == 3:
        d1, d2, d3 = d
        app = dl and d1 == 2 and t == d2
        R(BranchReport("collinear/lower/t=d_l/n=3,d1=2", app, 2 * (2 + d2) * (1 + d2 + d3), 6 * (2 * d2 * d3 - d2)))
        R(BranchReport("collinear/lower/t=d_l/n=3,d1=2/row1", app, (2 + d2) * d3, 2 * d2 * d3))
        R(BranchReport("collinear/lower/t=d_l/n=3,d1=2/row2", app, (2 + d2) * (d2 + 1), 2 * d2 * d3))
        R(BranchReport("collinear/lower/t=d_l/n=3,d1=2/slack", app, 0, d2 * (2 * d3 - 3)))

    # lower bound, case 2: t = d_n
    top = t == dn
    dprime = prod(d[:-1])
    f1 = factorial(n - 1)
    R(BranchReport("collinear/lower/t=d_n/target", top, (a - 1) * (a - dn - 1) * beta, nf * (deg - dn)))
    R(BranchReport("collinear/lower/t=d_n/ci-prefix", top, (a - dn) * beta, f1 * dprime))
    R(BranchReport("collinear/lower/t=d_n/factorial", top, f1, 2 ** (n - 2) * factorial(n - 2)))
    R(BranchReport("collinear/lower/t=d_n/power<=beta", top, 2 ** (n - 2) * factorial(n - 2), beta))
    R(BranchReport("collinear/lower/t=d_n/difference", top, (a - dn - 1) * beta, f1 * (dprime - 1)))
    R(BranchReport("collinear/lower/t=d_n/n*dn>=alpha", top, a, n * dn))
    return out


def _threepoint_checks(ci, profiles):
    d, n, a, deg = ci.degrees, ci.n, ci.alpha, ci.degree
    S, T = _prefix(d), _suffix(d)
    nf = factorial(n)
    out = []
    R = out.append
    if n >= 4:
        rhs = (a - n) * (a - n - 1) * prod(a - i for i in range(1, n - 1))
        even = prod(a - 2 * k for k in range(n))
        R(BranchReport("three-points/upper/target", True, nf * (deg - 3), rhs))
        R(BranchReport("three-points/upper/ci", True, nf * deg, a * prod(T[2:])))
        R(BranchReport("three-points/upper/even-steps", True, a * prod(T[2:]), even))
        R(BranchReport("three-points/upper/even-vs-target", True, even, rhs))
        if n > 4:
            for k in range(3, n - 2):
                R(BranchReport("three-points/upper/row%d" % k, True, a - 2 * k, a - (k + 1)))
            R(BranchReport("three-points/upper/row%d" % (n - 2), True, a - 2 * (n - 2), a - n))
            R(BranchReport("three-points/upper/row%d" % (n - 1), True, a - 2 * (n - 1), a - (n + 1)))
            R(BranchReport("three-points/upper/pair", True, a * (a - 4), (a - 1) * (a - 3)))
        else:
            R(BranchReport("three-points/upper/n=4/pair", True, a * (a - 6), (a - 1) * (a - 5)))
    else:
        d1, d2, d3 = d
        Mlow = (a - 4) * (a - 3) * (a - 1)
        all2 = d == (2, 2, 2)
        R(BranchReport("three-points/upper/n=3/all-2", all2, 6 * (deg - 3), Mlow))
        app = d1 == d2 == 2 and d3 > 2
        R(BranchReport("three-points/upper/n=3/d1=d2=2<d3", app, 6 * (4 * d3 - 3), d3 * (d3 + 1) * (d3 + 3)))
        R(BranchReport("three-points/upper/n=3/d1=d2=2<d3/factored", app, 0, (d3 - 2) * (d3 * d3 + 6 * d3 - 9)))
        app = d1 == 2 and d2 > 2
        s = d2 + d3
        R(BranchReport("three-points/upper/n=3/d1=2<d2", app, 6 * (2 * d2 * d3 - 3), (s - 2) * (s - 1) * (s + 1)))
        cubic = d2 ** 3 + 3 * d2 * d2 * d3 + 3 * d2 * d3 * d3 + d3 ** 3
        R(BranchReport(
            "three-points/upper/n=3/d1=2<d2/cubic", app,
            2 * d2 * d2 + 2 * d3 * d3 + 16 * d2 * d3 + d2 + d3, cubic,
        ))
        app = d1 > 2
        R(BranchReport("three-points/upper/n=3/d1>2/ci", app, 6 * deg, a * (a - d1) * (a - d1 - d2)))
        R(BranchReport("three-points/upper/n=3/d1>2/step", app, a * (a - d1) * (a - d1 - d2), (a - 1) * (a - d1) * (a - 4)))
        R(BranchReport("three-points/upper/n=3/d1>2/shifts", app, (a - 1) * (a - d1) * (a - 4), Mlow))

    # lower bound, split by the last minimum shift
    low2 = any(pr.m[-1] == a - 2 for pr in profiles)
    low1 = any(pr.m[-1] == a - 1 for pr in profiles)
    pre = prod(S[1:n])
    if n >= 4:
        R(BranchReport("three-points/lower/m_n=a-2/n>=4/target", low2, (a - 2) * pre, nf * (deg - 3)))
        R(BranchReport("three-points/lower/m_n=a-2/n>=4/ci", low2, a * pre, nf * deg))
        R(BranchReport("three-points/lower/m_n=a-2/n>=4/factorial", low2, 3 * nf, 2 ** n * factorial(n - 1)))
        R(BranchReport("three-points/lower/m_n=a-2/n>=4/power", low2, 2 ** n * factorial(n - 1), 2 * pre))
    else:
        d1, d2, d3 = d
        m = [min(S[i], a - n + i - 2) for i in range(1, n)]
        R(BranchReport("three-points/lower/m_n=a-2/n=3/all-2", low2 and d == (2, 2, 2), prod(m) * (a - 2), 6 * (deg - 3)))
        app = low2 and d1 == d2 == 2 and d3 > 2
        R(BranchReport("three-points/lower/m_n=a-2/n=3/d1=d2=2<d3", app, 2 * 4 * (a - 2), 6 * (deg - 3)))
        app = low2 and d2 > 2
        R(BranchReport("three-points/lower/m_n=a-2/n=3/d2>2", app, d1 * (d1 + d2) * (a - 2), 6 * deg - 18))
        R(BranchReport("three-points/lower/m_n=a-2/n=3/d2>2/ci", app, d1 * (d1 + d2) * a, 6 * deg))
        R(BranchReport("three-points/lower/m_n=a-2/n=3/d2>2/slack", app, 18, 2 * d1 * (d1 + d2)))

    # last-step shifts once all three degree alpha-2 summands have cancelled
    m_top = [min(S[i], a - n + i - 2) for i in range(1, n)] + [a - 1]
    R(BranchReport("three-points/lower/m_n=a-1/shifts", low1, prod(m_top), nf * (deg - 3)))
    if n >= 5:
        R(BranchReport("three-points/lower/m_n=a-1/target", low1, (a - 1) * pre, nf * (deg - 3)))
        R(BranchReport("three-points/lower/m_n=a-1/n>=5", low1, 3 * nf, pre))
        R(BranchReport("three-points/lower/m_n=a-1/n>=5/base", low1, 3 * factorial(5), 2 * 4 * 6 * 8))
        R(BranchReport("three-points/lower/m_n=a-1/n>=5/first-four", low1, 2 * 4 * 6 * 8, prod(S[1:5])))
        if n >= 6:
            R(BranchReport(
                "three-points/lower/m_n=a-1/n>=5/tail", low1,
                prod(range(6, n + 1)), prod(S[5:n]),
            ))
    elif n == 4:
        # the direct check assumes m_3 = 6, which needs d_4 >= 3; for
        # d_4 = 2 the shifts report above covers the case
        d4 = d[3]
        R(BranchReport(
            "three-points/lower/m_n=a-1/n=4", low1 and d4 >= 3,
            2 * 4 * 6 * (d4 + 5), factorial(4) * (8 * d4 - 3),
        ))
    else:
        R(BranchReport("three-points/lower/m_n=a-1/n=3/all-2", low1, 2 * 3 * 5, 6 * (deg - 3)))
    return out


def branch_checks(spec):
    """Every inequality of the applicable case analysis, evaluated for ``spec``."""
    ci = spec.ci
    if spec.kind == "collinear":
        out = _collinear_checks(ci, spec.t, collinear_profile(ci, spec.t))
        if spec.t == 1:
            out += one_point_checks(ci)
        return out
    if spec.kind == "three-points":
        return _threepoint_checks(ci, threepoints_profile(ci)[0])
    return lemma_reports(ci)


# ---------------------------------------------------------------------------
# sweeps

FAMILIES = ("collinear", "three-points", "lemmas", "one-point")


@dataclass
class Violation:
    degrees: tuple
    t: int
    scenario: str
    detail: str

    def sort_key(self):
        return (len(self.degrees), self.degrees, self.t or 0, self.scenario, self.detail)

    def to_dict(self):
        return {"degrees": list(self.degrees), "t": self.t, "scenario": self.scenario, "detail": self.detail}


@dataclass
class SweepReport:
    family: str
    grid: dict
    checked: int = 0
    instances: int = 0
    verdicts: int = 0
    branches_applicable: int = 0
    violations: list = field(default_factory=list)
    min_lower_slack: tuple = None  # (slack, degrees, t, scenario)
    min_upper_slack: tuple = None
    equality_witnesses: list = field(default_factory=list)
    oracle: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def clean(self):
        return not self.violations

    def to_dict(self):
        def slack(s):
            if s is None:
                return None
            return {"slack": str(s[0]), "degrees": list(s[1]), "t": s[2], "scenario": s[3]}

        return {
            "family": self.family,
            "grid": self.grid,
            "tuples_checked": self.checked,
            "instances": self.instances,
            "verdicts": self.verdicts,
            "branches_applicable": self.branches_applicable,
            "violations": [v.to_dict() for v in self.violations],
            "min_lower_slack": slack(self.min_lower_slack),
            "min_upper_slack": slack(self.min_upper_slack),
            "equality_witnesses": self.equality_witnesses,
            "oracle": self.oracle,
            "wall_time": round(self.wall_time, 3),
        }


def degree_tuples(n, dmax, dmin=2):
    """Ascending tuples dmin <= d_1 <= ... <= d_n <= dmax."""
    return combinations_with_replacement(range(dmin, dmax + 1), n)


def _instances(family, d):
    ci = CIType(d)
    if family == "collinear":
        return [LinkSpec(ci, "collinear", t=t) for t in range(1, d[-1] + 1)]
    if family == "one-point":
        return [LinkSpec(ci, "collinear", t=1)]
    if family == "three-points":
        return [LinkSpec(ci, "three-points")]
    return []


def _profiles(spec):
    if spec.kind == "collinear":
        return collinear_profile(spec.ci, spec.t)
    return threepoints_profile(spec.ci)[0]


def check_tuple(family, d):
    """Arithmetic checks for one degree tuple.

    Returns (instances, verdicts, applicable branches, violations,
    lower slacks, upper slacks, equality witnesses).
    """
    d = tuple(d)
    violations, lows, ups, eqs = [], [], [], []
    verdicts = applicable = 0
    if family == "lemmas":
        for r in lemma_reports(CIType(d)):
            if not r.applicable:
                continue
            applicable += 1
            if r.failed:
                violations.append(Violation(d, None, "lemma", "%s: %d > %d" % (r.label, r.lhs, r.rhs)))
            elif r.label in ("ci-degree/binomial", "ci-degree/even-steps") and r.lhs == r.rhs:
                eqs.append({"degrees": list(d), "label": r.label, "lhs": r.lhs, "rhs": r.rhs})
        return 1, 0, applicable, violations, lows, ups, eqs
    specs = _instances(family, d)
    for spec in specs:
        t = spec.t
        candidates = _profiles(spec)
        if family == "three-points":
            candidates = candidates + threepoints_branch_profiles(spec.ci)
        for pr in candidates:
            v = conjecture_verdict(pr, spec.degree, p=spec.ci.n)
            verdicts += 1
            if not v.holds:
                violations.append(Violation(
                    d, t, pr.scenario,
                    "prod m = %d, n! deg = %d, prod M = %d"
                    % (v.min_product, factorial(v.p) * v.degree, v.max_product),
                ))
            lo, up = v.slack
            lows.append((lo, d, t, pr.scenario))
            ups.append((up, d, t, pr.scenario))
        for r in branch_checks(spec):
            if r.applicable:
                applicable += 1
                if r.lhs > r.rhs:
                    violations.append(Violation(d, t, "branch", "%s: %d > %d" % (r.label, r.lhs, r.rhs)))
    return len(specs), verdicts, applicable, violations, lows, ups, eqs


def _check_chunk(args):
    family, tuples = args
    return [check_tuple(family, d) for d in tuples]


def _workers(threads):
    if threads is None:
        threads = int(os.environ.get("LIAISON_THREADS", "1") or 1)
    if threads == 0:
        threads = os.cpu_count() or 1
    return max(1, threads)


def oracle_check(spec, prime=DEFAULT_PRIME, seed=0):
    """Realize ``spec`` and compare the kernel's resolution with the predictions.

    Returns a list of mismatch strings (empty when everything agrees).
    """
    inst = realize(spec, prime, seed)
    problems = []
    if inst.degree() != spec.degree:
        problems.append("degree %d, predicted %d" % (inst.degree(), spec.degree))
    cone = betti(inst.cone_resolution())
    if cone != inst.predicted_diagram():
        problems.append("mapping-cone diagram differs from prediction")
    minimal = betti(inst.minimal_resolution())
    if not any(pr.matches(minimal) for pr in _profiles(spec)):
        problems.append("minimal shifts m=%s M=%s match no scenario"
                        % (minimal.mins(spec.ci.n), minimal.maxs(spec.ci.n)))
    return problems


def sweep(family, n_range, dmax, oracle_density=0.0, prime=DEFAULT_PRIME, seed=0,
          threads=None, dmin=2):
    """Check every ascending degree tuple of the grid.

    Arithmetic mode is exhaustive.  With ``oracle_density > 0`` that
    fraction of instances (drawn with ``seed``) is also realized over
    GF(prime) and compared against the kernel's resolutions.
    """
    if family not in FAMILIES:
        raise ValueError("unknown family %r; expected one of %s" % (family, ", ".join(FAMILIES)))
    lo_n, hi_n = n_range
    if lo_n < 3:
        raise ValueError("n must be at least 3")
    start = time.perf_counter()
    report = SweepReport(family, {"n": [lo_n, hi_n], "dmin": dmin, "dmax": dmax})
    tuples = [d for n in range(lo_n, hi_n + 1) for d in degree_tuples(n, dmax, dmin)]
    workers = _workers(threads)
    if workers > 1 and len(tuples) > 64:
        from concurrent.futures import ProcessPoolExecutor

        size = max(1, len(tuples) // (workers * 8))
        chunks = [(family, tuples[i:i + size]) for i in range(0, len(tuples), size)]
        with ProcessPoolExecutor(workers) as ex:
            results = [r for chunk in ex.map(_check_chunk, chunks) for r in chunk]
    else:
        results = [check_tuple(family, d) for d in tuples]
    for inst, nverd, napp, viol, lows, ups, eqs in results:
        report.checked += 1
        report.instances += inst
        report.verdicts += nverd
        report.branches_applicable += napp
        report.violations.extend(viol)
        report.equality_witnesses.extend(eqs)
        for s in lows:
            if report.min_lower_slack is None or s[0] < report.min_lower_slack[0]:
                report.min_lower_slack = s
        for s in ups:
            if report.min_upper_slack is None or s[0] < report.min_upper_slack[0]:
                report.min_upper_slack = s
    if oracle_density > 0 and family != "lemmas":
        report.oracle = _oracle_pass(family, tuples, oracle_density, prime, seed, report.violations)
    report.violations.sort(key=Violation.sort_key)
    report.wall_time = time.perf_counter() - start
    return report


def _oracle_pass(family, tuples, density, prime, seed, violations):
    gen = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, 0x5EED])))
    specs = [s for d in tuples for s in _instances(family, d)]
    picks = [s for s in specs if gen.random() < density]
    stats = {"sampled": len(picks), "agreed": 0, "mismatched": 0, "degenerate": []}
    for spec in picks:
        try:
            problems = oracle_check(spec, prime, seed)
        except DegenerateRealization as exc:
            stats["degenerate"].append({"degrees": list(spec.ci.degrees), "t": spec.t,
                                        "seeds": [list(s) for s in exc.seeds]})
            continue
        if problems:
            stats["mismatched"] += 1
            for msg in problems:
                violations.append(Violation(spec.ci.degrees, spec.t, "oracle", msg))
        else:
            stats["agreed"] += 1
    return stats


def crosscheck(family, n_range, dmax, density=1.0, prime=DEFAULT_PRIME, seed=0, dmin=2):
    """Oracle-only sweep: realize sampled instances and compare against predictions."""
    if family not in ("collinear", "three-points", "one-point"):
        raise ValueError("crosscheck needs a linkage family, got %r" % family)
    lo_n, hi_n = n_range
    start = time.perf_counter()
    report = SweepReport(family, {"n": [lo_n, hi_n], "dmin": dmin, "dmax": dmax, "density": density})
    tuples = [d for n in range(lo_n, hi_n + 1) for d in degree_tuples(n, dmax, dmin)]
    report.checked = len(tuples)
    report.instances = sum(len(_instances(family, d)) for d in tuples)
    report.oracle = _oracle_pass(family, tuples, density, prime, seed, report.violations)
    report.violations.sort(key=Violation.sort_key)
    report.wall_time = time.perf_counter() - start
    return report
