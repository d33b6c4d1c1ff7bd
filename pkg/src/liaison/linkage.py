"""Linkage of zero-schemes inside complete intersections.

Shift-level predictions (Koszul diagrams, the dual mapping cone, the
collinear and three-point profiles) sit next to the honest construction:
explicit comparison maps, the dual mapping-cone complex, and random
realization of linked instances.
"""

import warnings
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, prod

import numpy as np

from .groebner import Ideal, colon_ideal, is_regular_sequence
from .linalg import lift
from .resolution import (
    BettiDiagram,
    GradedMap,
    Resolution,
    betti,
    cancel_pair,
    free_resolution,
    minimalize,
)
from .ring import DEFAULT_PRIME, Ring, monomials_of_degree


class DegenerateRealization(RuntimeError):
    """Random realization kept failing genericity checks."""

    def __init__(self, message, seeds):
        super().__init__(message)
        self.seeds = list(seeds)


@dataclass(frozen=True)
class CIType:
    """Type (d_1 <= ... <= d_n) of a non-degenerate zero-dimensional CI in P^n."""

    degrees: tuple

    def __post_init__(self):
        d = tuple(sorted(int(x) for x in self.degrees))
        if len(d) < 3:
            raise ValueError("need n >= 3 degrees, got %d" % len(d))
        if d[0] < 2:
            raise ValueError("complete intersection must be non-degenerate (all d_i >= 2)")
        object.__setattr__(self, "degrees", d)

    @property
    def n(self):
        return len(self.degrees)

    @property
    def alpha(self):
        return sum(self.degrees)

    @property
    def degree(self):
        return prod(self.degrees)

    def __iter__(self):
        return iter(self.degrees)

    def __str__(self):
        return ",".join(map(str, self.degrees))


@dataclass(frozen=True)
class LinkSpec:
    """A link of X (type ``ci``) with a residual of the given kind.

    kind is "collinear" (uses ``t``), "three-points", or "custom" (uses
    ``sub``, the CI type of Z, componentwise at most ``ci``).
    """

    ci: CIType
    kind: str
    t: int = None
    sub: tuple = None

    def __post_init__(self):
        if not isinstance(self.ci, CIType):
            object.__setattr__(self, "ci", CIType(tuple(self.ci)))
        n = self.ci.n
        if self.kind == "collinear":
            if self.t is None or not 1 <= self.t <= self.ci.degrees[-1]:
                raise ValueError(
                    "collinear residual needs 1 <= t <= d_n = %d, got %s" % (self.ci.degrees[-1], self.t)
                )
        elif self.kind == "three-points":
            pass
        elif self.kind == "custom":
            if self.sub is None or len(self.sub) != n:
                raise ValueError("custom residual needs %d degrees" % n)
            e = tuple(sorted(self.sub))
            if e[0] < 1 or any(a > b for a, b in zip(e, self.ci.degrees)):
                raise ValueError("residual type must satisfy 1 <= e_i <= d_i")
            object.__setattr__(self, "sub", e)
        else:
            raise ValueError("unknown residual kind %r" % self.kind)

    @property
    def residual_degrees(self):
        """Generator degrees of I_Z."""
        n = self.ci.n
        if self.kind == "collinear":
            return (1,) * (n - 1) + (self.t,)
        if self.kind == "custom":
            return self.sub
        return (1,) * (n - 2) + (2, 2, 2)

    @property
    def residual_degree(self):
        if self.kind == "collinear":
            return self.t
        if self.kind == "three-points":
            return 3
        return prod(self.sub)

    @property
    def alpha_z(self):
        if self.kind == "three-points":
            return None
        return sum(self.residual_degrees)

    @property
    def link_degree(self):
        """a = alpha_X - alpha_Z, the degree of the extra generator of I_Y."""
        if self.kind == "three-points":
            return None
        return self.ci.alpha - self.alpha_z

    @property
    def degree(self):
        """Predicted degree of Y."""
        return self.ci.degree - self.residual_degree


@dataclass
class ShiftProfile:
    """Per-step extreme shifts of a (predicted) minimal resolution."""

    p: int
    m: list
    M: list
    degree: int
    scenario: str
    diagram: BettiDiagram = field(default=None, repr=False, compare=False)

    @classmethod
    def from_diagram(cls, diagram, degree, scenario, p=None):
        p = diagram.length if p is None else p
        return cls(p, diagram.mins(p), diagram.maxs(p), degree, scenario, diagram)

    def matches(self, diagram):
        return diagram.mins(self.p) == list(self.m) and diagram.maxs(self.p) == list(self.M)


# ---------------------------------------------------------------------------
# shift calculus


def koszul_diagram(degrees):
    """Entry (i, s) counts the i-subsets of ``degrees`` summing to s."""
    degrees = list(degrees)
    if not degrees:
        raise ValueError("degree list must be nonempty")
    cols = [[0]] + [
        [sum(s) for s in combinations(degrees, i)] for i in range(1, len(degrees) + 1)
    ]
    return BettiDiagram.from_shifts(cols, codim=len(degrees))


def mapping_cone_diagram(F, G, alpha):
    """Diagram of the dual mapping-cone resolution of the residual ideal.

    Column i (1 <= i < n) holds the dual of G_{n-i+1} and of F_{n-i}, column
    n the dual of G_1, all twisted by -alpha: a shift j becomes alpha - j.
    """
    n = F.length
    if G.length != n:
        raise ValueError("diagrams have lengths %d and %d" % (n, G.length))
    if F == G:
        warnings.warn("self-link: residual equals the linking scheme", stacklevel=2)
    cols = [[0]]
    for i in range(1, n):
        cols.append(
            sorted([alpha - s for s in G.column(n - i + 1)] + [alpha - s for s in F.column(n - i)])
        )
    cols.append(sorted(alpha - s for s in G.column(1)))
    return BettiDiagram.from_shifts(cols, codim=n)


def dual_twist_shifts(diagram, alpha):
    """The shift transform of the mapping cone applied to a whole diagram."""
    return diagram.dual_twist(alpha)


def collinear_profile(ci, t):
    """Profiles for Y linked to a collinear scheme of degree t in X of type ci.

    The first entry is the no-cancellation profile; the others remove the
    cancelling pairs of the scenarios the bound analysis distinguishes.
    """
    ci = ci if isinstance(ci, CIType) else CIType(tuple(ci))
    d = ci.degrees
    n, alpha = ci.n, ci.alpha
    if not 1 <= t <= d[-1]:
        raise ValueError("need 1 <= t <= d_n = %d" % d[-1])
    degree = ci.degree - t
    base = mapping_cone_diagram(koszul_diagram(d), koszul_diagram((1,) * (n - 1) + (t,)), alpha)

    lower = [("", [])]
    if t in d:
        label = "t=d_n" if t == d[-1] else "t=d_l"
        lower.append((label, [(n, alpha - t), (n - 1, alpha - t)]))
    upper = [("", [])]
    if d[0] < d[-1] and alpha - t - n + 1 == d[-1] - 1:
        k = d.count(d[-1])
        upper.append(("M1=d_n-1", [(1, d[-1])] * k + [(2, d[-1])] * k))

    out = []
    for ulabel, urem in upper:
        for llabel, lrem in lower:
            label = "+".join(x for x in (ulabel, llabel) if x) or "no-cancellation"
            try:
                diag = base.without(urem + lrem)
            except ValueError:
                continue
            out.append(ShiftProfile.from_diagram(diag, degree, label, p=n))
    return out


def three_points_residual_diagram(n):
    """Betti diagram of three non-collinear points in P^n."""
    cols = [[0]]
    for k in range(1, n + 1):
        cols.append([k] * _binom(n - 2, k) + [k + 1] * (3 * _binom(n - 2, k - 1) + 2 * _binom(n - 2, k - 2)))
    return BettiDiagram.from_shifts(cols, codim=n)


def _binom(a, b):
    return comb(a, b) if 0 <= b <= a else 0


def threepoints_predicted_diagram(ci):
    """The mapping-cone diagram for Y linked to three general points."""
    ci = ci if isinstance(ci, CIType) else CIType(tuple(ci))
    d, n, alpha = ci.degrees, ci.n, ci.alpha
    cols = [[0]]
    for i in range(1, n + 1):
        col = [alpha - n - 1 + i] * _binom(n - 2, n - i + 1)
        col += [alpha - n - 2 + i] * (3 * _binom(n - 2, n - i) + 2 * _binom(n - 2, n - i - 1))
        if i < n:
            col += [sum(s) for s in combinations(d, i)]
        cols.append(sorted(col))
    return BettiDiagram.from_shifts(cols, codim=n)


def threepoints_profile(ci):
    """(profiles, predicted nonminimal diagram) for Y linked to three points.

    Scenario ``cancel=k`` removes k pairs of degree alpha - 2 between the
    last two columns; k ranges up to min(3, #{d_j = 2}).
    """
    ci = ci if isinstance(ci, CIType) else CIType(tuple(ci))
    n, alpha = ci.n, ci.alpha
    diag = threepoints_predicted_diagram(ci)
    degree = ci.degree - 3
    kmax = min(3, ci.degrees.count(2))
    profiles = []
    for k in range(kmax + 1):
        d = diag.without([(n, alpha - 2)] * k + [(n - 1, alpha - 2)] * k)
        profiles.append(ShiftProfile.from_diagram(d, degree, "cancel=%d" % k, p=n))
    return profiles, diag


def threepoints_branch_profiles(ci):
    """The two shapes the bound analysis allows for the top shift.

    m_i = min(d_1 + ... + d_i, alpha - n + i - 2) for i < n and m_n is
    alpha - 2 or alpha - 1; M is taken from the uncancelled diagram.
    These are evaluated for every type, whether or not the cancellation
    that produces alpha - 1 can occur for it.
    """
    ci = ci if isinstance(ci, CIType) else CIType(tuple(ci))
    d, n, alpha = ci.degrees, ci.n, ci.alpha
    M = threepoints_profile(ci)[0][0].M
    low = [min(sum(d[:i]), alpha - n + i - 2) for i in range(1, n)]
    return [
        ShiftProfile(n, low + [alpha - 2], list(M), ci.degree - 3, "m_n=a-2"),
        ShiftProfile(n, low + [alpha - 1], list(M), ci.degree - 3, "m_n=a-1"),
    ]


def residual_diagram(spec):
    """Predicted minimal Betti diagram of the residual scheme Z."""
    if spec.kind == "three-points":
        return three_points_residual_diagram(spec.ci.n)
    return koszul_diagram(spec.residual_degrees)


def profiles(spec):
    if spec.kind == "collinear":
        return collinear_profile(spec.ci, spec.t)
    if spec.kind == "three-points":
        return threepoints_profile(spec.ci)[0]
    diag = mapping_cone_diagram(koszul_diagram(spec.ci.degrees), koszul_diagram(spec.sub), spec.ci.alpha)
    return [ShiftProfile.from_diagram(diag, spec.degree, "no-cancellation", p=spec.ci.n)]


# ---------------------------------------------------------------------------
# ideal-level linkage


def link_ideal(I_X, I_Z):
    """I_X : I_Z, after checking that I_X is contained in I_Z."""
    missing = [f for f in I_X.gens if not I_Z.contains(f)]
    if missing:
        raise ValueError("I_X is not contained in I_Z: %s not in I_Z" % missing[0])
    return colon_ideal(I_X, I_Z)


def extra_generators(I_X, I_Y):
    """Minimal generators of I_Y that are not in I_X."""
    return [g for g in I_Y.minimal_generators() if not I_X.contains(g)]


def maximal_ideal_times(I):
    R = I.ring
    return Ideal([x * g for g in I.gens for x in R.gens()], R)


def minimality_test(I_X, I_Z):
    """True iff every generator of I_X lies in m * I_Z."""
    if not all(I_Z.contains(f) for f in I_X.gens):
        raise ValueError("I_X is not contained in I_Z")
    mI = maximal_ideal_times(I_Z)
    return all(mI.contains(f) for f in I_X.gens)


# ---------------------------------------------------------------------------
# honest complexes


def koszul_resolution(fs):
    """The Koszul complex on the homogeneous forms ``fs`` with explicit maps."""
    fs = list(fs)
    ring = fs[0].ring
    n = len(fs)
    degs = [f.degree() for f in fs]
    maps = []
    prev = [()]
    for k in range(1, n + 1):
        basis = list(combinations(range(n), k))
        index = {J: i for i, J in enumerate(prev)}
        cols = []
        for J in basis:
            col = {}
            for pos, j in enumerate(J):
                f = fs[j] if pos % 2 == 0 else -fs[j]
                col[index[J[:pos] + J[pos + 1:]]] = f
            cols.append(col)
        source = [sum(degs[j] for j in J) for J in basis]
        target = [sum(degs[j] for j in J) for J in prev]
        maps.append(GradedMap(ring, source, target, cols))
        prev = basis
    return Resolution(ring, maps, minimal=True)


def comparison_maps(F, G):
    """Chain map phi: F -> G over the identity of R, by lifting through G.

    Returns [phi_0, ..., phi_L] with phi_k: F_k -> G_k.
    """
    ring = F.ring
    phis = [GradedMap(ring, [0], [0], [{0: ring.one()}])]
    for k in range(1, F.length + 1):
        dF = F.maps[k - 1]
        if k > G.length:
            phis.append(GradedMap(ring, dF.source, [], [{} for _ in dF.source]))
            continue
        dG = G.maps[k - 1]
        prev = phis[-1]
        cols = []
        for c, col in enumerate(dF.cols):
            img = {}
            for r, f in col.items():
                for rr, g in prev.cols[r].items():
                    v = img.get(rr)
                    img[rr] = f * g if v is None else v + f * g
            img = {r: v for r, v in img.items() if v}
            cols.append(lift(dG, img, dF.source[c]) if img else {})
        phis.append(GradedMap(ring, dF.source, dG.source, cols))
    return phis


def _block(ring, source, target, blocks):
    """Assemble a GradedMap from ((row_offset, col_offset, map, sign), ...)."""
    cols = [dict() for _ in source]
    for roff, coff, m, sign in blocks:
        if m is None:
            continue
        for c, col in enumerate(m.cols):
            for r, f in col.items():
                cols[coff + c][roff + r] = f if sign > 0 else -f
    return GradedMap(ring, source, target, cols)


def mapping_cone_resolution(F, G, alpha):
    """Honest resolution of R/(I_X : I_Z) from resolutions F of R/I_X
    (Gorenstein, top shift alpha) and G of R/I_Z (length n).

    The cone of the dual comparison map is built with explicit matrices and
    the R(-alpha) pair joined by the identity is cancelled, leaving the
    complex whose diagram ``mapping_cone_diagram`` predicts.
    """
    ring = F.ring
    n = F.length
    if G.length != n:
        raise ValueError("resolutions have lengths %d and %d" % (n, G.length))
    phi = comparison_maps(F, G)

    def Fsh(k):
        return F.shifts(k)

    def Gsh(k):
        return G.shifts(k) if k <= G.length else []

    # dual complexes, homologically indexed: DF_k = F_{n-k}^v(-alpha)
    def DF(k):
        return [alpha - s for s in Fsh(n - k)] if 0 <= k <= n else []

    def DG(k):
        return [alpha - s for s in Gsh(n - k)] if 0 <= k <= n else []

    def dDF(k):  # DF_k -> DF_{k-1}
        return F.maps[n - k].transpose(alpha)

    def dDG(k):
        return G.maps[n - k].transpose(alpha)

    def psi(k):  # DG_k -> DF_k
        return phi[n - k].transpose(alpha)

    maps = []
    for k in range(1, n + 2):
        source = DF(k) + DG(k - 1)
        target = DF(k - 1) + DG(k - 2)
        nf_t = len(DF(k - 1))
        nf_s = len(DF(k))
        blocks = []
        if DF(k) and DF(k - 1):
            blocks.append((0, 0, dDF(k), 1))
        if DG(k - 1) and DF(k - 1):
            blocks.append((0, nf_s, psi(k - 1), 1))
        if DG(k - 1) and DG(k - 2):
            blocks.append((nf_t, nf_s, dDG(k - 1), -1))
        maps.append(_block(ring, source, target, blocks))
    cone = Resolution(ring, maps)
    # the last differential R(-alpha) -> F_0^v(-alpha) + ... carries the identity
    unit = maps[n].cols[0].get(0)
    if unit is None or not unit.is_constant():
        raise ArithmeticError("comparison map does not start with the identity")
    return cancel_pair(cone, n, 0, 0)


# ---------------------------------------------------------------------------
# realization


@dataclass
class LinkInstance:
    """Concrete ideals of a link, with linkage identities verified."""

    I_X: Ideal
    I_Z: Ideal
    I_Y: Ideal
    spec: LinkSpec
    prime: int
    seed: int
    attempts: int = 1
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_ideals(cls, I_X, I_Z, check=True):
        """Link explicit ideals: I_X must be generated by a regular sequence."""
        xg = list(I_X.gens)
        if not is_regular_sequence(xg):
            raise ValueError("I_X is not generated by a regular sequence")
        I_Y = link_ideal(I_X, I_Z)
        spec = None
        zdeg = I_Z.degrees()
        if len(xg) >= 3 and min(g.degree() for g in xg) >= 2 and len(zdeg) == len(xg):
            try:
                spec = LinkSpec(CIType(tuple(I_X.degrees())), "custom", sub=tuple(zdeg))
            except ValueError:
                spec = None
        inst = cls(I_X, I_Z, I_Y, spec, I_X.ring.prime, None)
        if check and colon_ideal(I_X, I_Y) != I_Z:
            raise ArithmeticError("linkage involution failed: I_X : I_Y != I_Z")
        return inst

    @property
    def ring(self):
        return self.I_X.ring

    @property
    def alpha(self):
        return sum(g.degree() for g in self.I_X.gens)

    def x_resolution(self):
        if "F" not in self._cache:
            self._cache["F"] = koszul_resolution(list(self.I_X.gens))
        return self._cache["F"]

    def z_resolution(self):
        """Minimal resolution of R/I_Z computed by the Schreyer kernel."""
        if "G" not in self._cache:
            self._cache["G"] = minimalize(free_resolution(self.I_Z))
        return self._cache["G"]

    def cone_resolution(self):
        """Nonminimal mapping-cone resolution of R/I_Y with explicit maps."""
        if "H" not in self._cache:
            self._cache["H"] = mapping_cone_resolution(
                self.x_resolution(), self.z_resolution(), self.alpha
            )
        return self._cache["H"]

    def minimal_resolution(self):
        if "Hmin" not in self._cache:
            self._cache["Hmin"] = minimalize(self.cone_resolution())
        return self._cache["Hmin"]

    def predicted_diagram(self):
        F = koszul_diagram(self.I_X.degrees())
        G = betti(self.z_resolution())
        return mapping_cone_diagram(F, G, self.alpha)

    def degree(self):
        return self.I_Y.degree()

    def is_minimal_cone(self):
        return minimality_test(self.I_X, self.I_Z)


def _rng(seed, attempt):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, attempt])))


def _random_form(ring, degree, gen):
    if degree < 0:
        return ring.zero()
    monos = monomials_of_degree(ring.nvars, degree)
    coeffs = gen.integers(0, ring.prime, size=len(monos))
    return ring.from_dict({m: int(c) for m, c in zip(monos, coeffs)})


def residual_generators(spec, ring, gen):
    n = spec.ci.n
    x = ring.gens()
    if spec.kind == "collinear":
        t = spec.t
        coeffs = gen.integers(0, ring.prime, size=t)
        f = x[0] ** t
        for k in range(1, t + 1):
            f = f + (x[0] ** (t - k) * x[n] ** k).scale(int(coeffs[k - 1]))
        return x[1:n] + [f]
    if spec.kind == "three-points":
        return x[3:] + [x[0] * x[1], x[0] * x[2], x[1] * x[2]]
    return [_random_form(ring, e, gen) for e in spec.sub]


def realize(spec, prime=DEFAULT_PRIME, seed=0, retries=8, check=True):
    """Random concrete instance of ``spec`` over GF(prime).

    I_X is generated by random combinations of degree-d_i multiples of the
    generators of I_Z and must be a regular sequence; failures are retried
    with fresh randomness derived from (seed, attempt).
    """
    n = spec.ci.n
    ring = Ring(n + 1, prime)
    trail = []
    for attempt in range(retries):
        trail.append((seed, attempt))
        gen = _rng(seed, attempt)
        zg = residual_generators(spec, ring, gen)
        if spec.kind == "custom" and not is_regular_sequence(zg):
            continue
        xg = []
        for d in spec.ci.degrees:
            f = ring.zero()
            for g in zg:
                f = f + _random_form(ring, d - g.degree(), gen) * g
            xg.append(f)
        if any(not f for f in xg) or not is_regular_sequence(xg):
            continue
        I_X, I_Z = Ideal(xg, ring), Ideal(zg, ring)
        I_Y = link_ideal(I_X, I_Z)
        inst = LinkInstance(I_X, I_Z, I_Y, spec, prime, seed, attempt + 1)
        if check:
            back = colon_ideal(I_X, I_Y)
            if back != I_Z:
                raise ArithmeticError("linkage involution failed: I_X : I_Y != I_Z")
        return inst
    raise DegenerateRealization(
        "no generic realization of %s after %d attempts" % (spec, retries), trail
    )
