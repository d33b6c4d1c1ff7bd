"""Groebner bases and the ideal operations linkage needs.

Buchberger's algorithm with the normal selection strategy and the
Gebauer-Moeller pair criteria, returning reduced bases.  Intersections use
one auxiliary variable under a two-block elimination order; colon ideals
are built from intersections with principal ideals.
"""

import heapq
import itertools
from functools import lru_cache
from itertools import combinations

from .ring import (
    MonomialOrder,
    Polynomial,
    Ring,
    mono_divides,
    mono_lcm,
    packer,
    reduce_dict,
    reduce_packed,
)


def _spoly(a, b, lcm, p):
    (la, _, fa, _), (lb, _, fb, _) = a, b
    sa, sb = lcm - la, lcm - lb
    out = {m + sa: c for m, c in fa.items()}
    for m, c in fb.items():
        mm = m + sb
        v = (out.get(mm, 0) - c) % p
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


def groebner_dicts(polys, key, p):
    """Reduced Groebner basis of coefficient dicts under the order ``key``.

    Returns a list of monic coefficient dicts sorted by descending leading
    monomial.
    """
    polys = [f for f in polys if f]
    if not polys:
        return []
    pk = packer(len(next(iter(polys[0]))))
    pack, unpack, guard = pk.pack, pk.unpack, pk.guard

    @lru_cache(maxsize=None)
    def pkey(m):
        return key(unpack(m))

    basis = []  # (packed lm, inv_lc, packed coeffs, lm tuple); members are monic
    active = []
    pairs = {}
    heap = []
    counter = itertools.count()
    for f in polys:
        heapq.heappush(
            heap,
            (max(sum(m) for m in f), next(counter), None, {pack(m): c for m, c in f.items()}),
        )

    def update(h):
        lh = basis[h][3]
        cands = [(g, mono_lcm(lh, basis[g][3])) for g in active]
        keep = []
        for k, (g, l) in enumerate(cands):
            if _coprime(lh, basis[g][3]):
                keep.append((g, l, True))
                continue
            if any(mono_divides(l2, l) for _, l2 in cands[k + 1:]):
                continue
            if any(mono_divides(l2, l) for _, l2, _ in keep):
                continue
            keep.append((g, l, False))
        for (i, j), l in list(pairs.items()):
            if (
                mono_divides(lh, l)
                and mono_lcm(basis[i][3], lh) != l
                and mono_lcm(basis[j][3], lh) != l
            ):
                del pairs[(i, j)]
        for g, l, coprime in keep:
            if not coprime:
                pairs[(g, h)] = l
                heapq.heappush(heap, (sum(l), next(counter), (g, h), None))
        active[:] = [g for g in active if not mono_divides(lh, basis[g][3])] + [h]

    while heap:
        _, _, pair, f = heapq.heappop(heap)
        if pair is not None:
            if pair not in pairs:
                continue
            l = pairs.pop(pair)
            f = _spoly(basis[pair[0]], basis[pair[1]], pack(l), p)
        h = reduce_packed(f, [basis[g] for g in active], pkey, p, guard)
        if not h:
            continue
        lm = max(h, key=pkey)
        inv = pow(h[lm], -1, p)
        h = {m: c * inv % p for m, c in h.items()}
        if lm == 0:
            return [{unpack(m): c for m, c in h.items()}]
        basis.append((lm, 1, h, unpack(lm)))
        update(len(basis) - 1)

    # interreduce tails
    final = []
    members = [basis[g] for g in active]
    for idx, (lm, _, g, _) in enumerate(members):
        others = members[:idx] + members[idx + 1:]
        tail = {m: c for m, c in g.items() if m != lm}
        red = reduce_packed(tail, others, pkey, p, guard) if tail else {}
        red[lm] = 1
        final.append((lm, red))
    final.sort(key=lambda t: pkey(t[0]), reverse=True)
    return [{unpack(m): c for m, c in g.items()} for _, g in final]


def buchberger(gens, order=None):
    """Reduced Groebner basis of ``gens`` (list of Polynomial).

    ``order`` defaults to the ring's order; results live in a ring carrying
    that order.  An empty or all-zero input gives an empty basis.
    """
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = gens[0].ring
    for g in gens:
        ring_check(ring, g)
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
    dicts = groebner_dicts([g.coeffs for g in gens], ring.order.key, ring.prime)
    return [Polynomial(ring, d) for d in dicts]


def ring_check(ring, f):
    if f.ring.nvars != ring.nvars or f.ring.prime != ring.prime:
        raise ValueError("generators live in different rings")


class Ideal:
    """A homogeneous ideal given by generators, with a cached reduced GB."""

    def __init__(self, gens, ring=None, check=True):
        gens = [g for g in gens if g]
        if ring is None:
            if not gens:
                raise ValueError("ring required for the zero ideal")
            ring = gens[0].ring
        self.ring = ring
        for g in gens:
            ring_check(ring, g)
            if check and not g.is_homogeneous():
                raise ValueError("generator %s is not homogeneous" % g)
        self.gens = tuple(ring.convert(g) if g.ring is not ring else g for g in gens)
        self._gb = None

    @classmethod
    def from_gb(cls, gb, ring):
        I = cls(gb, ring, check=False)
        I._gb = tuple(I.gens)
        return I

    @property
    def order(self):
        return self.ring.order

    @property
    def nvars(self):
        return self.ring.nvars

    def gb(self):
        if self._gb is None:
            self._gb = tuple(buchberger(self.gens))
        return self._gb

    def lead_monomials(self):
        return [g.lm for g in self.gb()]

    def reduce(self, f):
        G = self.gb()
        if not G:
            return f
        key = self.ring.order.key
        divisors = [(g.lm, 1, g.coeffs) for g in G]
        return Polynomial(self.ring, reduce_dict(f.coeffs, divisors, key, self.ring.prime))

    def contains(self, f):
        if isinstance(f, Ideal):
            return all(self.contains(g) for g in f.gens)
        return not self.reduce(f)

    __contains__ = contains

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        G = self.gb()
        return len(G) == 1 and G[0].is_constant()

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return [g.coeffs for g in self.gb()] == [g.coeffs for g in other.gb()]

    def __hash__(self):
        return hash(tuple(frozenset(g.coeffs.items()) for g in self.gb()))

    def __add__(self, other):
        if isinstance(other, Polynomial):
            other = Ideal([other], self.ring)
        return Ideal(list(self.gens) + list(other.gens), self.ring)

    def __repr__(self):
        return "Ideal(%s)" % ", ".join(str(g) for g in self.gens)

    def degrees(self):
        return sorted(g.degree() for g in self.gens)

    def minimal_generators(self):
        """A minimal homogeneous generating set, chosen greedily by degree."""
        cands = sorted(self.gens, key=lambda g: g.degree())
        kept = []
        current = None
        for g in cands:
            if current is not None and current.contains(g):
                continue
            kept.append(g)
            current = Ideal(kept, self.ring)
        return kept

    def codim(self):
        return codim(self)

    def dim(self):
        return self.nvars - codim(self)

    def hilbert(self):
        from .resolution import hilbert_degree

        return hilbert_degree(self)

    def degree(self):
        return self.hilbert().degree

    def colon(self, f):
        return colon(self, f)

    def quotient(self, J):
        return colon_ideal(self, J)

    def intersect(self, J):
        return intersect(self, J)


def _embed(f, ring, pad):
    return Polynomial(ring, {(0,) * pad + m: c for m, c in f.coeffs.items()})


def intersect(I, J):
    """I intersected with J, by eliminating an auxiliary variable t.

    Uses the generators t*f (f in I) and (1 - t)*g (g in J) in R[t] with t
    in its own leading block.
    """
    R = I.ring
    if J.ring.nvars != R.nvars or J.ring.prime != R.prime:
        raise ValueError("ideals live in different rings")
    if I.is_zero() or J.is_zero():
        return Ideal([], R)
    n = R.nvars
    S = Ring(n + 1, R.prime, MonomialOrder(n + 1, block=1), ("t",) + R.names)
    t = S.var(0)
    gens = [t * _embed(f, S, 1) for f in I.gens]
    gens += [(S.one() - t) * _embed(g, S, 1) for g in J.gens]
    G = groebner_dicts([g.coeffs for g in gens], S.order.key, S.prime)
    out = []
    for g in G:
        if all(m[0] == 0 for m in g):
            out.append(Polynomial(R, {m[1:]: c for m, c in g.items()}))
    out.sort(key=lambda f: R.order.key(f.lm), reverse=True)
    return Ideal.from_gb(out, R)


def exact_divide(g, f):
    """g / f, raising ValueError if f does not divide g."""
    q = [{}]
    lm = f.lm
    rem = reduce_dict(
        g.coeffs, [(lm, pow(f.coeffs[lm], -1, f.ring.prime), f.coeffs)],
        f.ring.order.key, f.ring.prime, quotients=q,
    )
    if rem:
        raise ValueError("division is not exact")
    return Polynomial(g.ring, q[0])


def colon(I, f):
    """The ideal quotient I : f for a single nonzero homogeneous f."""
    if not f:
        raise ValueError("colon by the zero polynomial")
    if f.is_constant():
        return Ideal.from_gb(list(I.gb()), I.ring) if not I.is_zero() else Ideal([], I.ring)
    if I.contains(f):
        return Ideal([I.ring.one()], I.ring)
    K = intersect(I, Ideal([f], I.ring))
    return Ideal([exact_divide(g, f) for g in K.gens], I.ring)


def colon_ideal(I, J):
    """I : J, the intersection of I : g over generators g of J.

    Generators are taken by ascending degree and skipped once they lie in
    I + (generators already used), since I : J depends only on I + J.
    """
    gens = sorted((g for g in J.gens if g), key=lambda g: g.degree())
    if not gens:
        raise ValueError("colon by the zero ideal")
    result = None
    covered = I
    for g in gens:
        if covered.contains(g):
            continue
        Q = colon(I, g)
        result = Q if result is None else intersect(result, Q)
        covered = covered + g
    if result is None:
        return Ideal([I.ring.one()], I.ring)
    return result


def monomial_dim(lead_monomials, nvars):
    """Krull dimension of R/(monomials): the largest variable subset that
    contains the support of no monomial."""
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lead_monomials]
    if any(not s for s in supports):
        return -1
    for size in range(nvars, -1, -1):
        for S in combinations(range(nvars), size):
            S = frozenset(S)
            if not any(s <= S for s in supports):
                return size
    return -1


def codim(I):
    """Codimension of I: nvars - dim(R/I); the unit ideal gives nvars + 1."""
    if I.is_zero():
        return 0
    return I.nvars - monomial_dim(I.lead_monomials(), I.nvars)


def is_regular_sequence(fs):
    fs = list(fs)
    if not fs or any(not f for f in fs):
        return False
    return codim(Ideal(fs)) == len(fs)
