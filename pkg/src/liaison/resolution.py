"""Graded free resolutions, minimalization, Betti diagrams and Hilbert data.

Resolutions are built from Schreyer's theorem: the S-pair syzygies of a
Groebner basis form a Groebner basis of the syzygy module for the induced
order, so the construction iterates without fresh Buchberger runs.
"""

import heapq
import warnings
from collections import Counter
from dataclasses import dataclass, field

from .groebner import Ideal
from .ring import Polynomial, mono_divides, mono_lcm


class GradedMap:
    """A homogeneous map of graded free modules, stored by sparse columns.

    ``cols[c]`` maps a row index to the nonzero polynomial in that cell.
    ``source[c]`` / ``target[r]`` are the internal degrees of the basis
    elements, so cell (r, c) is homogeneous of degree source[c] - target[r].
    """

    def __init__(self, ring, source, target, cols):
        self.ring = ring
        self.source = list(source)
        self.target = list(target)
        self.cols = [dict(col) for col in cols]
        if len(self.cols) != len(self.source):
            raise ValueError("column count does not match source rank")

    @property
    def nrows(self):
        return len(self.target)

    @property
    def ncols(self):
        return len(self.source)

    def entry(self, r, c):
        return self.cols[c].get(r, self.ring.zero())

    def check_degrees(self):
        for c, col in enumerate(self.cols):
            for r, f in col.items():
                if not f.is_homogeneous() or f.degree() != self.source[c] - self.target[r]:
                    return False
        return True

    def compose(self, other):
        """self o other (other is applied first)."""
        if other.nrows != self.ncols:
            raise ValueError("maps are not composable")
        out = []
        for col in other.cols:
            acc = {}
            for k, g in col.items():
                for r, f in self.cols[k].items():
                    v = acc.get(r)
                    acc[r] = f * g if v is None else v + f * g
            out.append({r: v for r, v in acc.items() if v})
        return GradedMap(self.ring, other.source, self.target, out)

    def is_zero(self):
        return all(not col for col in self.cols)

    def transpose(self, twist=0):
        """Dual map; the dual of R(-a) twisted by -twist is R(-(twist - a))."""
        rows = [dict() for _ in range(self.nrows)]
        for c, col in enumerate(self.cols):
            for r, f in col.items():
                rows[r][c] = f
        return GradedMap(
            self.ring,
            [twist - s for s in self.target],
            [twist - s for s in self.source],
            rows,
        )

    def unit_entries(self):
        return sorted(
            (r, c) for c, col in enumerate(self.cols) for r, f in col.items() if f.is_constant()
        )

    def __repr__(self):
        return "GradedMap(%d x %d)" % (self.nrows, self.ncols)


class Resolution:
    """A finite complex R = F_0 <- F_1 <- ... <- F_L of graded free modules.

    ``maps[k - 1]`` is the differential F_k -> F_{k-1}.
    """

    def __init__(self, ring, maps, minimal=False):
        self.ring = ring
        self.maps = list(maps)
        self.minimal = minimal

    @property
    def length(self):
        return len(self.maps)

    def shifts(self, i):
        if i == 0:
            return list(self.maps[0].target) if self.maps else [0]
        return list(self.maps[i - 1].source)

    def ranks(self):
        return [len(self.shifts(i)) for i in range(self.length + 1)]

    def is_complex(self):
        return all(
            self.maps[k].compose(self.maps[k + 1]).is_zero() for k in range(self.length - 1)
        )

    def has_unit_entries(self):
        return any(d.unit_entries() for d in self.maps)

    def generators(self):
        """Images of the basis of F_1 in R (the ideal being resolved)."""
        if not self.maps:
            return []
        return [col.get(0, self.ring.zero()) for col in self.maps[0].cols]

    def betti(self):
        return betti(self)

    def __repr__(self):
        return "Resolution(ranks=%s, minimal=%s)" % (self.ranks(), self.minimal)


# ---------------------------------------------------------------------------
# Schreyer resolution


def _reduce_module(f, by_comp, key, p, quotients):
    """Reduce a module element {(comp, exp): c} to zero-or-remainder.

    ``by_comp[comp]`` lists ``(index, lead_exp, inv_lc, element)``.
    Quotient terms accumulate in ``quotients[index]``.
    """
    f = dict(f)
    heap = [(_neg(key(m)), m) for m in f]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, 0)
        if not c:
            continue
        comp, exp = m
        for idx, lexp, inv, g in by_comp.get(comp, ()):
            if mono_divides(lexp, exp):
                q = c * inv % p
                shift = tuple(a - b for a, b in zip(exp, lexp))
                qd = quotients[idx]
                qd[shift] = (qd.get(shift, 0) + q) % p
                for (gc, gm), gv in g.items():
                    mm = (gc, tuple(a + b for a, b in zip(gm, shift)))
                    if mm == m:
                        continue
                    old = f.get(mm)
                    if old is None:
                        v = (-q * gv) % p
                        if v:
                            f[mm] = v
                            heapq.heappush(heap, (_neg(key(mm)), mm))
                    else:
                        v = (old - q * gv) % p
                        if v:
                            f[mm] = v
                        else:
                            del f[mm]
                break
        else:
            rem[m] = c
    return rem


class _Neg:
    """Reverses the ordering of a nested-tuple key for use in a min-heap."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k


def _neg(k):
    return _Neg(k)


def _schreyer_key(prev_key, leads):
    cache = {}

    def key(m):
        v = cache.get(m)
        if v is None:
            comp, exp = m
            lc, le = leads[comp]
            v = (prev_key((lc, tuple(a + b for a, b in zip(exp, le)))), -comp)
            cache[m] = v
        return v

    return key


def _column(ring, vec):
    col = {}
    for (comp, exp), c in vec.items():
        col.setdefault(comp, {})[exp] = c
    return {r: Polynomial(ring, d) for r, d in col.items()}


def free_resolution(I, max_length=None):
    """A (usually nonminimal) free resolution of R/I via Schreyer syzygies."""
    ring = I.ring
    p = ring.prime
    G = list(I.gb())
    if not G:
        return Resolution(ring, [], minimal=True)
    G.sort(key=lambda g: g.lm, reverse=True)
    vecs = [{(0, m): c for m, c in g.coeffs.items()} for g in G]
    base_key = ring.order.key

    def key0(m):
        return (base_key(m[1]),)

    key = key0
    target = [0]
    maps = []
    limit = max_length if max_length is not None else ring.nvars + 1
    while vecs and len(maps) < limit:
        leads, lcs = [], []
        for v in vecs:
            m = max(v, key=key)
            leads.append(m)
            lcs.append(v[m])
        source = [target[comp] + sum(exp) for comp, exp in leads]
        maps.append(GradedMap(ring, source, target, [_column(ring, v) for v in vecs]))
        invs = [pow(c, -1, p) for c in lcs]
        by_comp = {}
        for idx, (comp, exp) in enumerate(leads):
            by_comp.setdefault(comp, []).append((idx, exp, invs[idx], vecs[idx]))
        new = []
        for comp, members in by_comp.items():
            for pos, (i, ei, inv_i, vi) in enumerate(members):
                cands = []
                for j, ej, inv_j, vj in members[pos + 1:]:
                    lcm = mono_lcm(ei, ej)
                    cands.append((tuple(a - b for a, b in zip(lcm, ei)), j, lcm))
                chosen = []
                for k, (mji, j, lcm) in enumerate(cands):
                    if any(
                        mono_divides(o[0], mji) and (o[0] != mji or kk < k)
                        for kk, o in enumerate(cands)
                        if kk != k
                    ):
                        continue
                    chosen.append((mji, j, lcm))
                for mji, j, lcm in chosen:
                    ej = leads[j][1]
                    mij = tuple(a - b for a, b in zip(lcm, ej))
                    s = {}
                    for (gc, gm), c in vi.items():
                        s[(gc, tuple(a + b for a, b in zip(gm, mji)))] = c * inv_i % p
                    for (gc, gm), c in vecs[j].items():
                        mm = (gc, tuple(a + b for a, b in zip(gm, mij)))
                        v = (s.get(mm, 0) - c * invs[j]) % p
                        if v:
                            s[mm] = v
                        else:
                            s.pop(mm, None)
                    quot = [dict() for _ in vecs]
                    rem = _reduce_module(s, by_comp, key, p, quot)
                    if rem:
                        raise ArithmeticError("S-vector failed to reduce; input was not a Groebner basis")
                    syz = {}
                    for l, qd in enumerate(quot):
                        for e, c in qd.items():
                            syz[(l, e)] = (p - c) % p
                    for (l, e), c in (((i, mji), inv_i), ((j, mij), p - invs[j])):
                        v = (syz.get((l, e), 0) + c) % p
                        if v:
                            syz[(l, e)] = v
                        else:
                            syz.pop((l, e), None)
                    new.append(((i, mji), syz))
        new.sort(key=lambda t: (t[0][0], tuple(-a for a in t[0][1])))
        key = _schreyer_key(key, leads)
        target = source
        vecs = [v for _, v in new]
    return Resolution(ring, maps, minimal=False)


# ---------------------------------------------------------------------------
# minimalization


def minimalize(res):
    """Cancel unit entries until every differential has entries in the
    maximal ideal.  Pivots are taken map by map, row-major within a map."""
    ring = res.ring
    p = ring.prime
    maps = [GradedMap(ring, d.source, d.target, d.cols) for d in res.maps]
    k = 0
    while k < len(maps):
        units = maps[k].unit_entries()
        if not units:
            k += 1
            continue
        r, c = units[0]
        _cancel(maps, k, r, c, p)
        k = 0
    while maps and maps[-1].ncols == 0:
        maps.pop()
    return Resolution(ring, maps, minimal=True)


def cancel_pair(res, k, r, c):
    """Cancel the unit entry (r, c) of the differential F_{k+1} -> F_k."""
    maps = [GradedMap(res.ring, d.source, d.target, d.cols) for d in res.maps]
    _cancel(maps, k, r, c, res.ring.prime)
    while maps and maps[-1].ncols == 0:
        maps.pop()
    return Resolution(res.ring, maps, minimal=False)


def _cancel(maps, k, r, c, p):
    d = maps[k]
    u = d.cols[c][r]
    inv = pow(u.coeffs[next(iter(u.coeffs))], -1, p)
    pivot_col = {i: f for i, f in d.cols[c].items() if i != r}
    new_cols = []
    for j, col in enumerate(d.cols):
        if j == c:
            continue
        col = dict(col)
        a = col.pop(r, None)
        if a is not None and pivot_col:
            a = a.scale(inv)
            for i, f in pivot_col.items():
                v = col.get(i)
                w = f * a
                v = -w if v is None else v - w
                if v:
                    col[i] = v
                else:
                    col.pop(i, None)
        new_cols.append({(i if i < r else i - 1): f for i, f in col.items()})
    maps[k] = GradedMap(
        d.ring,
        d.source[:c] + d.source[c + 1:],
        d.target[:r] + d.target[r + 1:],
        new_cols,
    )
    if k + 1 < len(maps):
        e = maps[k + 1]
        cols = [{(i if i < c else i - 1): f for i, f in col.items() if i != c} for col in e.cols]
        maps[k + 1] = GradedMap(e.ring, e.source, e.target[:c] + e.target[c + 1:], cols)
    if k > 0:
        e = maps[k - 1]
        maps[k - 1] = GradedMap(
            e.ring, e.source[:r] + e.source[r + 1:], e.target, e.cols[:r] + e.cols[r + 1:]
        )


# ---------------------------------------------------------------------------
# Betti diagrams


class BettiDiagram:
    """Ranks of the summands R(-j) in homological position i."""

    def __init__(self, table, codim=None):
        self.table = {(int(i), int(j)): int(v) for (i, j), v in dict(table).items() if v}
        self.codim = codim

    @classmethod
    def from_shifts(cls, columns, codim=None):
        table = Counter()
        for i, shifts in enumerate(columns):
            for j in shifts:
                table[(i, j)] += 1
        return cls(table, codim)

    @property
    def length(self):
        return max((i for i, _ in self.table), default=0)

    def column(self, i):
        """Sorted multiset of shifts in column i."""
        out = []
        for (a, j), v in sorted(self.table.items()):
            if a == i:
                out.extend([j] * v)
        return out

    def columns(self):
        return [self.column(i) for i in range(self.length + 1)]

    def totals(self):
        return [len(c) for c in self.columns()]

    def min_shift(self, i):
        col = self.column(i)
        if not col:
            raise ValueError("column %d is empty" % i)
        return col[0]

    def max_shift(self, i):
        col = self.column(i)
        if not col:
            raise ValueError("column %d is empty" % i)
        return col[-1]

    def mins(self, p=None):
        p = self.length if p is None else p
        return [self.min_shift(i) for i in range(1, p + 1)]

    def maxs(self, p=None):
        p = self.length if p is None else p
        return [self.max_shift(i) for i in range(1, p + 1)]

    def strata(self):
        """{(row r = j - i, column i): rank}, the usual printed layout."""
        return {(j - i, i): v for (i, j), v in self.table.items()}

    def dual_twist(self, alpha, length=None):
        """Dualize a length-n diagram and twist by -alpha: column i of the
        result is column n - i of self with shifts j -> alpha - j."""
        n = self.length if length is None else length
        table = {(n - i, alpha - j): v for (i, j), v in self.table.items()}
        return BettiDiagram(table, self.codim)

    def without(self, removals):
        """Copy with the (i, j) entries in ``removals`` decremented once each."""
        table = Counter(self.table)
        for key in removals:
            if table[key] <= 0:
                raise ValueError("cannot remove %s: entry is zero" % (key,))
            table[key] -= 1
        return BettiDiagram(table, self.codim)

    def alternating_sum(self):
        return sum((-1) ** i * v for (i, _), v in self.table.items())

    def hilbert_numerator(self):
        """sum_i (-1)^i sum_j beta_ij t^j as a coefficient list."""
        top = max((j for _, j in self.table), default=0)
        num = [0] * (top + 1)
        for (i, j), v in self.table.items():
            num[j] += (-1) ** i * v
        return _trim(num)

    def __eq__(self, other):
        if not isinstance(other, BettiDiagram):
            return NotImplemented
        return self.table == other.table

    def __le__(self, other):
        return all(v <= other.table.get(k, 0) for k, v in self.table.items())

    def __repr__(self):
        return "BettiDiagram(%s)" % dict(sorted(self.table.items()))

    def to_json(self):
        return {
            "table": [[i, j, v] for (i, j), v in sorted(self.table.items())],
            "totals": self.totals(),
            "codim": self.codim,
        }

    @classmethod
    def from_json(cls, data):
        return cls({(i, j): v for i, j, v in data["table"]}, data.get("codim"))


def betti(res):
    cols = [res.shifts(i) for i in range(res.length + 1)]
    return BettiDiagram.from_shifts(cols)


# ---------------------------------------------------------------------------
# Hilbert series


def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _shift(a, k):
    return [0] * k + list(a)


def _minimal_monomials(monos):
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


def monomial_hilbert_numerator(monos, nvars):
    """Numerator N(t) with HS(R/I) = N(t) / (1 - t)^nvars for a monomial ideal."""
    gens = _minimal_monomials(monos)
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    # base case: pairwise coprime generators
    seen = set()
    coprime = True
    for g in gens:
        s = {i for i, e in enumerate(g) if e}
        if s & seen:
            coprime = False
            break
        seen |= s
    if coprime:
        num = [1]
        for g in gens:
            num = _pmul(num, _padd([1], _shift([-1], sum(g))))
        return num
    counts = Counter(i for g in gens if sum(1 for e in g if e) > 1 for i, e in enumerate(g) if e)
    var = max(sorted(counts), key=lambda i: counts[i])
    exps = sorted(g[var] for g in gens if g[var] and sum(1 for e in g if e) > 1)
    e = exps[len(exps) // 2]
    piv = tuple(e if i == var else 0 for i in range(nvars))
    plus = gens + [piv]
    quot = [tuple(max(a - b, 0) for a, b in zip(g, piv)) for g in gens]
    return _padd(
        monomial_hilbert_numerator(plus, nvars),
        _shift(monomial_hilbert_numerator(quot, nvars), e),
    )


@dataclass
class HilbertData:
    """Hilbert series numerator over (1 - t)^nvars plus derived invariants."""

    numerator: list
    nvars: int
    codim: int
    dimension: int
    degree: int
    reduced_numerator: list = field(default_factory=list)
    unit: bool = False


def hilbert_from_numerator(num, nvars):
    num = _trim(num)
    if num == [0]:
        return HilbertData([0], nvars, nvars + 1, -1, 0, [0], unit=True)
    q = list(num)
    c = 0
    while sum(q) == 0:
        # divide by (1 - t): synthetic division
        out = []
        acc = 0
        for a in q[:-1]:
            acc += a
            out.append(acc)
        q = _trim(out) if out else [0]
        c += 1
    return HilbertData(list(num), nvars, c, nvars - c, sum(q), q)


def hilbert_degree(I):
    """Hilbert numerator, codimension and degree of R/I from its initial ideal."""
    num = monomial_hilbert_numerator(I.lead_monomials(), I.nvars)
    data = hilbert_from_numerator(num, I.nvars)
    if data.unit:
        warnings.warn("unit ideal: degree reported as 0", stacklevel=2)
    return data


def resolution_numerator(res):
    """Alternating shift sum of any (possibly nonminimal) resolution."""
    return betti(res).hilbert_numerator()


def ideal_resolution(gens_or_ideal, minimal=True):
    I = gens_or_ideal if isinstance(gens_or_ideal, Ideal) else Ideal(gens_or_ideal)
    res = free_resolution(I)
    return minimalize(res) if minimal else res

