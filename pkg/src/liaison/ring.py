"""Homogeneous polynomial arithmetic over a prime field GF(p).

Monomials are dense exponent tuples.  A polynomial stores its terms in a
dict ``{exponent: coefficient}``; the sorted term list is derived on demand
from the ring's monomial order.
"""

from functools import lru_cache

DEFAULT_PRIME = 32003

# Field width used to turn an exponent tuple into an integer sort key.
# Every exponent must stay below this bound.
_KEY_BASE = 1 << 16

LT, EQ, GT = -1, 0, 1


def is_prime(p):
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


def _grevlex_key(exp):
    key = sum(exp)
    for e in reversed(exp):
        key = key * _KEY_BASE + (_KEY_BASE - 1 - e)
    return key


class MonomialOrder:
    """Graded reverse lexicographic order, or a two-block elimination order.

    ``MonomialOrder(n)`` is grevlex on ``n`` variables with x0 > x1 > ... .
    ``MonomialOrder(n, block=k)`` compares the first ``k`` exponents
    (grevlex) before the remaining ones (grevlex); any monomial involving
    the first block is larger than every monomial free of it.
    """

    def __init__(self, nvars, block=None):
        if block is not None and not 0 < block < nvars:
            raise ValueError("block size must lie strictly between 0 and nvars")
        self.nvars = nvars
        self.block = block
        if block is None:
            self.key = lru_cache(maxsize=None)(_grevlex_key)
        else:
            shift = _KEY_BASE ** (nvars - block + 1)

            def key(exp):
                return _grevlex_key(exp[:block]) * shift + _grevlex_key(exp[block:])

            self.key = lru_cache(maxsize=None)(key)

    @property
    def kind(self):
        return "grevlex" if self.block is None else "elimination-block(%d)" % self.block

    def cmp(self, a, b):
        return monomial_cmp(a, b, self)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.nvars == other.nvars
            and self.block == other.block
        )

    def __hash__(self):
        return hash((self.nvars, self.block))

    def __repr__(self):
        return "MonomialOrder(%d, %s)" % (self.nvars, self.kind)


def monomial_cmp(a, b, order):
    """Return LT, EQ or GT comparing exponent tuples ``a`` and ``b``."""
    if len(a) != order.nvars or len(b) != order.nvars:
        raise ValueError("monomial length does not match the order's variable count")
    ka, kb = order.key(tuple(a)), order.key(tuple(b))
    return (ka > kb) - (ka < kb)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    """True if monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def monomials_of_degree(nvars, degree):
    """All exponent tuples of the given total degree (lexicographic)."""
    return _monomials_of_degree(nvars, degree)


@lru_cache(maxsize=None)
def _monomials_of_degree(nvars, degree):
    if degree < 0:
        return ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


class Ring:
    """The polynomial ring GF(p)[x0, ..., x_{n-1}] with a fixed monomial order."""

    def __init__(self, nvars, prime=DEFAULT_PRIME, order=None, names=None):
        if not is_prime(prime):
            raise ValueError("%d is not prime" % prime)
        if order is None:
            order = MonomialOrder(nvars)
        if order.nvars != nvars:
            raise ValueError("order has %d variables, ring has %d" % (order.nvars, nvars))
        self.nvars = nvars
        self.prime = prime
        self.order = order
        self.names = tuple(names) if names else tuple("x%d" % i for i in range(nvars))
        self._zero_exp = (0,) * nvars

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.nvars == other.nvars
            and self.prime == other.prime
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.nvars, self.prime, self.order))

    def __repr__(self):
        return "Ring(GF(%d)[%s], %s)" % (self.prime, ",".join(self.names), self.order.kind)

    def with_order(self, order):
        return Ring(self.nvars, self.prime, order, self.names)

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {self._zero_exp: 1})

    def constant(self, c):
        c %= self.prime
        return Polynomial(self, {self._zero_exp: c} if c else {})

    def var(self, i):
        exp = [0] * self.nvars
        exp[i] = 1
        return Polynomial(self, {tuple(exp): 1})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exp, coeff=1):
        coeff %= self.prime
        return Polynomial(self, {tuple(exp): coeff} if coeff else {})

    def from_dict(self, coeffs):
        p = self.prime
        clean = {}
        for m, c in coeffs.items():
            c %= p
            if c:
                clean[tuple(m)] = c
        return Polynomial(self, clean)

    def parse(self, text):
        from .cli import parse_polynomial

        return parse_polynomial(text, self)

    def convert(self, f):
        """Re-home ``f`` (same variables and prime) into this ring."""
        if f.ring.nvars != self.nvars or f.ring.prime != self.prime:
            raise ValueError("cannot convert between rings of different shape")
        return Polynomial(self, f.coeffs)


class Polynomial:
    """An element of a :class:`Ring`.  Treat instances as immutable."""

    __slots__ = ("ring", "coeffs", "_terms", "_lm")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = coeffs
        self._terms = None
        self._lm = None

    # -- structure ---------------------------------------------------------

    @property
    def terms(self):
        """Terms ``(exponent, coefficient)`` sorted descending in the ring order."""
        if self._terms is None:
            key = self.ring.order.key
            self._terms = tuple(
                sorted(self.coeffs.items(), key=lambda t: key(t[0]), reverse=True)
            )
        return self._terms

    @property
    def lm(self):
        if self._lm is None:
            if not self.coeffs:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.coeffs, key=self.ring.order.key)
        return self._lm

    @property
    def lc(self):
        return self.coeffs[self.lm]

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def is_constant(self):
        return all(not any(m) for m in self.coeffs)

    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self.coeffs:
            return None
        return max(sum(m) for m in self.coeffs)

    def is_homogeneous(self):
        degs = {sum(m) for m in self.coeffs}
        return len(degs) <= 1

    def monic(self):
        if not self.coeffs:
            return self
        return self.scale(pow(self.lc, -1, self.ring.prime))

    def support(self):
        """Set of variable indices occurring in some term."""
        return {i for m in self.coeffs for i, e in enumerate(m) if e}

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if self.ring.nvars != other.ring.nvars or self.ring.prime != other.ring.prime:
            raise ValueError("polynomials live in different rings")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.prime
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.prime
        return Polynomial(self.ring, {m: p - c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        p = self.ring.prime
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: v * c % p for m, v in self.coeffs.items()})

    def mul_term(self, exp, c=1):
        """Multiply by the term ``c * x^exp``."""
        p = self.ring.prime
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(m, exp)): v * c % p for m, v in self.coeffs.items()},
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return poly_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.nvars == other.ring.nvars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        return format_polynomial(self)

    __str__ = __repr__


def poly_mul(f, g):
    """Exact product of two polynomials of the same ring."""
    f._check(g)
    p = f.ring.prime
    if len(f.coeffs) < len(g.coeffs):
        f, g = g, f
    out = {}
    fitems = list(f.coeffs.items())
    for mg, cg in g.coeffs.items():
        for mf, cf in fitems:
            m = tuple(a + b for a, b in zip(mf, mg))
            out[m] = (out.get(m, 0) + cf * cg) % p
    return Polynomial(f.ring, {m: c for m, c in out.items() if c})


def format_polynomial(f):
    if not f.coeffs:
        return "0"
    p = f.ring.prime
    names = f.ring.names
    pieces = []
    for m, c in f.terms:
        neg = c > p // 2
        mag = p - c if neg else c
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append("%s^%d" % (name, e))
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "%d*%s" % (mag, "*".join(factors))
        if not pieces:
            pieces.append("-" + body if neg else body)
        else:
            pieces.append(("- " if neg else "+ ") + body)
    return " ".join(pieces)


def normal_form(f, G, order=None):
    """Remainder of ``f`` on division by the list ``G``.

    Divisors are tried in list order; the result has no term divisible by
    the leading monomial of any member of ``G``.
    """
    ring = f.ring
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
    for g in G:
        f._check(g)
        if not g:
            raise ValueError("divisor list contains the zero polynomial")
    key = ring.order.key
    divisors = []
    for g in G:
        lm = max(g.coeffs, key=key)
        divisors.append((lm, pow(g.coeffs[lm], -1, ring.prime), g.coeffs))
    rem = reduce_dict(f.coeffs, divisors, key, ring.prime)
    return Polynomial(f.ring, rem)


class Packer:
    """Packs exponent tuples into integers, one guarded bit field per variable.

    Monomial multiplication becomes integer addition; divisibility is a
    borrow test on the guard bits.
    """

    WIDTH = 12

    def __init__(self, nvars):
        self.nvars = nvars
        w = self.WIDTH
        self.offsets = [w * i for i in range(nvars)]
        self.mask = (1 << (w - 1)) - 1
        self.guard = sum(1 << (w * i + w - 1) for i in range(nvars))

    def pack(self, exp):
        out = 0
        for e, off in zip(exp, self.offsets):
            if e > self.mask:
                raise OverflowError("exponent %d too large to pack" % e)
            out |= e << off
        return out

    def unpack(self, m):
        mask = self.mask
        return tuple((m >> off) & mask for off in self.offsets)

    def divides(self, a, b):
        g = self.guard
        return ((b | g) - a) & g == g


@lru_cache(maxsize=64)
def packer(nvars):
    return Packer(nvars)


@lru_cache(maxsize=64)
def packed_key(order):
    pk = packer(order.nvars)
    key = order.key

    @lru_cache(maxsize=None)
    def k(m):
        return key(pk.unpack(m))

    return k


def reduce_packed(f, divisors, key, p, guard, quotients=None):
    """Fully reduce ``f`` ({packed monomial: coeff}) by ``divisors``.

    ``divisors`` holds ``(lead, inverse_lead_coeff, coeff_dict)`` with packed
    monomials.  Quotient terms go to ``quotients[i]`` when given.
    """
    import heapq

    f = dict(f)
    heap = [(-key(m), m) for m in f]
    heapq.heapify(heap)
    rem = {}
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        _, m = pop(heap)
        c = f.pop(m, 0)
        if not c:
            continue
        mg = m | guard
        for idx, (lm, inv, g, *_) in enumerate(divisors):
            if (mg - lm) & guard == guard:
                q = c * inv % p
                shift = m - lm
                if quotients is not None:
                    qd = quotients[idx]
                    qd[shift] = (qd.get(shift, 0) + q) % p
                for gm, gc in g.items():
                    if gm == lm:
                        continue
                    mm = gm + shift
                    old = f.get(mm)
                    if old is None:
                        v = (-q * gc) % p
                        if v:
                            f[mm] = v
                            push(heap, (-key(mm), mm))
                    else:
                        v = (old - q * gc) % p
                        if v:
                            f[mm] = v
                        else:
                            del f[mm]
                break
        else:
            rem[m] = c
    return rem


def reduce_dict(f, divisors, key, p, quotients=None, order=None):
    """Tuple-monomial front end to :func:`reduce_packed`.

    ``divisors`` holds ``(lead_monomial, inverse_lead_coeff, coeff_dict)``;
    ``key`` is the order's key on exponent tuples.
    """
    sample = next(iter(f), None)
    if sample is None:
        return {}
    pk = packer(len(sample))
    pack = pk.pack

    @lru_cache(maxsize=None)
    def pkey(m):
        return key(pk.unpack(m))

    pf = {pack(m): c for m, c in f.items()}
    pdiv = [(pack(lm), inv, {pack(m): c for m, c in g.items()}) for lm, inv, g in divisors]
    pq = [dict() for _ in divisors] if quotients is not None else None
    rem = reduce_packed(pf, pdiv, pkey, p, pk.guard, pq)
    if quotients is not None:
        for qd, pd in zip(quotients, pq):
            for m, c in pd.items():
                e = pk.unpack(m)
                qd[e] = (qd.get(e, 0) + c) % p
    unpack = pk.unpack
    return {unpack(m): c for m, c in rem.items()}
