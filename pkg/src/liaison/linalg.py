"""Dense linear algebra over GF(p) and lifting of homogeneous module maps."""

import numpy as np

from .ring import Polynomial, monomials_of_degree


def solve_mod(M, b, p):
    """Return one solution x of M x = b over GF(p), or None if inconsistent."""
    M = np.asarray(M, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    m, n = M.shape
    A = np.concatenate([M, b.reshape(-1, 1)], axis=1)
    row = 0
    pivots = []
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(A[row:, col])[0]
        if not len(nz):
            continue
        r = row + nz[0]
        if r != row:
            A[[row, r]] = A[[r, row]]
        A[row] = A[row] * pow(int(A[row, col]), -1, p) % p
        others = np.nonzero(A[:, col])[0]
        others = others[others != row]
        if len(others):
            A[others] = (A[others] - A[others, col][:, None] * A[row]) % p
        pivots.append(col)
        row += 1
    if row < m and np.any(A[row:, -1]):
        return None
    x = np.zeros(n, dtype=np.int64)
    x[pivots] = A[: len(pivots), -1]
    return x


def rank_mod(M, p):
    M = np.asarray(M, dtype=np.int64) % p
    m, n = M.shape
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(M[row:, col])[0]
        if not len(nz):
            continue
        r = row + nz[0]
        if r != row:
            M[[row, r]] = M[[r, row]]
        M[row] = M[row] * pow(int(M[row, col]), -1, p) % p
        below = row + 1 + np.nonzero(M[row + 1:, col])[0]
        if len(below):
            M[below] = (M[below] - M[below, col][:, None] * M[row]) % p
        row += 1
    return row


def lift(A, b, degree):
    """Solve A x = b for a homogeneous vector x.

    ``A`` is a GradedMap, ``b`` a dict ``{row: Polynomial}`` homogeneous of
    internal degree ``degree`` in A's target.  Returns ``{col: Polynomial}``
    or raises ValueError when b is not in the image.
    """
    ring = A.ring
    p = ring.prime
    n = ring.nvars
    unknowns = []
    for c, s in enumerate(A.source):
        for mono in monomials_of_degree(n, degree - s):
            unknowns.append((c, mono))
    eq_index = {}
    for r, s in enumerate(A.target):
        for mono in monomials_of_degree(n, degree - s):
            eq_index[(r, mono)] = len(eq_index)
    for r, f in b.items():
        if f and (not f.is_homogeneous() or f.degree() != degree - A.target[r]):
            raise ValueError("right-hand side has the wrong degree")
    if not unknowns:
        if any(b.values()):
            raise ValueError("vector is not in the image")
        return {}
    M = np.zeros((len(eq_index), len(unknowns)), dtype=np.int64)
    for u, (c, mono) in enumerate(unknowns):
        for r, f in A.cols[c].items():
            for m, v in f.coeffs.items():
                M[eq_index[(r, tuple(a + b_ for a, b_ in zip(m, mono)))], u] += v
    rhs = np.zeros(len(eq_index), dtype=np.int64)
    for r, f in b.items():
        for m, v in f.coeffs.items():
            rhs[eq_index[(r, m)]] = v
    x = solve_mod(M % p, rhs, p)
    if x is None:
        raise ValueError("vector is not in the image")
    out = {}
    for u, (c, mono) in enumerate(unknowns):
        if x[u]:
            out.setdefault(c, {})[mono] = int(x[u])
    return {c: Polynomial(ring, d) for c, d in out.items()}
