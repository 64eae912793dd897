"""Exact integer and rational helpers: symbols, Hermite normal form and
positive-definite short vector enumeration."""

from fractions import Fraction
from math import gcd, isqrt, floor, ceil, sqrt


def kronecker(a, n):
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_square(n):
    """Return the integer square root of n if n is a perfect square, else None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def is_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    d = 17
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_up_to(limit):
    return [p for p in range(2, limit + 1) if is_prime(p)]


# -- Hermite normal form ----------------------------------------------------

def hnf(M):
    """Row-style Hermite normal form of an integer matrix of full column rank.

    Returns ``(H, U)`` with ``H == U @ M`` (as integer matrices), ``U``
    unimodular.  ``H`` is square, upper triangular, has positive pivots and the
    entries above each pivot lie in ``[0, pivot)``.  Zero rows are dropped, so
    ``U`` has as many rows as ``H`` and is completed to a square unimodular
    transform internally.
    """
    rows = [list(map(int, r)) for r in M]
    m = len(rows)
    if m == 0:
        raise ValueError("empty matrix")
    n = len(rows[0])
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    A = [r[:] for r in rows]

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def addmul(dst, src, k):
        # row[dst] += k * row[src]
        if k:
            A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
            U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    r = 0
    for c in range(n):
        if r >= m:
            break
        # Euclid on column c among rows r..m-1
        while True:
            nz = [i for i in range(r, m) if A[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            swap(r, piv)
            done = True
            for i in range(r + 1, m):
                if A[i][c]:
                    addmul(i, r, -(A[i][c] // A[r][c]))
                    if A[i][c]:
                        done = False
            if done:
                break
        if all(A[i][c] == 0 for i in range(r, m)):
            raise ValueError("matrix does not have full column rank")
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            addmul(i, r, -(A[i][c] // A[r][c]))
        r += 1
    if r < n:
        raise ValueError("matrix does not have full column rank")
    return A[:n], U[:n]


def hnf_basis(rows):
    """HNF of the lattice spanned by ``rows`` (the transform is discarded)."""
    return hnf(rows)[0]


def rational_hnf(rows):
    """Canonical (H, d) for the Z-span of rational ``rows``: basis = H / d.

    ``d`` is the least positive integer making all rows integral divided by
    the content of the HNF, so equal lattices yield identical pairs.
    """
    rows = [[Fraction(x) for x in r] for r in rows]
    d = 1
    for r in rows:
        for x in r:
            d = d * x.denominator // gcd(d, x.denominator)
    H = hnf_basis([[int(x * d) for x in r] for r in rows])
    g = 0
    for r in H:
        for x in r:
            g = gcd(g, x)
    g = gcd(g, d)
    return tuple(tuple(x // g for x in r) for r in H), d // g


def det(M):
    """Exact determinant by fraction-free elimination (Bareiss)."""
    A = [[Fraction(x) for x in r] for r in M]
    n = len(A)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        result *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return sign * result


def mat_inv(M):
    """Exact inverse of a square rational matrix."""
    n = len(M)
    A = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [r[n:] for r in A]


def mat_mul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


# -- positive definite enumeration ----------------------------------------

def _ldl(G):
    """Exact decomposition Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2."""
    n = len(G)
    q = [[Fraction(G[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def is_positive_definite(G):
    n = len(G)
    return all(det([row[:k] for row in G[:k]]) > 0 for k in range(1, n + 1))


def short_vectors(G, bound):
    """All nonzero integer vectors v with v^T G v <= bound.

    Fincke-Pohst enumeration with exact rational pivots; candidate ranges come
    from floating bounds widened by one and every partial sum is re-checked
    exactly, so boundary vectors are never misclassified.  Both v and -v are
    returned.
    """
    bound = Fraction(bound)
    n = len(G)
    if not is_positive_definite(G):
        raise ValueError("Gram matrix is not positive definite")
    q = _ldl(G)
    qf = [[float(x) for x in r] for r in q]
    out = []
    x = [0] * n

    def rec(i, remaining):
        # remaining: exact budget left for coordinates i..0
        c = -sum(q[i][j] * x[j] for j in range(i + 1, n))
        cf = float(c)
        rad = sqrt(max(float(remaining) / qf[i][i], 0.0))
        lo, hi = floor(cf - rad) - 1, ceil(cf + rad) + 1
        for k in range(lo, hi + 1):
            t = q[i][i] * (k - c) ** 2
            if t > remaining:
                continue
            x[i] = k
            if i == 0:
                out.append(tuple(x))
            else:
                rec(i - 1, remaining - t)
        x[i] = 0

    if bound >= 0:
        rec(n - 1, bound)
    return [v for v in out if any(v)]


def quad_value(G, v):
    return sum(G[i][j] * v[i] * v[j] for i in range(len(v)) for j in range(len(v)))
