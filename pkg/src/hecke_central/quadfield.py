"""Imaginary quadratic orders: binary forms, ideals, class numbers, Hurwitz
class numbers, the quadratic character attached to a split prime and the
Hecke character it induces on principal ideals."""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .arith import is_prime, is_square, kronecker

# class number one fields Q(sqrt N) with N = 1 mod 4, N != -3
CLASS_NUMBER_ONE = (-7, -11, -19, -43, -67, -163)


def is_discriminant(d):
    return d % 4 in (0, 1)


@dataclass(frozen=True, order=True)
class QuadForm:
    """Positive definite binary form a x^2 + b xy + c y^2."""
    a: int
    b: int
    c: int

    @property
    def disc(self):
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self):
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self):
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def conjugate(self):
        return QuadForm(self.a, -self.b, self.c)

    def matrix(self):
        """Even Gram matrix [[2a, b], [b, 2c]]."""
        return [[2 * self.a, self.b], [self.b, 2 * self.c]]

    def __call__(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __str__(self):
        return f"[{self.a},{self.b},{self.c}]"

    @classmethod
    def parse(cls, text):
        a, b, c = (int(t) for t in text.strip().strip("[]").split(","))
        return cls(a, b, c)


@dataclass(frozen=True)
class QuadIdeal:
    """Primitive ideal <a, (b + sqrt(disc))/2> of the maximal order."""
    a: int
    b: int
    disc: int

    def __post_init__(self):
        if self.a <= 0 or (self.b * self.b - self.disc) % (4 * self.a):
            raise ValueError(f"<{self.a}, ({self.b}+sqrt({self.disc}))/2> is not an ideal")

    def form(self):
        return QuadForm(self.a, self.b, (self.b * self.b - self.disc) // (4 * self.a))

    @classmethod
    def from_form(cls, f):
        return cls(f.a, f.b, f.disc)


@dataclass(frozen=True)
class QuadElem:
    """(x + y sqrt(disc)) / 2 in the maximal order of discriminant ``disc``."""
    x: int
    y: int
    disc: int

    def __post_init__(self):
        if (self.x - self.y * self.disc) % 2:
            raise ValueError("not integral")

    def norm(self):
        return (self.x * self.x - self.disc * self.y * self.y) // 4

    def conj(self):
        return QuadElem(self.x, -self.y, self.disc)

    def __neg__(self):
        return QuadElem(-self.x, -self.y, self.disc)

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadElem(self.x * other, self.y * other, self.disc)
        x = (self.x * other.x + self.disc * self.y * other.y) // 2
        y = (self.x * other.y + self.y * other.x) // 2
        return QuadElem(x, y, self.disc)

    __rmul__ = __mul__

    def to_complex(self):
        import mpmath
        return (self.x + self.y * mpmath.sqrt(self.disc)) / 2


# -- reduction ---------------------------------------------------------------

def reduce_form(f):
    """Reduce a primitive positive definite form.

    Returns the reduced form and the 2x2 unimodular matrix M with
    f(M (x, y)^T) equal to the reduced form.
    """
    if f.disc >= 0 or f.a <= 0:
        raise ValueError("form must be positive definite")
    if not f.is_primitive():
        raise ValueError(f"form {f} is not primitive")
    a, b, c = f.a, f.b, f.c
    M = [[1, 0], [0, 1]]
    while True:
        # normalize b into (-a, a]
        if not (-a < b <= a):
            k = (a - b) // (2 * a)
            # x -> x + k y
            b, c = b + 2 * a * k, a * k * k + b * k + c
            M = [[M[0][0], M[0][0] * k + M[0][1]], [M[1][0], M[1][0] * k + M[1][1]]]
            continue
        if a > c or (a == c and b < 0):
            # (x, y) -> (-y, x)
            a, b, c = c, -b, a
            M = [[M[0][1], -M[0][0]], [M[1][1], -M[1][0]]]
            continue
        break
    return QuadForm(a, b, c), M


def transform_form(f, M):
    """The form (x, y) -> f(M (x, y)^T)."""
    (p, q), (r, s) = M
    a = f(p, r)
    c = f(q, s)
    b = 2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s
    return QuadForm(a, b, c)


def reduced_forms(disc):
    """Reduced primitive forms of discriminant ``disc``, sorted by (a, b)."""
    if disc >= 0 or not is_discriminant(disc):
        raise ValueError(f"{disc} is not a negative discriminant")
    out = []
    amax = isqrt(-disc // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            f = QuadForm(a, b, c)
            if c >= a and f.is_reduced() and f.is_primitive():
                out.append(f)
    return sorted(out, key=lambda f: (f.a, f.b))


def class_number(disc):
    return len(reduced_forms(disc))


def unit_factor(disc):
    """Half the number of units of the order of discriminant ``disc``."""
    return {-3: 3, -4: 2}.get(disc, 1)


def units_count(disc):
    return 2 * unit_factor(disc)


def hurwitz(n):
    """Hurwitz class number H(n) = sum over d f^2 = -n of h(d)/u(d)."""
    if n <= 0:
        raise ValueError("n must be positive")
    if not is_discriminant(-n):
        return Fraction(0)
    total = Fraction(0)
    f = 1
    while f * f <= n:
        if n % (f * f) == 0 and is_discriminant(-n // (f * f)):
            d = -n // (f * f)
            total += Fraction(class_number(d), unit_factor(d))
        f += 1
    return total


def conductor(disc):
    """Conductor of the order of discriminant ``disc``."""
    f = 1
    k = 2
    while k * k <= abs(disc):
        if disc % (k * k) == 0 and is_discriminant(disc // (k * k)):
            f = k
        k += 1
    return f


def prime_behaviour(p, disc):
    """'split', 'inert', 'ramified' or 'conductor' for a prime p in the order of
    discriminant ``disc``."""
    f = conductor(disc)
    if f % p == 0:
        return "conductor"
    d0 = disc // (f * f)
    if d0 % p == 0:
        return "ramified"
    if p == 2:
        return "split" if d0 % 8 == 1 else "inert"
    return "split" if kronecker(d0, p) == 1 else "inert"


def hurwitz_mod(p, n):
    """Modified Hurwitz number H_p(n) counting embeddings prime to p."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    if not is_discriminant(-n):
        return Fraction(0)
    kind = prime_behaviour(p, -n)
    if kind == "split":
        return Fraction(0)
    if kind == "inert":
        return hurwitz(n)
    if kind == "ramified":
        return hurwitz(n) / 2
    return hurwitz_mod(p, n // (p * p))


# -- the split prime and its character --------------------------------------

def split_prime_norms(N, limit):
    """Primes |D| <= limit, |D| = 3 mod 4, split in Q(sqrt N)."""
    if N >= 0 or N % 4 != 1 or N == -3 or not is_prime(-N):
        raise ValueError("N must be the negative of a prime, N = 1 mod 4, N != -3")
    return [p for p in range(7, limit + 1)
            if p % 4 == 3 and is_prime(p) and kronecker(N, p) == 1]


@dataclass(frozen=True)
class HeckeCharCtx:
    """The prime Dbar = <|D|, (b + sqrt N)/2> with b = 3 mod 48.

    ``b`` also fixes the eta argument (b + sqrt N)/2 of O_K.  The conjugate
    prime D contains (b - sqrt N)/2; modulo D one has sqrt N = b, modulo Dbar
    sqrt N = -b.
    """
    N: int
    D: int          # |D|
    b: int

    @property
    def units_L(self):
        return units_count(-self.D)

    def dbar_ideal(self):
        return QuadIdeal(self.D, self.b, self.N)

    def d_ideal(self):
        return QuadIdeal(self.D, -self.b, self.N)

    def conjugate(self):
        """Context for the other prime above |D| (its own canonical b)."""
        return canonical_ideal_above(self.N, self.D, conjugate=not self._is_default())

    def _is_default(self):
        return canonical_ideal_above(self.N, self.D).b == self.b


def canonical_ideal_above(N, D, conjugate=False):
    """Smallest positive b with b = 3 mod 48 and b^2 = N mod 4|D|.

    With ``conjugate`` the other square root of N modulo |D| is used, which
    swaps the roles of the two primes above |D|.
    """
    if D <= 3 or D % 4 != 3 or not is_prime(D) or kronecker(N, D) != 1:
        raise ValueError(f"|D|={D} is not a split prime = 3 mod 4 for N={N}")
    mod = 48 * D
    sols = [b for b in range(3, mod, 48) if (b * b - N) % (4 * D) == 0]
    assert len(sols) == 2, sols
    if conjugate:
        return HeckeCharCtx(N, D, sols[1])
    return HeckeCharCtx(N, D, sols[0])


def residue(ctx, alpha, prime="Dbar"):
    """alpha mod the chosen prime above |D|, as an integer mod |D|."""
    s = -ctx.b if prime == "Dbar" else ctx.b
    return (alpha.x + alpha.y * s) * pow(2, -1, ctx.D) % ctx.D


def epsilon(ctx, alpha, prime="Dbar", strict=True):
    """Quadratic character of (O_K / prime)^x at alpha.

    ``prime`` selects Dbar (the ideal containing (b + sqrt N)/2) or its
    conjugate D.  Elements of the prime raise ValueError unless ``strict`` is
    false, in which case 0 is returned.
    """
    r = residue(ctx, alpha, prime)
    if r == 0:
        if strict:
            raise ValueError(f"{alpha} lies in the prime {prime}")
        return 0
    return kronecker(r, ctx.D)


def psi_principal(ctx, alpha, prime="Dbar"):
    """Hecke character value eps(alpha) * alpha on the principal ideal <alpha>."""
    return alpha * epsilon(ctx, alpha, prime)


def z_point(ctx, A=None):
    """Exact data (a1, b1) of the CM point z = (b1 + sqrt N)/(2 a1 |D|) for A*Dbar.

    Only the trivial class A = O_K (a1 = 1, b1 = b) arises for class number
    one, but any ideal <a1, (b1 + sqrt N)/2> prime to 6|D| with a compatible
    b1 is accepted.
    """
    if A is None:
        return 1, ctx.b
    a1 = A.a
    if gcd(a1, 6 * ctx.D) != 1:
        raise ValueError("A must be prime to 6|D|")
    mod = 2 * ctx.D
    for b1 in range(ctx.b % mod, 48 * a1 * ctx.D * 2 + mod, mod):
        if (b1 * b1 - ctx.N) % (4 * a1 * ctx.D) == 0 and (b1 - A.b) % (2 * a1) == 0 \
                and b1 % 48 == 3:
            return a1, b1
    raise ValueError("incompatible ideals")


def principal_generator(N, ideal):
    """A generator (x + y sqrt N)/2 of a principal ideal of prime norm, x > 0
    (or y > 0 when x = 0)."""
    p = ideal.a
    y = 0
    while 4 * p >= -N * y * y:
        x2 = 4 * p + N * y * y
        x = is_square(x2)
        if x is not None and (x - y) % 2 == 0:
            for sx in (x, -x):
                for sy in (y, -y):
                    el = QuadElem(sx, sy, N)
                    # membership in <p, (b + sqrt N)/2>: el = m p + n (b + sqrt N)/2
                    n = sy
                    if (sx - n * ideal.b) % (2 * p) == 0 and el.norm() == p:
                        if sx > 0 or (sx == 0 and sy > 0):
                            return el
        y += 1
    raise ValueError("ideal is not principal")


def form_to_string(f):
    return str(f)
