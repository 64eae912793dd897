"""High precision evaluation of eta, binary theta series, the weight one
Eisenstein series, the normalized theta quotients n and the central value of
the Hecke L-function by two independent routes.

All numerical work happens inside ``mpmath.workdps(P + GUARD)``; every value
is returned as a :class:`PrecComplex` carrying an explicit truncation and
rounding budget.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, log, ceil

import mpmath
from mpmath import mp

from .arith import kronecker, short_vectors
from .quadfield import (QuadElem, QuadForm, class_number, epsilon, reduced_forms,
                        units_count, z_point)

DEFAULT_PREC = 64
GUARD = 10
INT_TOL = mpmath.mpf("1e-20")


class PrecisionError(ArithmeticError):
    """An analytic value could not be certified at the requested precision."""


@dataclass(frozen=True)
class PrecComplex:
    value: object       # mpmath.mpc
    err: object         # mpmath.mpf, absolute error bound

    def __add__(self, o):
        o = _lift(o)
        return PrecComplex(self.value + o.value, self.err + o.err + _ulp(self.value + o.value))

    __radd__ = __add__

    def __sub__(self, o):
        o = _lift(o)
        return PrecComplex(self.value - o.value, self.err + o.err + _ulp(self.value - o.value))

    def __rsub__(self, o):
        return _lift(o) - self

    def __neg__(self):
        return PrecComplex(-self.value, self.err)

    def __mul__(self, o):
        o = _lift(o)
        v = self.value * o.value
        e = abs(self.value) * o.err + abs(o.value) * self.err + self.err * o.err
        return PrecComplex(v, e + _ulp(v))

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _lift(o)
        den = abs(o.value) - o.err
        if den <= 0:
            raise PrecisionError("division by a value indistinguishable from zero")
        v = self.value / o.value
        e = (self.err + abs(v) * o.err) / den
        return PrecComplex(v, e + _ulp(v))

    def __rtruediv__(self, o):
        return _lift(o) / self

    def conj(self):
        return PrecComplex(mpmath.conj(self.value), self.err)

    def __abs__(self):
        return abs(self.value)

    def close_to(self, other, tol):
        other = _lift(other)
        return abs(self.value - other.value) < tol

    def as_dict(self, digits=30):
        return {"re": mpmath.nstr(mpmath.re(self.value), digits),
                "im": mpmath.nstr(mpmath.im(self.value), digits),
                "err": mpmath.nstr(self.err, 3)}

    def __str__(self):
        return f"{mpmath.nstr(self.value, 20)} +/- {mpmath.nstr(self.err, 2)}"


def _ulp(v):
    return (abs(v) + 1) * mpmath.mpf(10) ** (-mp.dps + 1)


def _lift(x):
    if isinstance(x, PrecComplex):
        return x
    if isinstance(x, Fraction):
        x = mpmath.mpf(x.numerator) / x.denominator
    return PrecComplex(mpmath.mpc(x), mpmath.mpf(0))


def _target(P):
    return mpmath.mpf(10) ** (-(P + GUARD))


# -- eta ---------------------------------------------------------------------

def _as_point(tau):
    if isinstance(tau, PrecComplex):
        return tau.value, tau.err
    return mpmath.mpc(tau), mpmath.mpf(0)


def eta_terms(tau, P):
    """Largest exponent M of q included by :func:`eta` for target precision P."""
    y = mpmath.im(_as_point(tau)[0])
    r = mpmath.exp(-2 * mpmath.pi * y)
    # tail of sum (-1)^k q^{k(3k-1)/2} beyond exponent M is < 2 r^(M+1)/(1-r)
    need = mpmath.log(_target(P) * (1 - r) / 2) / mpmath.log(r)
    return max(int(mpmath.ceil(need)), 1)


def eta(tau, P=DEFAULT_PREC):
    """Dedekind eta e^{2 pi i tau/24} prod (1 - q^n) via the pentagonal series."""
    with mp.workdps(P + GUARD + 5):
        t, terr = _as_point(tau)
        if mpmath.im(t) <= 0:
            raise ValueError("tau must lie in the upper half plane")
        if terr:
            raise ValueError("eta needs an exact argument")
        M = eta_terms(t, P)
        q = mpmath.exp(2j * mpmath.pi * t)
        r = abs(q)
        s = mpmath.mpc(1)
        k = 1
        while True:
            e1 = k * (3 * k - 1) // 2
            if e1 > M:
                break
            sign = -1 if k % 2 else 1
            s += sign * q ** e1
            e2 = k * (3 * k + 1) // 2
            if e2 <= M:
                s += sign * q ** e2
            k += 1
        pref = mpmath.exp(2j * mpmath.pi * t / 24)
        tail = 2 * r ** (M + 1) / (1 - r) * abs(pref)
        v = pref * s
        return PrecComplex(+v, tail + _ulp(v) * (k + 2))


# -- theta series of binary forms --------------------------------------------

def _theta_cutoff(form, y, P):
    """Smallest T with the theta tail sum over Q(v) > T below the target."""
    G = form.matrix()
    a, b, c = G[0][0], G[0][1], G[1][1]
    lam = ((a + c) - ((a - c) ** 2 + 4 * b * b) ** 0.5) / 4   # min eigenvalue of Q
    lam = mpmath.mpf(lam) * mpmath.mpf("0.999")
    s = 2 * mpmath.pi * y
    r = mpmath.exp(-s)
    A = 8 / lam
    B = 2
    target = _target(P)

    def bound(T):
        # #{v : Q(v) <= t} <= (2 sqrt(t/lam) + 1)^2 <= A t + B
        return r ** T * ((A * (T + 1) + B) / (1 - r) + A * r / (1 - r) ** 2)

    T = max(1, int(mpmath.ceil(mpmath.log(1 / target) / s)))
    while bound(T) > target:
        T = int(T * 1.25) + 1
    return T, bound(T)


def theta_form(form, tau, P=DEFAULT_PREC):
    """Theta_B(tau) = sum over (m, n) of exp(2 pi i tau (a m^2 + b m n + c n^2))."""
    if form.disc >= 0 or form.a <= 0:
        raise ValueError("form must be positive definite")
    with mp.workdps(P + GUARD + 5):
        t, _ = _as_point(tau)
        y = mpmath.im(t)
        if y <= 0:
            raise ValueError("tau must lie in the upper half plane")
        T, tail = _theta_cutoff(form, y, P)
        counts = {}
        for v in short_vectors(form.matrix(), 2 * T):
            n = form(v[0], v[1])
            counts[n] = counts.get(n, 0) + 1
        q = mpmath.exp(2j * mpmath.pi * t)
        s = mpmath.mpc(1)
        for n in sorted(counts):
            s += counts[n] * q ** n
        return PrecComplex(+s, tail + _ulp(s) * (len(counts) + 2))


def theta_coefficients(form, bound):
    """r_B(n) for 0 <= n <= bound."""
    r = [0] * (bound + 1)
    r[0] = 1
    for v in short_vectors(form.matrix(), 2 * bound):
        r[form(v[0], v[1])] += 1
    return r


# -- Dirichlet L-value and Eisenstein series ---------------------------------

@dataclass(frozen=True)
class PiMultiple:
    """coeff * pi / sqrt(D)."""
    coeff: Fraction
    D: int

    def value(self, P=DEFAULT_PREC):
        with mp.workdps(P + GUARD):
            return PrecComplex(mpmath.mpc(mpmath.mpf(self.coeff.numerator) / self.coeff.denominator
                                          * mpmath.pi / mpmath.sqrt(self.D)),
                               mpmath.mpf(10) ** (-(P + GUARD - 2)))


def dirichlet_L1(D):
    """L(eps, 1) = 2 pi h(-D) / (w sqrt D) for the character of Q(sqrt(-D))."""
    if D <= 3 or D % 4 != 3:
        raise ValueError("|D| must be = 3 mod 4 and larger than 3")
    return PiMultiple(Fraction(2 * class_number(-D), units_count(-D)), D)


def eisenstein_value(D, tau, P=DEFAULT_PREC):
    """E_1(tau, 0) = 2 L(eps, 1) + (4 pi / sqrt D) sum_n (sum_{d | n} eps(d)) q^n."""
    with mp.workdps(P + GUARD + 5):
        t, _ = _as_point(tau)
        y = mpmath.im(t)
        if y <= 0:
            raise ValueError("tau must lie in the upper half plane")
        r = mpmath.exp(-2 * mpmath.pi * y)
        pref = 4 * mpmath.pi / mpmath.sqrt(D)
        target = _target(P)
        M = 1
        while True:
            tail = pref * r ** (M + 1) * ((M + 1) - M * r) / (1 - r) ** 2
            if tail < target:
                break
            M = int(M * 1.3) + 1
        coef = [0] * (M + 1)
        for d in range(1, M + 1):
            e = kronecker(d, D)
            if e:
                for n in range(d, M + 1, d):
                    coef[n] += e
        q = mpmath.exp(2j * mpmath.pi * t)
        s = mpmath.mpc(0)
        qn = mpmath.mpc(1)
        for n in range(1, M + 1):
            qn *= q
            if coef[n]:
                s += coef[n] * qn
        L = dirichlet_L1(D).value(P)
        return 2 * L + PrecComplex(pref * s, tail + _ulp(s) * M)


# -- CM points and normalized theta quotients -------------------------------

def cm_point(ctx, A=None):
    """z_{A Dbar} = (b1 + sqrt N) / (2 a1 |D|) as an mpc at the current precision."""
    a1, b1 = z_point(ctx, A)
    return (b1 + mpmath.sqrt(ctx.N)) / (2 * a1 * ctx.D)


@dataclass(frozen=True)
class NValue:
    raw: PrecComplex
    rounded: int
    residual: object

    def __int__(self):
        return self.rounded


def normalizer(ctx, P=DEFAULT_PREC):
    """eta(z_Dbar) * eta(z_{O_K}) with z_{O_K} = |D| z_Dbar = (b + sqrt N)/2."""
    with mp.workdps(P + GUARD + 5):
        z = cm_point(ctx)
        zo = (ctx.b + mpmath.sqrt(ctx.N)) / 2
        return eta(z, P) * eta(zo, P)


def n_value(A, B, ctx, P=DEFAULT_PREC, tol=INT_TOL):
    """n_{[A],[B],Dbar} = Theta_B(z_{A Dbar}) / (eta(Dbar) eta(O_K) psi(Abar)).

    The quotient must be within ``tol`` of a rational integer; otherwise
    :class:`PrecisionError` is raised instead of rounding.
    """
    if A is not None:
        raise NotImplementedError("only the trivial class A = O_K is supported")
    with mp.workdps(P + GUARD + 5):
        z = cm_point(ctx, A)
        th = theta_form(B, z, P)
        psi_abar = 1          # psi_Dbar(O_K) for the trivial class
        raw = th / (normalizer(ctx, P) * psi_abar)
        k = int(mpmath.nint(mpmath.re(raw.value)))
        res = abs(raw.value - k)
        if res >= tol or raw.err >= tol:
            raise PrecisionError(
                f"n for B={B}, N={ctx.N}, |D|={ctx.D} is not recognizably integral: "
                f"raw={mpmath.nstr(raw.value, 25)} residual={mpmath.nstr(res, 3)}")
        return NValue(raw, k, res)


def period(ctx, P=DEFAULT_PREC):
    """Omega = 2 pi / (w sqrt|D|) * eta(z_Dbar) eta(z_{O_K})."""
    with mp.workdps(P + GUARD + 5):
        w = units_count(-ctx.D)
        return normalizer(ctx, P) * (2 * mpmath.pi / (w * mpmath.sqrt(ctx.D)))


def l_value_formula(ctx, P=DEFAULT_PREC, n_values=None):
    """Central value as Omega * sum_B n, the n recovered exactly as integers.

    Returns ``(L, total)`` where total is the integer sum of the n-values.
    """
    if n_values is None:
        n_values = [n_value(None, B, ctx, P).rounded for B in reduced_forms(-ctx.D)]
    total = sum(n_values)
    with mp.workdps(P + GUARD + 5):
        return period(ctx, P) * total, total


def l_value_theta(ctx, P=DEFAULT_PREC):
    """Central value straight from the theta sum, without integer rounding."""
    with mp.workdps(P + GUARD + 5):
        z = cm_point(ctx)
        s = sum((theta_form(B, z, P) for B in reduced_forms(-ctx.D)), PrecComplex(mpmath.mpc(0), mpmath.mpf(0)))
        w = units_count(-ctx.D)
        return s * (2 * mpmath.pi / (w * mpmath.sqrt(ctx.D)))


# -- the oracle: smoothed Dirichlet series and the root number ---------------

def _character_sums(ctx, P, with_norm_division):
    """1/2 sum' eps(alpha) alpha e^{-c N(alpha)} [/ N(alpha)] over alpha in O_K.

    Here c = 2 pi / sqrt(|N| |D|) and eps reduces modulo the prime D, where
    sqrt N = b; this is the character whose L-series the theta formula
    produces.
    """
    N, D = ctx.N, ctx.D
    absN = -N
    c = 2 * mpmath.pi / mpmath.sqrt(absN * D)
    target = _target(P)
    # elements of norm n: at most 2 d(n) <= 2 n, each of size sqrt n
    M = 2
    while True:
        rho = ((M + 2) / mpmath.mpf(M + 1)) ** 2 * mpmath.exp(-c)
        first = (M + 1) ** 2 * mpmath.exp(-c * (M + 1))
        if rho < 1 and first / (1 - rho) < target:
            tail = first / (1 - rho)
            break
        M = int(M * 1.3) + 2
    sq = mpmath.sqrt(N)
    S = mpmath.mpc(0)
    F = mpmath.mpc(0)
    Y = isqrt(4 * M // absN) + 1
    count = 0
    for y in range(-Y, Y + 1):
        X = isqrt(max(4 * M - absN * y * y, 0)) + 1
        for x in range(-X, X + 1):
            if (x - y) % 2:
                continue
            n = (x * x + absN * y * y) // 4
            if n == 0 or n > M:
                continue
            e = epsilon(ctx, QuadElem(x, y, N), prime="D", strict=False)
            if e == 0:
                continue
            t = e * (x + y * sq) / 2 * mpmath.exp(-c * n)
            F += t
            S += t / n
            count += 1
    err = tail + _ulp(F) * count
    return PrecComplex(S / 2, err), PrecComplex(F / 2, err)


def root_number_numeric(ctx, P=DEFAULT_PREC):
    """w_psi = f_psi(i/sqrt(|N||D|)) / conj(f_psi(i/sqrt(|N||D|)))."""
    with mp.workdps(P + GUARD + 5):
        _, F = _character_sums(ctx, P, False)
        if abs(F.value) < mpmath.mpf(10) ** (-(P // 2)):
            raise PrecisionError("f_psi too small to divide stably")
        return F / F.conj()


def l_value_oracle(ctx, P=DEFAULT_PREC):
    """L(psi, 1) = S + w conj(S) from the functional equation at the symmetric
    point, S = sum_n a_n/n e^{-2 pi n / sqrt(|N||D|)}.

    Returns ``(L, w)``.
    """
    with mp.workdps(P + GUARD + 5):
        S, F = _character_sums(ctx, P, True)
        w = F / F.conj()
        return S + w * S.conj(), w


def norm_generator(ctx):
    """A generator alpha = (x + y sqrt N)/2 of the prime D (sqrt N = b mod it)."""
    N, D = ctx.N, ctx.D
    for y in range(1, isqrt(4 * D) + 1):
        x2 = 4 * D + N * y * y
        if x2 < 0:
            break
        x = isqrt(x2)
        if x * x == x2 and (x - y) % 2 == 0:
            for sx in (x, -x):
                if (sx + y * ctx.b) % D == 0:
                    return QuadElem(sx, y, N)
    raise ValueError("no generator found")


def root_number_xi2(ctx, w, tol=None):
    """Which xi_2 in {+1, -1} makes w = xi_2 (2/|N|) i alpha/|alpha|.

    ``alpha`` generates the prime of norm |D| containing (b - sqrt N)/2 and
    (2/|N|) is the Jacobi symbol.  Returns 0 when neither sign matches.
    """
    with mp.workdps(max(mp.dps, 40)):
        alpha = norm_generator(ctx).to_complex()
        base = kronecker(2, -ctx.N) * 1j * alpha / abs(alpha)
        # the two candidates differ by 2, so a loose tolerance separates them
        tol = tol or mpmath.mpf(10) ** (-12)
        val = w.value if isinstance(w, PrecComplex) else w
        for xi in (1, -1):
            if abs(val - xi * base) < tol:
                return xi
        return 0


# -- Hecke action of principal primes on theta values ------------------------

def theta_action_check(ctx, B, mu, P=DEFAULT_PREC, tol=None, prime="Dbar"):
    """Check Theta_B(z_{pbar Dbar}) = psi(mubar) Theta_B(z_Dbar) for pbar = <mu>.

    ``mu`` has prime norm p not dividing 6|D|; z_{pbar Dbar} = (b' + sqrt N)/(2 p |D|)
    with b' = b mod 2|D|, b' = 3 mod 48 and (b' + sqrt N)/2 in <mu>.
    Returns ``(ok, lhs, rhs)``.
    """
    from .arith import is_prime
    p = mu.norm()
    if not is_prime(p) or (6 * ctx.D) % p == 0:
        raise ValueError("mu must have prime norm prime to 6|D|")
    mubar = mu.conj()
    bp = None
    for cand in range(ctx.b, ctx.b + 2 * 48 * p * ctx.D, 2 * ctx.D):
        if cand % 48 != 3 or (cand * cand - ctx.N) % (4 * p * ctx.D):
            continue
        # (cand + sqrt N)/2 lies in <mu> iff its product with mubar is divisible by p
        prod = QuadElem(cand, 1, ctx.N) * mubar
        if prod.x % p == 0 and prod.y % p == 0:
            bp = cand
            break
    if bp is None:
        raise ValueError("no compatible basis for the given prime")
    with mp.workdps(P + GUARD + 5):
        z = cm_point(ctx)
        zp = (bp + mpmath.sqrt(ctx.N)) / (2 * p * ctx.D)
        lhs = theta_form(B, zp, P)
        e = epsilon(ctx, mubar, prime=prime)
        rhs = theta_form(B, z, P) * (e * mubar.to_complex())
        tol = tol or mpmath.mpf(10) ** (-(P - GUARD))
        scale = max(abs(rhs.value), 1)
        return abs(lhs.value - rhs.value) < tol * scale, lhs, rhs
