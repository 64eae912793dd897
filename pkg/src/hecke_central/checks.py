"""Property checks shared by the test-suite and ``hecke-central check``.

Each check returns a list of :class:`CheckResult`; nothing here raises on a
failed identity, so callers can report every failure at once.
"""

from dataclasses import dataclass
from fractions import Fraction
import random

import mpmath
from mpmath import mp

from . import analytic
from .analytic import DEFAULT_PREC, GUARD
from .arith import is_prime
from .quadfield import (QuadElem, QuadForm, canonical_ideal_above, class_number,
                        hurwitz, reduced_forms, split_prime_norms, z_point)
from .quatalg import (Quat, QuatLattice, class_set, eichler_mass, embedding_element,
                      expected_bilinear, left_order, siegel_basis, siegel_point,
                      standard_maximal_order)

HURWITZ_TABLE = {3: Fraction(1, 3), 4: Fraction(1, 2), 7: Fraction(1), 8: Fraction(1),
                 11: Fraction(1), 12: Fraction(4, 3), 15: Fraction(2), 16: Fraction(3, 2)}

STRUCTURE = {-7: (1, 1), -11: (2, 2), -163: (14, 8)}


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self):
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}  {self.detail}".rstrip()


def _tol(P):
    return mpmath.mpf(10) ** (-(P - GUARD))


def eta_identities(P=DEFAULT_PREC, count=100, seed=1):
    """eta(tau+1) = e^{pi i/12} eta(tau) and eta(-1/tau) = sqrt(tau/i) eta(tau)."""
    rng = random.Random(seed)
    worst_shift = worst_inv = mpmath.mpf(0)
    with mp.workdps(P + GUARD + 5):
        for _ in range(count):
            tau = mpmath.mpc(rng.uniform(-0.5, 0.5), rng.uniform(0.005, 2.0))
            e = analytic.eta(tau, P).value
            worst_shift = max(worst_shift, abs(analytic.eta(tau + 1, P).value
                                               - mpmath.exp(1j * mpmath.pi / 12) * e))
            worst_inv = max(worst_inv, abs(analytic.eta(-1 / tau, P).value
                                           - mpmath.sqrt(tau / 1j) * e))
    tol = _tol(P)
    return [CheckResult("eta shift", worst_shift < tol, f"max err {mpmath.nstr(worst_shift, 3)}"),
            CheckResult("eta inversion", worst_inv < tol, f"max err {mpmath.nstr(worst_inv, 3)}")]


def theta_inversion(N, D, P=DEFAULT_PREC):
    """Theta_{[c,-b,a]}(-1/(|D| tau)) = sqrt|D| (-i tau) Theta_{[a,b,c]}(tau), tau = z_Dbar mod 1."""
    ctx = canonical_ideal_above(N, D)
    worst = mpmath.mpf(0)
    with mp.workdps(P + GUARD + 5):
        z = analytic.cm_point(ctx)
        tau = z - mpmath.floor(mpmath.re(z))
        for B in reduced_forms(-D):
            lhs = analytic.theta_form(QuadForm(B.c, -B.b, B.a), -1 / (D * tau), P).value
            rhs = analytic.theta_form(B, tau, P).value * (mpmath.sqrt(D) * (-1j) * tau)
            worst = max(worst, abs(lhs - rhs))
    return CheckResult(f"theta inversion N={N} |D|={D}", worst < _tol(P), f"max err {mpmath.nstr(worst, 3)}")


def theta_decomposition(N, D, P=DEFAULT_PREC):
    """(w sqrt|D| / 4 pi) E_1(z) = sum_B Theta_B(z) at z = z_Dbar."""
    ctx = canonical_ideal_above(N, D)
    with mp.workdps(P + GUARD + 5):
        z = analytic.cm_point(ctx)
        w = 2
        lhs = analytic.eisenstein_value(D, z, P).value * w * mpmath.sqrt(D) / (4 * mpmath.pi)
        rhs = sum(analytic.theta_form(B, z, P).value for B in reduced_forms(-D))
        err = abs(lhs - rhs)
    return CheckResult(f"theta decomposition N={N} |D|={D}", err < _tol(P), f"err {mpmath.nstr(err, 3)}")


def principal_primes(N, D, count=3):
    """Elements mu = (x + y sqrt N)/2 of smallest prime norm prime to 6|D|."""
    cands = []
    for y in range(1, 8):
        for x in range(-60, 61):
            if (x - y) % 2:
                continue
            mu = QuadElem(x, y, N)
            p = mu.norm()
            if is_prime(p) and (6 * D) % p:
                cands.append((p, x, mu))
    cands.sort(key=lambda t: (t[0], t[1]))
    return [mu for _, _, mu in cands[:count]]


def theta_action(N, D, P=DEFAULT_PREC, count=3):
    ctx = canonical_ideal_above(N, D)
    out = []
    B = reduced_forms(-D)[-1]
    for mu in principal_primes(N, D, count):
        ok, lhs, rhs = analytic.theta_action_check(ctx, B, mu, P)
        out.append(CheckResult(f"theta action N={N} |D|={D} mu=({mu.x}+{mu.y}sqrtN)/2", ok,
                               f"|lhs-rhs| = {mpmath.nstr(abs(lhs.value - rhs.value), 3)}"))
    return out


STANDARD_J = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]


def siegel_points(N, D):
    """Exact Siegel point invariants and reconstruction for every form of disc -|D|."""
    ctx = canonical_ideal_above(N, D)
    a1, b1 = z_point(ctx)
    v = embedding_element(N, D)
    u = Quat.make(N, 0, 0, -1, 0)
    bad = []
    for B in reduced_forms(-D):
        basis = siegel_basis(N, D, a1, b1, B, v)
        I = QuatLattice.from_quats(basis)
        sp = siegel_point(I, u, basis)
        checks = sp.check()
        checks["Ps = B_I"] = [list(r) for r in sp.Ps] == expected_bilinear(N, D, a1, b1, B)
        checks["J standard"] = [list(r) for r in sp.J] == STANDARD_J
        failed = [k for k, ok in checks.items() if not ok]
        if failed:
            bad.append(f"{B}: {failed}")
    return CheckResult(f"Siegel points N={N} |D|={D}", not bad, "; ".join(bad))


def random_quat(N, rng, size=3):
    while True:
        q = Quat.make(N, *[Fraction(rng.randint(-size, size), rng.choice((1, 2))) for _ in range(4)])
        if q.norm() != 0:
            return q


def lattice_invariants(N, count=50, seed=7):
    """left_order(I alpha) = left_order(I) and stepwise canonical products agree."""
    rng = random.Random(seed)
    O = standard_maximal_order(N)
    bad = 0
    for _ in range(count):
        a, b = random_quat(N, rng), random_quat(N, rng)
        I = O * a
        if left_order(I) != O or left_order(I * b) != O:
            bad += 1
        if (O * a) * b != O * (a * b):
            bad += 1
    return CheckResult(f"lattice invariants N={N}", bad == 0, f"{count} random ideals, {bad} failures")


def structure(N):
    cs = class_set(standard_maximal_order(N))
    h, t = STRUCTURE[N]
    sizes = sorted(len(g) for g in cs.types)
    ok = (cs.h, cs.t) == (h, t) and cs.mass() == eichler_mass(N)
    detail = f"h={cs.h} t={cs.t} mass={cs.mass()} type sizes={sizes}"
    if N == -163:
        ok = ok and sizes == [1, 1] + [2] * 6
    return CheckResult(f"class set N={N}", ok, detail)


def hurwitz_table():
    got = {d: hurwitz(d) for d in HURWITZ_TABLE}
    return CheckResult("Hurwitz table", got == HURWITZ_TABLE,
                       ", ".join(f"H({d})={v}" for d, v in got.items()))


def precision_stability(N, D, P=DEFAULT_PREC):
    ctx = canonical_ideal_above(N, D)
    lo = [analytic.n_value(None, B, ctx, P).rounded for B in reduced_forms(-D)]
    hi = [analytic.n_value(None, B, ctx, 2 * P).rounded for B in reduced_forms(-D)]
    return CheckResult(f"precision doubling N={N} |D|={D}", lo == hi, f"{lo}")


def property_suite(P=DEFAULT_PREC, quick=False):
    """Run the property checks; ``quick`` trims the sampled (N, D) pairs."""
    pairs = [(-7, 11), (-11, 23), (-7, 71)] if quick else \
        [(-7, 11), (-7, 23), (-7, 71), (-11, 23), (-11, 47), (-163, 151), (-163, 167)]
    results = []
    results += eta_identities(P, 20 if quick else 100)
    for N, D in pairs:
        results.append(theta_inversion(N, D, P))
        results.append(theta_decomposition(N, D, P))
        results += theta_action(N, D, P)
        results.append(siegel_points(N, D))
        results.append(precision_stability(N, D, P))
    for N in (-7, -11) if quick else (-7, -11, -163):
        results.append(lattice_invariants(N, 10 if quick else 50))
        results.append(structure(N))
    results.append(hurwitz_table())
    return results
