import mpmath
import pytest

from hecke_central import analytic
from hecke_central.checks import principal_primes
from hecke_central.quadfield import QuadElem, QuadForm, canonical_ideal_above, reduced_forms


def test_eta_matches_mpmath_product():
    tau = mpmath.mpc("0.1", "0.9")
    with mpmath.workdps(40):
        q = mpmath.exp(2j * mpmath.pi * tau)
        ref = mpmath.exp(2j * mpmath.pi * tau / 24) * mpmath.qp(q)
        got = analytic.eta(tau, 30)
        assert abs(got.value - ref) < mpmath.mpf(10) ** -25


def test_eta_inversion():
    tau = mpmath.mpc("0.2", "1.3")
    with mpmath.workdps(60):
        a = analytic.eta(-1 / tau, 50).value
        b = mpmath.sqrt(tau / 1j) * analytic.eta(tau, 50).value
        assert abs(a - b) < mpmath.mpf(10) ** -40


def test_n_values_are_integers():
    ctx = canonical_ideal_above(-7, 23)
    got = [analytic.n_value(None, f, ctx).rounded for f in reduced_forms(-23)]
    assert got == [1, -1, -1]


def test_integer_residual_small():
    ctx = canonical_ideal_above(-11, 23)
    nv = analytic.n_value(None, QuadForm(1, 1, 6), ctx)
    assert nv.residual < 1e-20


def test_formula_matches_oracle():
    ctx = canonical_ideal_above(-7, 11)
    L, total = analytic.l_value_formula(ctx, 64)
    Lo, w = analytic.l_value_oracle(ctx, 64)
    assert total == -1
    assert abs(L.value - Lo.value) < mpmath.mpf(10) ** -32
    assert abs(abs(w.value) - 1) < mpmath.mpf(10) ** -30


def test_root_number_is_complex_unit():
    ctx = canonical_ideal_above(-7, 11)
    w = analytic.root_number_numeric(ctx, 40)
    assert abs(w.value - mpmath.mpc("-0.79772", "0.60302")) < 1e-4
    assert analytic.root_number_xi2(ctx, w) in (1, -1)


def test_theta_action_principal_primes():
    ctx = canonical_ideal_above(-7, 11)
    B = reduced_forms(-11)[-1]
    for mu in principal_primes(-7, 11, 2):
        ok, lhs, rhs = analytic.theta_action_check(ctx, B, mu, 40)
        assert ok, (mu, lhs, rhs)


def test_eta_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        analytic.eta(mpmath.mpc(0, -1), 30)
