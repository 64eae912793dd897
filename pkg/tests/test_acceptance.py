"""Acceptance criteria 1-9.  Each test records a PASS/FAIL line that the
terminal summary prints under "acceptance criteria"."""

import time

import mpmath
import pytest

from hecke_central import analytic
from hecke_central.central import central_value, cross_d_consistency, nonvanishing_certificate
from hecke_central.checks import STRUCTURE, hurwitz_table, property_suite, structure
from hecke_central.golden import compare, load_fixture
from hecke_central.quadfield import canonical_ideal_above

PREC = {-7: 64, -11: 64, -163: 80}
LIMIT = {-7: 60, -11: 60, -163: 600}


def _table_d(N):
    return sorted({r["D"] for r in load_fixture(N)["rows"]})


@pytest.fixture(scope="module")
def comparisons():
    out = {}
    for N in (-7, -11, -163):
        t0 = time.time()
        c = compare(N, PREC[N])
        out[N] = (c, time.time() - t0)
    return out


def _table_verdict(c, seconds, N, allowed):
    ns = {row.n for _, row, _ in c.rows}
    ok = c.ok and seconds < LIMIT[N] and c.max_residual() < 1e-20 and ns <= allowed
    detail = (f"N={N}: {len(c.rows)} rows, signs {c.signs}, max residual {c.max_residual():.1e}, "
              f"{seconds:.1f}s (limit {LIMIT[N]}s)")
    if c.problems:
        detail += f", problems {c.problems}"
    return ok, detail


def test_criterion_1_table_n7(comparisons, record):
    c, sec = comparisons[-7]
    ok, detail = _table_verdict(c, sec, -7, {1, -1})
    ok = ok and len(c.rows) == 13
    record(1, ok, detail)
    assert ok, detail


def test_criterion_2_table_n11(comparisons, record):
    c, sec = comparisons[-11]
    ok, detail = _table_verdict(c, sec, -11, {0, 2, -2})
    # exact association: n = 0 exactly on the principal class
    pattern = all((row.n == 0) == (row.class_label == "O") for _, row, _ in c.rows)
    ok = ok and pattern and len(c.rows) == 11
    record(2, ok, detail + f", zero <-> principal: {pattern}")
    assert ok, detail


def test_criterion_3_table_n163(comparisons, record):
    c, sec = comparisons[-163]
    allowed = {s * k for k in (0, 2, 4, 8, 10, 12, 14, 20) for s in (1, -1)}
    ok, detail = _table_verdict(c, sec, -163, allowed)
    detail += f", class-level label conflicts in source table: {len(c.class_level_conflicts)}"
    record(3, ok, detail)
    assert ok, detail


def test_criterion_4_structure(record):
    results = [structure(N) for N in STRUCTURE]
    ok = all(r.ok for r in results)
    record(4, ok, "; ".join(f"{r.name}: {r.detail}" for r in results))
    assert ok


def test_criterion_5_hurwitz(record):
    r = hurwitz_table()
    record(5, r.ok, r.detail)
    assert r.ok


def test_criterion_6_oracle(record):
    worst = []
    ok = True
    for N in (-7, -11, -163):
        P = PREC[N]
        for D in _table_d(N):
            rep = central_value(N, D, P)        # raises OracleDisagreement at 10^(-P/2)
            ctx = canonical_ideal_above(N, D)
            with mpmath.workdps(P + 20):
                # the unrounded theta sum divided by Omega must land on the integer sum of n
                ratio = rep.L_theta.value / analytic.period(ctx, P).value
                identity = abs(ratio - rep.total) < mpmath.mpf(10) ** (-(P - analytic.GUARD))
                agree = rep.oracle_diff < mpmath.mpf(10) ** (-(P // 2))
            ok = ok and identity and agree
            worst.append((N, D, rep.oracle_diff))
    N, D, diff = max(worst, key=lambda t: t[2])
    detail = f"{len(worst)} (N,D) pairs, largest |formula - oracle| = {mpmath.nstr(diff, 3)} at N={N} |D|={D}"
    record(6, ok, detail)
    assert ok, detail


def test_criterion_7_nonvanishing(record):
    t0 = time.time()
    res = nonvanishing_certificate(-7, 500, 64)
    sec = time.time() - t0
    ok = all(good for _, _, good in res) and sec < 900
    detail = f"{len(res)} split |D| < 500, all parity odd and |L| > 1e-10: {ok}, {sec:.0f}s"
    record(7, ok, detail)
    assert ok, detail


def test_criterion_8_properties(record):
    results = property_suite(64)
    failed = [r.name for r in results if not r.ok]
    record(8, not failed, f"{len(results)} checks, failed: {failed}")
    assert not failed


def test_criterion_9_cross_d(record):
    parts = []
    ok = True
    for N, Ds in ((-11, _table_d(-11)), (-163, _table_d(-163))):
        res = cross_d_consistency(N, Ds, PREC[N])
        ok = ok and not res["violations"]
        parts.append(f"N={N} D={Ds}: per type {res['per_type']}, violations {res['violations']}, "
                     f"never hit {res['never_hit']}")
    record(9, ok, "; ".join(parts))
    assert ok
