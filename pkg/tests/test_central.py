import pytest

from hecke_central.central import (central_value, cross_d_consistency, nonvanishing_certificate,
                                   parity_of_rows, table_rows)
from hecke_central.golden import compare, load_fixture


def test_rows_n11_d23():
    _, rows = table_rows(-11, 23)
    got = sorted((str(r.reduced), abs(r.n), r.class_label) for r in rows)
    assert got == [("[1,1,6]", 2, "I1"), ("[2,-1,3]", 0, "O"), ("[2,1,3]", 0, "O")]
    assert all(r.residual < 1e-20 for r in rows)


def test_central_value_report_consistency():
    rep = central_value(-7, 23)
    assert rep.total == sum(r.n for r in rep.rows)
    assert sum(rep.r_values[k] * rep.m_values[k] for k in rep.m_values) == rep.total
    assert rep.nonvanishing
    assert rep.xi2 in (1, -1)
    value, parity = parity_of_rows(rep.rows)
    assert value == rep.total and parity == 1


def test_conjugate_d_gives_other_prime():
    a = central_value(-7, 11, 40)
    b = central_value(-7, 11, 40, conjugate=True)
    assert a.b != b.b
    assert abs(abs(a.L_formula.value) - abs(b.L_formula.value)) < 1e-15


def test_certificate_requires_n7():
    with pytest.raises(ValueError):
        nonvanishing_certificate(-11, 50)


def test_certificate_small_range():
    assert all(ok for _, _, ok in nonvanishing_certificate(-7, 50, 40))


def test_fixtures_row_counts():
    assert len(load_fixture(-7)["rows"]) == 13
    assert len(load_fixture(-11)["rows"]) == 11
    assert len(load_fixture(-163)["rows"]) == 32


def test_compare_n7():
    c = compare(-7)
    assert c.ok, c.problems
    assert set(c.signs) == {11, 23, 43, 67, 71}


def test_cross_d_needs_two():
    with pytest.raises(ValueError):
        cross_d_consistency(-11, [23])
