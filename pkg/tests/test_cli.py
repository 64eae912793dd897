import csv
import io
import json

import pytest

from hecke_central.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--n", "-11", "--dlist", "23", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["D", "form", "reduced_form", "n", "class", "residual"]
    assert sorted(abs(int(r["n"])) for r in rows) == [0, 0, 2]


def test_table_json_deterministic(capsys):
    args = ("table", "--n", "-7", "--dlist", "11,23", "--format", "json", "--prec", "40")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    doc = json.loads(first)
    assert doc["schema"] == 1
    assert doc["config"]["D"] == [11, 23]
    assert len(doc["rows"]) == 4


def test_lvalue_text(capsys):
    code, out, _ = run(capsys, "lvalue", "--n", "-7", "--d", "23", "--verify-oracle")
    assert code == 0
    assert "nonvanishing = true" in out


@pytest.mark.parametrize("argv", [
    ("lvalue", "--n", "-7", "--d", "13"),
    ("lvalue", "--n", "-5", "--d", "23"),
    ("table", "--n", "-7"),
    ("table", "--n", "-7", "--dlist", "11", "--prec", "10"),
    ("bogus",),
])
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(list(argv))
        raise SystemExit(code)
    assert exc.value.code == 1


def test_classset(capsys):
    code, out, _ = run(capsys, "classset", "--n", "-11", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["h"] == 2 and doc["t"] == 2 and doc["mass"] == "5/12"


def test_figures_written(capsys, tmp_path):
    code, _, err = run(capsys, "table", "--n", "-7", "--dlist", "11,23", "--prec", "40",
                       "--figures", str(tmp_path))
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["table_n7_l_values.png", "table_n7_n_values.png", "table_n7_root_numbers.png"]
    assert all(p.stat().st_size > 1000 for p in tmp_path.iterdir())


def test_out_file(capsys, tmp_path):
    target = tmp_path / "t.csv"
    code, out, _ = run(capsys, "table", "--n", "-7", "--dlist", "11", "--format", "csv",
                       "--out", str(target), "--prec", "40")
    assert code == 0 and out == ""
    assert target.read_text().startswith("D,form")


def test_oracle_disagreement_exit_3(capsys, monkeypatch):
    from hecke_central import analytic, central
    orig = analytic.l_value_oracle

    def broken(ctx, P):
        L, w = orig(ctx, P)
        return L + 1, w
    monkeypatch.setattr(central.analytic, "l_value_oracle", broken)
    code, _, err = run(capsys, "lvalue", "--n", "-7", "--d", "11", "--prec", "40")
    assert code == 3
    assert "oracle disagreement" in err


def test_jobs(capsys):
    code, out, _ = run(capsys, "table", "--n", "-7", "--dlist", "11,23", "--jobs", "2",
                       "--format", "csv", "--prec", "40")
    assert code == 0 and len(out.strip().splitlines()) == 5
