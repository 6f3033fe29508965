import csv
import io
import json
import subprocess
import sys

import pytest

from qgdcb.algebra import element_from_json, parse, presentation
from qgdcb.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_normal_form(capsys):
    code, out, _ = run(capsys, "normal-form", "--type", "A1", "E1*F1")
    assert code == 0
    assert out.strip() == "F1*E1 + (v^-1 - v)*K1 - (v^-1 - v)*K1'"


def test_serre_is_zero(capsys):
    code, out, _ = run(capsys, "normal-form", "--type", "A2", "E1*E1*E2 - [2]*E1*E2*E1 + E2*E1*E1")
    assert (code, out.strip()) == (0, "0")


def test_malformed_input(capsys):
    code, _, err = run(capsys, "normal-form", "--type", "A1", "E1*(F1")
    assert code == 2
    assert "column 7" in err


def test_unknown_subcommand_is_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_bad_type(capsys):
    assert run(capsys, "normal-form", "--type", "Q7", "E1")[0] == 2


def test_normal_form_json(capsys):
    code, out, _ = run(capsys, "normal-form", "--type", "A2", "--json", "-", "E1*F2 + v*K2")
    assert code == 0
    data = json.loads(out)
    x = element_from_json(data["element"])
    assert x == parse("E1*F2 + v*K2", presentation("A", 2))
    assert parse(data["text"], presentation("A", 2)) == x


def test_multiply(capsys):
    code, out, _ = run(capsys, "multiply", "--type", "A1", "E1", "F1")
    assert out.strip() == "F1*E1 + (v^-1 - v)*K1 - (v^-1 - v)*K1'"


def test_apply_star(capsys):
    code, out, _ = run(capsys, "apply", "star", "--type", "A1", "K1*E1")
    assert (code, out.strip()) == (0, "E1*K1'")


def test_apply_braid(capsys):
    code, out, _ = run(capsys, "apply", "braid", "K1", "--type", "A1", "--variant", "Utilde", "--index", "1")
    assert (code, out.strip()) == (0, "K1^-1")
    code, out, _ = run(capsys, "apply", "braid", "E1", "--type", "A1")
    assert (code, out.strip()) == (0, "v^-1*F1*K1'^-1")
    code, out, _ = run(capsys, "apply", "braid-inverse", out.strip(), "--type", "A1", "--variant", "Utilde")
    assert (code, out.strip()) == (0, "E1")


def test_pair(capsys):
    code, out, _ = run(capsys, "pair", "--type", "A1", "F1", "E1")
    assert out.strip() == "-v^-1 + v"


def test_dcb_small_bounds(capsys):
    code, out, _ = run(capsys, "dcb", "--type", "A1", "--bound", "0", "0")
    assert code == 0
    assert len(out.strip().splitlines()) == 1 and ": 1 " in out
    code, out, _ = run(capsys, "dcb", "--type", "A1", "--bound", "1", "1")
    lines = out.strip().splitlines()
    assert len(lines) == 6
    assert any("L(0,0;1,1): F1*E1 - v*K1 - v^-1*K1'" in line for line in lines)
    assert all("bar-fixed: True" in line for line in lines)


def test_dcb_json_round_trip(capsys):
    code, out, _ = run(capsys, "dcb", "--type", "A1", "--bound", "2", "2", "--json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 20
    assert all(row["bar_fixed"] for row in rows)
    on_diagonal = [r for r in rows if r.get("w") == [2, 2]]
    assert len(on_diagonal) == 6
    pres = presentation("A", 1)
    for row in rows:
        x = element_from_json(row["element"])
        assert parse(str(x), pres) == x


def test_dcb_is_deterministic(capsys):
    first = run(capsys, "dcb", "--type", "A2", "--bound", "1", "1")[1]
    second = run(capsys, "dcb", "--type", "A2", "--bound", "1", "1")[1]
    assert first == second


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "--type", "A1", "F1*E1")
    assert sorted(out.strip().splitlines()) == sorted([
        "C[(0),(1);(0),(0)]: v^-1", "C[(1),(0);(0),(0)]: v", "C[(0),(0);(1),(1)]: 1"])


def test_sl2_l(capsys):
    code, out, _ = run(capsys, "sl2", "L", "--v", "0", "0", "--w", "1", "1")
    assert out.strip() == "F1*E1 - v*K1 - v^-1*K1'"


def test_sl2_l_non_dominant(capsys):
    assert run(capsys, "sl2", "L", "--v", "1", "1", "--w", "1", "1")[0] == 2


def test_sl2_ef_expand_csv(capsys):
    code, out, _ = run(capsys, "sl2", "ef-expand", "1", "1", "--csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["v1", "v2", "w1", "w2", "coefficient"]
    got = {(r["v1"], r["v2"]): r["coefficient"] for r in rows}
    assert got == {("0", "0"): "1", ("0", "1"): "v", ("1", "0"): "v^-1"}


def test_sl2_ef_expand_json(capsys):
    code, out, _ = run(capsys, "sl2", "ef-expand", "2", "2", "--json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 6
    assert all(r["w"] == [2, 2] for r in rows)


def test_sl2_misc(capsys):
    assert "L(1,0;2,1): 1" in run(capsys, "sl2", "pi", "--v", "1", "0", "--w", "2", "1")[1]
    assert "dim M = 2" in run(capsys, "sl2", "dims", "--v", "1", "0", "--w", "2", "1")[1]
    out = run(capsys, "sl2", "casimir", "1")[1]
    assert out.strip() == "F1*E1 - v*K1 - v^-1*K1'"


def test_roots(capsys):
    out = run(capsys, "roots", "--type", "A2")[1]
    assert "longest word: 1 2 1" in out


@pytest.mark.parametrize("argv", [
    ("verify", "--suite", "braid", "--type", "A2"),
    ("verify", "--suite", "oracle", "--type", "A1", "--bound", "3"),
    ("verify", "--suite", "positivity", "--type", "A1", "--bound", "2"),
    ("verify", "--suite", "relations", "--type", "A2", "--seed", "7"),
])
def test_verify_passes(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert "pass" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "binomials", "--json")
    data = json.loads(out)
    assert data["ok"] and data["failures"] == []


def test_verify_unknown_suite(capsys):
    assert run(capsys, "verify", "--suite", "nope")[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qgdcb.cli", "normal-form", "--type", "A1", "K1*E1"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert res.stdout.strip() == "v^2*E1*K1"
