import pytest

from qgdcb import verify
from qgdcb.cartan import build_cartan
from qgdcb.cli import main


def test_report_bookkeeping():
    rep = verify.Report("demo")
    rep.check(True, "fine")
    rep.check(False, "broken")
    assert rep.checked == 2 and not rep.ok
    assert rep.to_json() == {"suite": "demo", "ok": False, "checked": 2, "failures": ["broken"]}
    assert rep.summary() == "demo: FAIL (2 checks, 1 failures)"


@pytest.mark.parametrize("name,label,bound", [
    ("relations", "A3", None),
    ("relations", "D4", None),
    ("braid", "A3", None),
    ("braid", "D4", None),
    ("involutions", "A1", 3),
    ("pairing", "A2", 3),
    ("pbw", "A3", None),
    ("casimir", "A1", 5),
    ("inversion", "A1", None),
    ("binomials", "A1", 4),
])
def test_suites_pass(name, label, bound):
    rep = verify.run_suite(name, build_cartan(label[0], int(label[1:])), bound)
    assert rep.checked > 0
    assert rep.ok, rep.failures[:3]


def test_every_listed_suite_dispatches():
    for name in verify.SUITES:
        assert verify.run_suite(name, build_cartan("A", 1), 1).ok


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify.run_suite("nope")


def test_failure_gives_exit_code_one(monkeypatch, capsys):
    monkeypatch.setattr(verify.rankone, "casimir_recursion_holds", lambda m: False)
    assert main(["verify", "--suite", "casimir"]) == 1
    assert "FAIL" in capsys.readouterr().out
