"""The twelve acceptance criteria, one test each.

Run under pytest for a per-criterion summary at the end of the session, or
directly with ``python3 tests/test_acceptance.py`` to get the same lines
without pytest.
"""

import sys
import time

from qgdcb import rankone, verify
from qgdcb.algebra import parse, presentation
from qgdcb.canonical import double_cb, dual_cb_half, lusztig_cb_minus, rescaled_dual
from qgdcb.cartan import build_cartan
from qgdcb.operators import chevalley, star

A1 = build_cartan("A", 1)


def _timed(fn, limit):
    start = time.perf_counter()
    result = fn()
    elapsed = time.perf_counter() - start
    assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
    return result


def _assert_ok(report):
    assert report.checked > 0, f"{report.suite} checked nothing"
    assert report.ok, report.failures[:5]


def test_criterion_01_casimir_identity():
    def run():
        pres = presentation("A", 1, "Uhat")
        c = double_cb(A1, (1,), (1,), "+")
        assert c == parse("E1*F1 - v^-1*K1 - v*K1'", pres)
        assert c == rankone.L_closed_form(rankone.Pair(0, 0, 1, 1))

    _timed(run, 1.0)


def test_criterion_02_casimir_recursion():
    _assert_ok(_timed(lambda: verify.casimir(5), 10.0))


def test_criterion_03_oracle_equivalence():
    _assert_ok(_timed(lambda: verify.oracle(3), 120.0))


def test_criterion_04_inversion_identity():
    _assert_ok(_timed(lambda: verify.inversion(4, 2), 60.0))


def test_criterion_05_positivity():
    _assert_ok(verify.positivity(bound=2, ef_bound=4))


def test_criterion_06_rescaled_dual_rank_one():
    pres = presentation("A", 1, "Uhat")
    for n in range(6):
        plus = list(dual_cb_half(pres, "+", (n,)).values())
        minus = list(dual_cb_half(pres, "-", (n,)).values())
        assert plus == [pres.E(0) ** n]
        assert minus == [pres.F(0) ** n]


def test_criterion_07_braid_suite():
    _assert_ok(_timed(lambda: verify.braid_suite(build_cartan("A", 2)), 10.0))


def test_criterion_08_relation_suite():
    for kind, rank in (("A", 1), ("A", 2), ("A", 3), ("D", 4)):
        _assert_ok(verify.relations(build_cartan(kind, rank), seed=0, samples=200, max_len=6))


def test_criterion_09_involution_suite():
    basis = {frozenset(rankone.L_closed_form(p).terms.items()) for p in rankone.dominant_pairs(2)}
    for fn in (star, chevalley):
        image = set()
        for p in rankone.dominant_pairs(2):
            image.add(frozenset(fn(rankone.L_closed_form(p)).terms.items()))
        assert image == basis, fn.__name__
    _assert_ok(verify.involutions(A1, 2))


def test_criterion_10_q_binomial_identities():
    _assert_ok(verify.binomials(6, 6, 6))


def test_criterion_11_hopf_pairing():
    for rank in (1, 2, 3):
        _assert_ok(verify.pairing(build_cartan("A", rank), weight_bound=2))
    pres = presentation("A", 1, "Uhat")
    for n in range(6):
        dual = rescaled_dual(pres, lusztig_cb_minus(pres, (n,)), (n,))
        assert dual == [pres.E(0) ** n]


def test_criterion_12_pbw_round_trip():
    for rank in (1, 2):
        _assert_ok(verify.pbw_roundtrip(build_cartan("A", rank), seed=0, samples=500, max_degree=6))


def main():
    failed = 0
    tests = sorted((name, fn) for name, fn in globals().items() if name.startswith("test_criterion_"))
    for name, fn in tests:
        _, _, num, *words = name.split("_")
        try:
            fn()
            mark = "PASS"
        except Exception as exc:  # report and keep going
            mark = f"FAIL ({type(exc).__name__}: {exc})"
            failed += 1
        print(f"criterion {int(num):2d} {mark}  {' '.join(words)}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
