"""Acceptance criteria, one test each, with the stated time limits.

Each test prints a single ``[PASS]`` or ``[FAIL]`` line to the terminal.
"""

import time

import pytest

from kloose.bounds import bound_size_kpaving
from kloose.cli import main
from kloose.constructions import reed_muller_r1
from kloose.loose import paving_report
from kloose.search import SearchConfig, run_search
from kloose.verify import (
    CERTIFICATE_SEARCHES,
    _construction_corpus,
    check_extremal,
    suite_bounds,
    suite_oracle,
    SUITES,
    sublemma_record,
    two_loose_record,
)


@pytest.fixture
def report(capsys):
    def emit(num, title, passed, elapsed, limit, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {num}: {title} ({elapsed:.3f}s, limit {limit}s){detail}"
        with capsys.disabled():
            print("\n" + line)
        assert passed, line

    return emit


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_c1_three_paving_table(report):
    best = float("inf")
    for _ in range(5):
        got, dt = timed(lambda: [bound_size_kpaving(r, 3) for r in range(7, 11)])
        best = min(best, dt)
    report(1, "three-paving size table 12,13,11,12", got == [12, 13, 11, 12] and best < 1e-3, best, 0.001, f" values {got}")


def test_c2_extremal_construction(report):
    def go():
        return {(r, k): check_extremal(r, k, oracle_max_rank=8) for r in range(2, 11) for k in range(r - 1)}

    fails, dt = timed(go)
    bad = {rk: f for rk, f in fails.items() if f}
    report(2, f"extremal construction, {len(fails)} cases", not bad and dt < 120, dt, 120, f" failures {bad}" if bad else "")


def test_c3_one_loose_bound(report):
    recs, dt = timed(lambda: suite_bounds(0, t11_count=1000, t12_count=0))
    sharp, corpus = recs[0], recs[1]
    ok = sharp["passed"] and corpus["passed"] and corpus["details"]["matroids"] >= 1000 and dt < 300
    report(3, "one-loose bound sharp and unviolated", ok, dt, 300, f" verdicts {corpus['details']['verdicts']}")


def test_c4_reed_muller(report):
    def go():
        out = {}
        for m in range(3, 7):
            R = reed_muller_r1(m)
            rep = paving_report(R)
            out[m] = rep.girth == 4 and rep.paving_index == m - 2 and R.rank == m + 1 <= 3 * (m - 2) + 1
        return out

    ok, dt = timed(go)
    report(4, "Reed-Muller R(1,m) is (m-2)-paving, m=3..6", all(ok.values()) and dt < 30, dt, 30, " (maximality not tested)")


@pytest.mark.parametrize("r,k", [(5, 1), (8, 2)])
def test_c5_nonexistence(report, r, k):
    res, dt = timed(lambda: run_search(SearchConfig(2, r, k, "nonexistence")))
    ok = res.status == "confirmed" and res.exhausted and dt < 600
    report(5, f"no binary {k}-paving non-circuit of rank {r}", ok, dt, 600, f" nodes {res.nodes_visited}")


def test_c6_two_loose_cocircuit(report):
    rec, dt = timed(lambda: two_loose_record(0, 500))
    d = rec["details"]
    report(6, "two loose elements form a cocircuit", rec["passed"] and dt < 300, dt, 300,
           f" instances {d['instances']} {d['by_field']}, counterexamples {len(d['counterexamples'])}")


def test_c7_oracle_equivalence(report):
    recs, dt = timed(lambda: suite_oracle(0, 200))
    d = recs[0]["details"]
    report(7, "local girth equals the brute-force oracle", recs[0]["passed"] and dt < 120, dt, 120,
           f" {d['matroids']} matroids, {d['elements']} elements")


def test_c8_counting_lemmas(report):
    certs = []
    for r, k in CERTIFICATE_SEARCHES:
        res = run_search(SearchConfig(2, r, k, "max-size"))
        assert res.certificate is not None
        certs.append((f"search {r},{k}", res.certificate))

    def go():
        return [sublemma_record("constructions", _construction_corpus()), sublemma_record("certificates", certs)]

    recs, dt = timed(go)
    cases = sum(r["details"]["cases"] for r in recs)
    report(8, f"standard-form zero counts on {cases} matroids", all(r["passed"] for r in recs) and dt < 60, dt, 60)


def test_c9_determinism(report, capsys):
    def verify_json(name):
        code = main(["verify", "--suite", name, "--json", "--seed", "0"])
        return code, capsys.readouterr().out

    t0 = time.perf_counter()
    diffs = []
    for name in SUITES:
        a, b = verify_json(name), verify_json(name)
        if a != b or a[0] != 0:
            diffs.append(name)
    agree = []
    for cfg in (SearchConfig(2, 7, 3, "max-size"), SearchConfig(2, 8, 2, "nonexistence")):
        one = run_search(cfg)
        four = run_search(SearchConfig(**{**cfg.__dict__, "workers": 4}))
        agree.append((one.best_size, one.exhausted) == (four.best_size, four.exhausted))
    dt = time.perf_counter() - t0
    report(9, "byte-identical reruns and 1 vs 4 workers", not diffs and all(agree), dt, "-",
           f" unstable {diffs}" if diffs else "")
