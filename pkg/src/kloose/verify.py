"""Seeded verification suites.

Each suite returns a JSON-ready dict with one record per check; reports carry
no timings, so a rerun with the same seed is byte-identical.
"""

from __future__ import annotations

import itertools
from collections import Counter

import numpy as np

from .bounds import (
    VIOLATION,
    applicable_ks,
    bound_rank_two_loose,
    bound_size_kpaving,
    bound_size_one_loose,
    evaluate,
)
from .constructions import circuit_matroid, extremal_k_loose, reed_muller_r1
from .loose import (
    INFINITE,
    circuits_through_oracle,
    is_circuit,
    local_girth,
    loose_column_counts,
    looseness_index,
    oracle_local_girth,
    paving_report,
    paving_sum_zero_counts,
)
from .matroid import coloops, is_cocircuit_pair, is_simple
from .randgen import perturbed_extremal, random_matrix, random_simple, series_pair_instance
from .search import SearchConfig, run_search

SUITES = ("table-1-6", "construction", "bounds", "oracle", "paving-rank")

THREE_PAVING_EXPECTED = [12, 13, 11, 12]


def _record(name: str, passed: bool, **details) -> dict:
    return {"name": name, "passed": bool(passed), "details": details}


def suite_table(seed: int = 0) -> list[dict]:
    got = [bound_size_kpaving(r, 3) for r in range(7, 11)]
    return [_record("three-paving size table", got == THREE_PAVING_EXPECTED, ranks=[7, 8, 9, 10], values=got)]


def check_extremal(r: int, k: int, oracle_max_rank: int = 8) -> list[str]:
    """Failures (empty when fine) for the extremal construction at ``(r, k)``."""
    M, e = extremal_k_loose(r, k)
    bad = []
    if M.n != bound_size_one_loose(r, k):
        bad.append(f"size {M.n}")
    if M.rank != r:
        bad.append(f"rank {M.rank}")
    if not is_simple(M):
        bad.append("not simple")
    if coloops(M):
        bad.append("has coloops")
    rep = looseness_index(M, e)
    if rep.looseness_index != k or rep.local_girth != r - k + 1:
        bad.append(f"looseness {rep.looseness_index}, local girth {rep.local_girth}")
    if rep.witness is None or e not in rep.witness or not is_circuit(M, rep.witness):
        bad.append("invalid witness")
    if r <= oracle_max_rank:
        hits = circuits_through_oracle(M, e, r - k + 1)
        if not hits or len(hits[0]) != r - k + 1:
            bad.append("oracle disagrees")
    return bad


def suite_construction(seed: int = 0) -> list[dict]:
    out = []
    failures = {}
    cases = 0
    for r in range(2, 11):
        for k in range(0, r - 1):
            cases += 1
            bad = check_extremal(r, k)
            if bad:
                failures[f"{r},{k}"] = bad
    out.append(_record("extremal construction", not failures, cases=cases, failures=failures))

    rm = {}
    ok = True
    for m in range(3, 7):
        R = reed_muller_r1(m)
        rep = paving_report(R)
        good = rep.girth == 4 and rep.paving_index == m - 2 and R.rank == m + 1 and R.rank <= 3 * (m - 2) + 1
        ok &= good
        rm[str(m)] = {"rank": R.rank, "girth": rep.girth, "paving_index": rep.paving_index}
    out.append(_record("reed-muller paving", ok, matroids=rm, maximality="not tested"))

    out.append(sublemma_record("counting lemmas on constructions", _construction_corpus()))
    return out


def _construction_corpus():
    for r in range(2, 11):
        for k in range(0, r - 1):
            yield f"extremal {r},{k}", extremal_k_loose(r, k)[0]
    for m in range(2, 7):
        yield f"reed-muller {m}", reed_muller_r1(m)
    for r in range(2, 8):
        yield f"circuit {r}", circuit_matroid(r)


def sublemma_failures(M, loose_elements=None) -> list[str]:
    """Check both standard-form zero-count lemmas on a binary matroid."""
    bad = []
    rep = paving_report(M)
    elements = loose_elements if loose_elements is not None else range(M.n)
    for e in elements:
        if rep.per_element[e].coloop:
            continue
        k, counts = loose_column_counts(M, e)
        if counts and max(counts) > k + 1:
            bad.append(f"element {e}: count {max(counts)} > {k + 1}")
    if rep.girth != INFINITE and M.n - M.rank <= 60:
        k, worst = paving_sum_zero_counts(M)
        for m, z in worst.items():
            if z > k + m - 1:
                bad.append(f"{m}-sum with {z} zeroes > {k + m - 1}")
    return bad


def sublemma_record(name: str, corpus) -> dict:
    failures = {}
    cases = 0
    for label, M in corpus:
        cases += 1
        loose = None
        if M.n > 64:  # large constructions: check the designated element only
            loose = [M.rank]
        bad = sublemma_failures(M, loose)
        if bad:
            failures[label] = bad
    return _record(name, not failures, cases=cases, failures=failures)


def t11_corpus(seed: int, count: int = 1000):
    rng = np.random.default_rng(seed)
    for i in range(count):
        r = int(rng.integers(5, 9))
        if i % 2 == 0:
            n = int(rng.integers(r + 1, 25))
            yield random_simple(rng, 2, r, n)
        else:
            k = int(rng.integers(0, (r - 2) // 3 + 1))
            M = perturbed_extremal(rng, r, k)
            if M.rank == r and is_simple(M) and not coloops(M):
                yield M
            else:
                yield random_simple(rng, 2, r, int(rng.integers(r + 1, 25)))


def suite_bounds(seed: int = 0, t11_count: int = 1000, t12_count: int = 500) -> list[dict]:
    out = []
    sharp = {}
    for r in range(5, 9):
        for k in range(0, (r - 2) // 3 + 1):
            M, _ = extremal_k_loose(r, k)
            ev = evaluate(M, "T1.1", k)
            sharp[f"{r},{k}"] = ev.verdict
    out.append(_record("extremal attains the one-loose bound", all(v == "attained" for v in sharp.values()), verdicts=sharp))

    verdicts = Counter()
    violations = []
    for idx, M in enumerate(t11_corpus(seed, t11_count)):
        rep = paving_report(M)
        ks = set(applicable_ks(M, "T1.1"))
        ks.add(max(x.looseness_index for x in rep.per_element))
        for k in sorted(ks):
            ev = evaluate(M, "T1.1", k)
            verdicts[ev.verdict] += 1
            if ev.verdict == VIOLATION:
                violations.append({"index": idx, "k": k, "certificate": ev.certificate})
    out.append(
        _record(
            "no one-loose size violation",
            not violations and sum(verdicts.values()) >= t11_count,
            matroids=t11_count,
            verdicts=dict(sorted(verdicts.items())),
            violations=violations,
        )
    )
    out.append(two_loose_record(seed, t12_count))
    return out


def two_loose_record(seed: int, target: int = 500) -> dict:
    """Two k-loose elements above the rank bound always form a cocircuit."""
    rng = np.random.default_rng(seed + 1)
    # (q, k, ranks above the bound)
    shapes = [(2, 1, [5, 6, 7, 8]), (2, 2, [8, 9]), (3, 1, [7, 8])]
    qualifying = 0
    pairs = 0
    counter = []
    attempts = 0
    by_field = Counter()
    while qualifying < target and attempts < 50 * target:
        attempts += 1
        q, k, ranks = shapes[int(rng.integers(0, len(shapes)))]
        r = int(rng.choice(ranks))
        inst = series_pair_instance(rng, q, r, k, extras=int(rng.integers(0, 4)))
        if inst is None:
            continue
        M, e, f = inst
        if not is_simple(M) or coloops(M) or M.rank <= bound_rank_two_loose(q, k):
            continue
        rep = paving_report(M)
        loose = [x.element for x in rep.per_element if x.is_k_loose(k)]
        if len(loose) < 2:
            continue
        qualifying += 1
        by_field[f"GF({q})"] += 1
        for a, b in itertools.combinations(loose, 2):
            pairs += 1
            if not is_cocircuit_pair(M, a, b):
                counter.append({"q": q, "k": k, "pair": [a, b], "attempt": attempts})
        if evaluate(M, "T1.2", k).verdict == VIOLATION:
            counter.append({"q": q, "k": k, "evaluate": "VIOLATION", "attempt": attempts})
    return _record(
        "two loose elements above the rank bound form a cocircuit",
        qualifying >= target and not counter,
        instances=qualifying,
        pairs=pairs,
        by_field=dict(sorted(by_field.items())),
        counterexamples=counter,
    )


def suite_oracle(seed: int = 0, count: int = 200) -> list[dict]:
    rng = np.random.default_rng(seed)
    mismatches = []
    elements = 0
    for i in range(count):
        q = 2 if i % 2 == 0 else 3
        M = random_matrix(rng, q, int(rng.integers(1, 9)), int(rng.integers(1, 17)))
        for e in range(M.n):
            elements += 1
            lg, witness = local_girth(M, e)
            want = oracle_local_girth(M, e)
            ok = lg == want
            if witness is not None:
                ok &= e in witness and is_circuit(M, witness) and len(witness) == lg
            if not ok:
                mismatches.append({"matroid": i, "element": e, "bfs": str(lg), "oracle": str(want)})
    return [_record("local girth matches the oracle", not mismatches, matroids=count, elements=elements, mismatches=mismatches)]


CERTIFICATE_SEARCHES = [(4, 1), (5, 2), (6, 2), (7, 2), (7, 3), (8, 3), (9, 3), (10, 3), (6, 3)]


def suite_paving_rank(seed: int = 0, workers: int = 4) -> list[dict]:
    out = []
    for r, k in ((5, 1), (8, 2)):
        res = run_search(SearchConfig(2, r, k, "nonexistence"))
        out.append(
            _record(
                f"no rank-{r} binary {k}-paving matroid beyond a circuit",
                res.status == "confirmed" and res.exhausted,
                status=res.status,
                exhausted=res.exhausted,
                nodes=res.nodes_visited,
                largest_coloop_free=res.best_size,
            )
        )

    corpus = []
    sizes = {}
    for r, k in CERTIFICATE_SEARCHES:
        res = run_search(SearchConfig(2, r, k, "max-size"))
        sizes[f"{r},{k}"] = res.best_size
        if res.certificate is not None:
            corpus.append((f"search {r},{k}", res.certificate))
    rec = sublemma_record("counting lemmas on search certificates", corpus)
    rec["details"]["best_sizes"] = sizes
    out.append(rec)

    agree = {}
    ok = True
    for cfg in (SearchConfig(2, 7, 3, "max-size"), SearchConfig(2, 5, 1, "nonexistence"), SearchConfig(2, 6, 2, "max-size")):
        one = run_search(cfg)
        many = run_search(SearchConfig(**{**cfg.__dict__, "workers": workers}))
        same = (one.best_size, one.exhausted, one.certificate) == (many.best_size, many.exhausted, many.certificate)
        ok &= same
        agree[f"{cfg.mode} {cfg.r},{cfg.k}"] = {"best_size": one.best_size, "exhausted": one.exhausted, "agree": same}
    out.append(_record(f"1 and {workers} workers agree", ok, runs=agree))
    return out


_RUNNERS = {
    "table-1-6": suite_table,
    "construction": suite_construction,
    "bounds": suite_bounds,
    "oracle": suite_oracle,
    "paving-rank": suite_paving_rank,
}


def run_suite(name: str, seed: int = 0) -> dict:
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    records = _RUNNERS[name](seed)
    return {"suite": name, "passed": all(r["passed"] for r in records), "checks": records}
