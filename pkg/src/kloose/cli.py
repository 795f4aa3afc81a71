"""Command-line interface.

Exit codes: 0 success, 1 bound violation or failed suite, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .bounds import THEOREMS, VIOLATION, BoundError, applicable_ks, evaluate
from .constructions import ConstructionError, circuit_matroid, extremal_k_loose, reed_muller_r1
from .field import FieldError
from .io import ParseError, dumps, envelope, format_matrix, read_matrix
from .loose import BudgetError, looseness_index, paving_report
from .matroid import MatroidError
from .search import DEFAULT_BUDGET, MODES, SearchConfig, SearchError, run_search
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
THREADS_ENV = "KLOOSE_THREADS"


def _fmt(x) -> str:
    if x is None:
        return "-"
    return "inf" if x == float("inf") else str(x)


def _table(headers, rows) -> str:
    cells = [list(map(str, headers))] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    mf = read_matrix(args.file)
    M = mf.matroid
    if args.element is not None:
        rep = looseness_index(M, args.element)
        result = rep.as_dict()
        if args.k is not None:
            result["k"] = args.k
            result["is_k_loose"] = rep.is_k_loose(args.k)
        results = [result]
    else:
        rep = paving_report(M)
        result = rep.as_dict()
        if args.k is not None:
            result["k"] = args.k
            result["is_k_paving"] = rep.is_k_paving(args.k)
            result["k_loose_elements"] = [x.element for x in rep.per_element if x.is_k_loose(args.k)]
        results = [result]
    if args.json:
        sys.stdout.write(dumps(envelope("analyze", results, M)))
        return EXIT_OK
    print(f"GF({M.field.q}) matroid: rank {M.rank}, {M.n} elements")
    if args.element is not None:
        r = results[0]
        print(f"element {r['element']}: local girth {r['local_girth']}, looseness index {r['looseness_index']}"
              + (" (coloop)" if r["coloop"] else ""))
        if r["witness"] is not None:
            print(f"smallest circuit: {r['witness']}")
        if args.k is not None:
            print(f"{args.k}-loose: {r['is_k_loose']}")
        return EXIT_OK
    print(f"girth {_fmt(rep.girth)}, paving index {rep.paving_index}")
    rows = [(x.element, _fmt(x.local_girth), x.looseness_index, "yes" if x.coloop else "") for x in rep.per_element]
    print(_table(["element", "local girth", "looseness", "coloop"], rows))
    if args.k is not None:
        print(f"{args.k}-paving: {result['is_k_paving']}")
    return EXIT_OK


def cmd_construct(args) -> int:
    if args.kind == "extremal":
        if args.rank is None or args.k is None:
            raise ConstructionError("extremal needs --rank and --k")
        M, e = extremal_k_loose(args.rank, args.k)
        comments = [f"construct extremal r={args.rank} k={args.k}", f"loose-element {e}"]
    elif args.kind == "reed-muller":
        if args.m is None:
            raise ConstructionError("reed-muller needs --m")
        M = reed_muller_r1(args.m)
        comments = [f"construct reed-muller m={args.m}"]
    else:
        if args.rank is None:
            raise ConstructionError("circuit needs --rank")
        M = circuit_matroid(args.rank)
        comments = [f"construct circuit r={args.rank}"]
    text = format_matrix(M, comments)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bounds(args) -> int:
    M = read_matrix(args.file).matroid
    if args.theorem == "all":
        pairs = []
        for thm in THEOREMS:
            try:
                ks = [args.k] if args.k is not None else applicable_ks(M, thm)
                pairs += [(thm, evaluate(M, thm, k)) for k in ks]
            except BoundError:
                continue
        evals = [ev for _, ev in pairs]
    else:
        evals = [evaluate(M, args.theorem, args.k)]
    if args.json:
        sys.stdout.write(dumps(envelope("bounds", [ev.as_dict() for ev in evals], M)))
    else:
        rows = []
        for ev in evals:
            failed = [h["name"] for h in ev.hypotheses if not h["passed"]]
            note = ev.escape and f"escape: {ev.escape}" or ", ".join(failed + ev.flags)
            rows.append((ev.theorem, ev.params["k"], _fmt(ev.bound_value), ev.observed_value, ev.verdict, note))
        print(_table(["theorem", "k", "bound", "observed", "verdict", "notes"], rows))
        for ev in evals:
            if ev.verdict == VIOLATION:
                print(f"\ncounterexample to {ev.theorem} (k={ev.params['k']}):\n{ev.certificate}", end="")
    return EXIT_FAIL if any(ev.verdict == VIOLATION for ev in evals) else EXIT_OK


def cmd_search(args) -> int:
    cfg = SearchConfig(
        q=args.q,
        r=args.rank,
        k=args.k,
        mode=args.mode,
        size_target=args.target,
        node_budget=args.budget,
        workers=args.threads,
        seed_columns=args.seed_columns,
    )
    res = run_search(cfg)
    if args.json:
        sys.stdout.write(dumps(envelope("search", [res.as_dict()], res.certificate)))
    else:
        print(f"mode {cfg.mode}, GF({cfg.q}), rank {cfg.r}, k {cfg.k}")
        print(f"status: {res.status}")
        print(f"best size: {res.best_size}")
        print(f"exhausted: {res.exhausted}  nodes: {res.nodes_visited}  time: {res.wall_time:.3f}s")
        if res.count is not None:
            print(f"count: {res.count}")
        if res.certificate is not None:
            print("certificate:")
            sys.stdout.write(format_matrix(res.certificate))
    return EXIT_OK


def cmd_verify(args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = [run_suite(name, args.seed) for name in names]
    if args.json:
        sys.stdout.write(dumps(envelope("verify", reports, seed=args.seed)))
    else:
        for rep in reports:
            for chk in rep["checks"]:
                print(f"[{'PASS' if chk['passed'] else 'FAIL'}] {rep['suite']}: {chk['name']}")
                if rep["suite"] == "table-1-6":
                    print("       " + ", ".join(map(str, chk["details"]["values"])))
    return EXIT_OK if all(rep["passed"] for rep in reports) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kloose", description="k-loose elements and k-paving matroids")
    p.add_argument("--version", action="version", version=f"kloose {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="girth, local girth and looseness of a matrix file")
    a.add_argument("file")
    a.add_argument("--element", type=int)
    a.add_argument("--k", type=int)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("construct", help="write an explicit construction as a matrix file")
    c.add_argument("kind", choices=["extremal", "reed-muller", "circuit"])
    c.add_argument("--rank", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    b = sub.add_parser("bounds", help="evaluate a bound on a matrix file")
    b.add_argument("file")
    b.add_argument("--theorem", choices=list(THEOREMS) + ["all"], required=True)
    b.add_argument("--k", type=int)
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("search", help="search for k-paving matroids of a given rank")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--q", type=int, default=2)
    s.add_argument("--mode", choices=MODES, default="max-size")
    s.add_argument("--target", type=int)
    s.add_argument("--threads", type=int, default=int(os.environ.get(THREADS_ENV, "1")))
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--seed-columns", choices=["identity", "none"], default="identity")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify", help="run a seeded verification suite")
    v.add_argument("--suite", choices=list(SUITES) + ["all"], required=True)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, FieldError, MatroidError, BoundError, ConstructionError, SearchError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
