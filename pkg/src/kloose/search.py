"""Backtracking search for large k-paving matroids of fixed rank over GF(q).

A column set of rank ``r`` is k-paving when every circuit has more than
``r - k`` elements.  With the identity seeded (the default) every simple
rank-``r`` matroid appears as ``[I_r | Q]``, so it suffices to search sets of
``Q``-columns.  Those are taken in strictly increasing encoding with
normalised columns (first nonzero entry 1), which enumerates each candidate
column set exactly once.

Feasibility is tracked with a table ``W`` over all ``q**r`` vectors: ``W[s]``
is the least number of chosen columns with a combination equal to ``s``.  A
new column ``v`` closes a smallest circuit of size ``1 + W[v]``, and adding
it updates ``W[s] = min(W[s], 1 + min_c W[s - c v])``.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .field import FieldSpec, VectorSpace, make_field
from .loose import is_k_paving
from .matroid import MatroidRep, coloops, is_circuit_matroid, is_simple

MODES = ("max-size", "nonexistence", "enumerate")
SEEDS = ("identity", "none")
DEFAULT_BUDGET = 10**8
_UNREACHED = np.iinfo(np.int16).max


class SearchError(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    q: int
    r: int
    k: int
    mode: str = "max-size"
    size_target: int | None = None
    node_budget: int = DEFAULT_BUDGET
    workers: int = 1
    seed_columns: str = "identity"

    def __post_init__(self):
        make_field(self.q)
        if self.mode not in MODES:
            raise SearchError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.seed_columns not in SEEDS:
            raise SearchError(f"seed_columns must be one of {SEEDS}")
        cap = 20 if self.q == 2 else 12
        if not 1 <= self.r <= cap:
            raise SearchError(f"rank must lie in 1..{cap} over GF({self.q})")
        if self.q**self.r > 1 << 22 and self.q != 2:
            raise SearchError(f"GF({self.q})^{self.r} is too large to tabulate")
        if self.k < 0:
            raise SearchError("k must be non-negative")
        if self.node_budget <= 0 or self.workers <= 0:
            raise SearchError("node_budget and workers must be positive")

    @property
    def target(self) -> int | None:
        if self.mode == "nonexistence" and self.size_target is None:
            return self.r + 2
        return self.size_target

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "r": self.r,
            "k": self.k,
            "mode": self.mode,
            "size_target": self.target,
            "node_budget": self.node_budget,
            "workers": self.workers,
            "seed_columns": self.seed_columns,
        }


@dataclass
class SearchResult:
    config: SearchConfig
    best_size: int
    certificate: MatroidRep | None
    exhausted: bool
    nodes_visited: int
    status: str
    count: int | None = None
    wall_time: float = field(default=0.0, compare=False)

    def as_dict(self, timing: bool = True) -> dict:
        from .io import format_matrix

        out = {
            "config": self.config.as_dict(),
            "best_size": self.best_size,
            "certificate": format_matrix(self.certificate) if self.certificate is not None else None,
            "exhausted": self.exhausted,
            "nodes_visited": self.nodes_visited,
            "status": self.status,
        }
        if self.count is not None:
            out["count"] = self.count
        if timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out


# -- incremental feasibility ----------------------------------------------------


class PavingState:
    """A partial column set in GF(q)^r with its minimum-combination table."""

    def __init__(self, F: FieldSpec | int, r: int, k: int, columns=()):
        if isinstance(F, int):
            F = make_field(F)
        self.space = VectorSpace(F, r)
        self.r, self.k = r, k
        self.W = np.full(self.space.size, _UNREACHED, dtype=np.int16)
        self.W[0] = 0
        self.columns: list[int] = []
        self._all = np.arange(self.space.size, dtype=np.int64)
        for v in columns:
            self.add(v)

    def _code(self, v) -> int:
        if isinstance(v, (int, np.integer)):
            return int(v)
        code = 0
        for x in reversed(list(v)):
            code = code * self.space.F.q + int(x)
        return code

    def circuit_size(self, v) -> int | float:
        """Size of the smallest circuit through ``v`` in the set plus ``v``."""
        w = int(self.W[self._code(v)])
        return math.inf if w == _UNREACHED else w + 1

    def feasible(self, v) -> bool:
        return self.circuit_size(v) > self.r - self.k

    def add(self, v) -> None:
        v = self._code(v)
        self.W = _extend_table(self.space, self.W, v, self._all)
        self.columns.append(v)


def incremental_feasible(state: PavingState, v) -> bool:
    return state.feasible(v)


def _extend_table(space: VectorSpace, W: np.ndarray, v: int, idx: np.ndarray) -> np.ndarray:
    out = W.copy()
    for _, cv in space.multiples(v):
        shifted = W[space.add(idx, cv)].astype(np.int32) + 1
        np.minimum(out, np.minimum(shifted, _UNREACHED).astype(np.int16), out=out)
    return out


# -- search ---------------------------------------------------------------------


class _Stop(Exception):
    pass


def _candidates(space: VectorSpace, seeded: bool) -> np.ndarray:
    codes = np.arange(1, space.size, dtype=np.int64)
    digits = space.digits(codes)
    first = digits[np.arange(len(codes)), np.argmax(digits != 0, axis=1)]
    keep = first == 1
    if seeded:
        keep &= (digits != 0).sum(axis=1) > 1
    return codes[keep]


class _Context:
    def __init__(self, cfg: SearchConfig, budget: int):
        self.cfg = cfg
        self.F = make_field(cfg.q)
        self.space = VectorSpace(self.F, cfg.r)
        self.idx = np.arange(self.space.size, dtype=np.int64)
        self.seeded = cfg.seed_columns == "identity"
        self.base = [cfg.q**i for i in range(cfg.r)] if self.seeded else []
        self.cands = _candidates(self.space, self.seeded)
        digits = self.space.digits(self.cands)
        masks = ((digits != 0) * (1 << np.arange(cfg.r))).sum(axis=1)
        self.support = dict(zip(self.cands.tolist(), masks.tolist()))
        self.full = (1 << cfg.r) - 1
        self.limit = cfg.r - cfg.k  # feasible iff W[v] >= limit
        self.budget = budget
        self.nodes = 0
        self.best = -1
        self.best_cols: list[int] | None = None
        self.count = 0
        self.found: list[int] | None = None
        self.target = cfg.target

    def initial(self):
        W = np.full(self.space.size, _UNREACHED, dtype=np.int16)
        W[0] = 0
        for v in self.base:
            W = _extend_table(self.space, W, v, self.idx)
        cands = self.cands[W[self.cands] >= self.limit]
        return W, cands

    def matroid(self, cols) -> MatroidRep:
        return MatroidRep.from_codes(self.F, self.cfg.r, list(self.base) + list(cols))

    def coloop_free(self, cols, cover) -> bool:
        if self.seeded:
            return cover == self.full
        M = self.matroid(cols)
        return M.rank == self.cfg.r and not coloops(M)

    def visit(self, cols, cover) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _Stop
        size = len(self.base) + len(cols)
        if not self.coloop_free(cols, cover):
            return
        mode = self.cfg.mode
        if mode == "max-size":
            if size > self.best:
                self.best, self.best_cols = size, list(cols)
                if self.target is not None and size >= self.target:
                    raise _Stop
        elif mode == "nonexistence":
            if size > self.best:
                self.best, self.best_cols = size, list(cols)
            if size >= self.target and not is_circuit_matroid(self.matroid(cols)):
                self.found = list(cols)
                raise _Stop
        else:
            if self.target is None or size >= self.target:
                self.count += 1
            if size > self.best:
                self.best, self.best_cols = size, list(cols)

    def hopeless(self, cols, cover, cands) -> bool:
        size = len(self.base) + len(cols)
        mode = self.cfg.mode
        if mode == "max-size" and size + len(cands) <= self.best:
            return True
        if mode == "nonexistence" and size + len(cands) < self.target:
            return True
        if self.seeded and cover != self.full:
            reach = cover
            for c in cands.tolist():
                reach |= self.support[c]
            if reach != self.full:
                return True
        return False

    def dfs(self, cols, W, cands, cover) -> None:
        self.visit(cols, cover)
        if self.hopeless(cols, cover, cands):
            return
        for i, v in enumerate(cands.tolist()):
            if self.cfg.mode == "max-size" and len(self.base) + len(cols) + len(cands) - i <= self.best:
                return
            W2 = _extend_table(self.space, W, v, self.idx)
            rest = cands[i + 1 :]
            rest = rest[W2[rest] >= self.limit]
            self.dfs(cols + [v], W2, rest, cover | self.support[v])


def _run_branch(args):
    cfg, branch, budget = args
    ctx = _Context(cfg, budget)
    W, cands = ctx.initial()
    v = int(cands[branch])
    W2 = _extend_table(ctx.space, W, v, ctx.idx)
    rest = cands[branch + 1 :]
    rest = rest[W2[rest] >= ctx.limit]
    exhausted = True
    try:
        ctx.dfs([v], W2, rest, ctx.support[v])
    except _Stop:
        exhausted = False
    return {
        "best": ctx.best,
        "cols": ctx.best_cols,
        "found": ctx.found,
        "count": ctx.count,
        "nodes": min(ctx.nodes, budget),
        "exhausted": exhausted,
    }


def _verify(cfg: SearchConfig, M: MatroidRep) -> None:
    if not (is_simple(M) and not coloops(M) and M.rank == cfg.r and is_k_paving(M, cfg.k)):
        raise AssertionError(f"search certificate failed re-verification: {M!r}")


def run_search(cfg: SearchConfig) -> SearchResult:
    """Run the configured search; the answer does not depend on ``cfg.workers``.

    The tree is split by the first added column into independent branches,
    each with an equal share of the node budget.  Branches share no state, and
    results are merged in branch order, so the earliest branch wins ties and
    its certificate is the lexicographically least one.
    """
    start = time.perf_counter()
    root = _Context(cfg, cfg.node_budget)
    W, cands = root.initial()
    try:
        root.visit([], 0)
    except _Stop:
        pass
    nb = len(cands)
    share = max(1, -(-cfg.node_budget // max(nb, 1)))
    tasks = [(cfg, i, share) for i in range(nb)]

    def stops(out) -> bool:
        if cfg.mode == "nonexistence":
            return out["found"] is not None
        return cfg.mode == "max-size" and cfg.target is not None and out["best"] >= cfg.target

    if cfg.workers > 1 and nb > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            outs = list(pool.map(_run_branch, tasks))
    else:
        outs = []
        for t in tasks:
            outs.append(_run_branch(t))
            if stops(outs[-1]):
                break
    # cut at the first stopping branch so every worker count reports the same
    for i, out in enumerate(outs):
        if stops(out):
            outs = outs[: i + 1]
            break

    best, cols = root.best, root.best_cols
    found = root.found
    count = root.count
    for out in outs:
        count += out["count"]
        if found is None and out["found"] is not None:
            found = out["found"]
        if out["best"] > best:
            best, cols = out["best"], out["cols"]
    nodes = root.nodes + sum(o["nodes"] for o in outs)
    exhausted = len(outs) == nb and all(o["exhausted"] for o in outs)

    if cfg.mode == "nonexistence":
        if found is not None:
            status, exhausted = "counterexample", False
            cols, best = found, len(root.base) + len(found)
        else:
            status = "confirmed" if exhausted else "inconclusive"
    elif cfg.mode == "max-size" and cfg.target is not None and best >= cfg.target:
        status, exhausted = "target-reached", False
    else:
        status = "exact" if exhausted else "bound not certified"

    cert = root.matroid(cols) if cols is not None else None
    if cert is not None:
        _verify(cfg, cert)
    return SearchResult(
        cfg,
        best if cert is not None else 0,
        cert,
        exhausted,
        nodes,
        status,
        count=count if cfg.mode == "enumerate" else None,
        wall_time=time.perf_counter() - start,
    )


def max_kpaving_size(cfg: SearchConfig) -> SearchResult:
    if cfg.mode != "max-size":
        raise SearchError("max_kpaving_size needs mode='max-size'")
    return run_search(cfg)


def nonexistence(cfg: SearchConfig) -> SearchResult:
    if cfg.mode != "nonexistence":
        raise SearchError("nonexistence needs mode='nonexistence'")
    return run_search(cfg)
