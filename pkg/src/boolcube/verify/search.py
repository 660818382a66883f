"""Tightness search: hunt for functions extremizing a conjecture ratio.

Every measured value is an output, never an assertion; the leaderboard
is deterministic under a fixed strategy and seed, with ties broken by
the serialized table bytes, and independent of the worker count.
"""

from __future__ import annotations

import math
import multiprocessing
import os
from dataclasses import dataclass, field
from typing import Optional

from .. import families
from ..core import DIMENSION_CAP, TruthTable
from .registry import BoolCtx, ctx_entropy_bits
from .sweep import ExhaustiveGen, RandomGen, derive_seed

LEADERBOARD_SIZE = 10

OBJECTIVE_ALIASES = {
    "fei-ratio": "fei-ratio",
    "fei_ratio": "fei-ratio",
    "kkl-edge": "kkl-edge-constant",
    "kkl-edge-constant": "kkl-edge-constant",
    "kkl_edge_constant": "kkl-edge-constant",
    "fmei-degree": "fmei-degree-constant",
    "fmei-degree-constant": "fmei-degree-constant",
    "fmei_degree_constant": "fmei-degree-constant",
}


def objective_value(objective: str, ctx: BoolCtx):
    """(value, metrics) for one function, or None when inapplicable."""
    den = 4 ** ctx.n
    if objective == "fei-ratio":
        if ctx.is_constant:
            return None
        ent = ctx_entropy_bits(ctx)
        total = ctx.total_influence_num / den
        return ent / total, {"ent_bits": ent, "influence": total}
    if objective == "kkl-edge-constant":
        if not ctx.mean_zero:
            return None
        total = ctx.total_influence_num / den
        max_inf = max(ctx.per_bit_num(k) for k in range(ctx.n)) / den
        return -math.log(max_inf) / total, {
            "max_influence": max_inf, "influence": total}
    if objective == "fmei-degree-constant":
        if ctx.is_constant:
            return None
        deg = ctx.degree
        max_coef = ctx.max_coef_num / (1 << ctx.n)
        return -math.log(max_coef) / deg, {
            "max_coef": max_coef, "degree": deg}
    raise ValueError(f"unknown objective {objective!r}")


@dataclass(frozen=True)
class ComposeGreedyStrategy:
    """Grow candidates by block-composing a seed pool, beam-limited.

    Each round composes every ordered pair from the current pool and
    keeps the best ``beam`` by objective; candidate dimension is capped
    so exact analysis stays cheap.
    """

    depth: int = 2
    beam: int = 6
    n_cap: int = 12

    def describe(self) -> dict:
        return {"kind": "compose-greedy", "depth": self.depth,
                "beam": self.beam, "n_cap": self.n_cap}


def _default_seed_pool() -> list:
    return [
        families.make_example_h(),
        families.make_majority(3),
        families.make_and(2),
        families.make_or(2),
        families.make_parity(2, 0b11),
    ]


@dataclass
class Leaderboard:
    objective: str
    strategy: dict
    evaluated: int
    entries: list = field(default_factory=list)
    # full candidate pool, bfn1 -> (value, n, metrics); not serialized
    pool: dict = field(default_factory=dict, repr=False)

    def to_json(self) -> dict:
        return {
            "schema": "report-v1",
            "objective": self.objective,
            "strategy": self.strategy,
            "evaluated": self.evaluated,
            "leaderboard": self.entries,
        }


class _Board:
    def __init__(self, objective: str):
        self.objective = objective
        self.rows: dict = {}
        self.evaluated = 0

    def consider(self, table: TruthTable) -> Optional[float]:
        ctx = BoolCtx.from_table(table)
        got = objective_value(self.objective, ctx)
        self.evaluated += 1
        if got is None:
            return None
        value, metrics = got
        bfn1 = ctx.bfn1()
        if bfn1 not in self.rows:
            self.rows[bfn1] = (value, table.n, metrics)
        return value

    def absorb(self, scored_rows) -> None:
        for bfn1, row in scored_rows:
            self.evaluated += 1
            if row is not None and bfn1 not in self.rows:
                self.rows[bfn1] = row

    def top(self) -> list:
        ordered = sorted(self.rows.items(),
                         key=lambda kv: (-kv[1][0], kv[0]))
        out = []
        for rank, (bfn1, (value, n, metrics)) in enumerate(
                ordered[:LEADERBOARD_SIZE], start=1):
            out.append({"rank": rank, "value": value, "n": n,
                        "bfn1": bfn1, "metrics": metrics})
        return out


def _score_chunk(args):
    objective, rows = args
    out = []
    for n, bits in rows:
        ctx = BoolCtx(n, bits)
        got = objective_value(objective, ctx)
        if got is None:
            out.append((None, None))
        else:
            value, metrics = got
            out.append((ctx.bfn1(), (value, n, metrics)))
    return out


def _run_candidates(board: _Board, candidates, parallel: Optional[int]) -> None:
    workers = os.cpu_count() or 1 if parallel is None else max(1, parallel)
    if workers <= 1 or len(candidates) < 2 * workers:
        for n, bits in candidates:
            board.consider(TruthTable(n, bits))
        return
    step = max(64, len(candidates) // (workers * 8) or 1)
    chunks = [(board.objective, candidates[i:i + step])
              for i in range(0, len(candidates), step)]
    with multiprocessing.Pool(workers) as pool:
        for scored in pool.imap(_score_chunk, chunks):
            board.absorb(scored)


def tightness_search(objective: str, strategy, budget: Optional[int] = None,
                     parallel: Optional[int] = None) -> Leaderboard:
    """Measure the objective over a strategy's candidates; top 10 kept."""
    objective = OBJECTIVE_ALIASES.get(objective)
    if objective is None:
        raise ValueError("unknown objective")
    if budget is not None and (not isinstance(budget, int) or budget <= 0):
        raise ValueError(f"invalid budget {budget!r}")
    board = _Board(objective)

    if isinstance(strategy, ExhaustiveGen):
        from .sweep import EXHAUSTIVE_CAP
        if strategy.n > EXHAUSTIVE_CAP:
            raise ValueError(f"exhaustive search is capped at n = {EXHAUSTIVE_CAP}")
        total = 1 << (1 << strategy.n)
        limit = total if budget is None else min(total, budget)
        _run_candidates(board, [(strategy.n, bits) for bits in range(limit)],
                        parallel)
    elif isinstance(strategy, RandomGen):
        limit = strategy.count if budget is None else min(strategy.count, budget)
        _run_candidates(
            board,
            [(strategy.n,
              families.make_random(strategy.n, derive_seed(strategy.seed, i)).bits)
             for i in range(limit)],
            parallel)
    elif isinstance(strategy, ComposeGreedyStrategy):
        # beam growth is inherently sequential; parallelism is accepted
        # for interface stability and has no effect here
        _compose_greedy(board, strategy, budget)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    return Leaderboard(
        objective=objective,
        strategy=strategy.describe(),
        evaluated=board.evaluated,
        entries=board.top(),
        pool=dict(board.rows),
    )


def _compose_greedy(board: _Board, strategy: ComposeGreedyStrategy,
                    budget: Optional[int]) -> None:
    pool = _default_seed_pool()
    scored = []
    seen = set()
    for t in pool:
        key = (t.n, t.bits)
        if key in seen:
            continue
        seen.add(key)
        value = board.consider(t)
        if value is not None:
            scored.append((value, t))
    remaining = math.inf if budget is None else budget - board.evaluated
    current = list(pool)
    for _ in range(strategy.depth):
        candidates = []
        for outer in current:
            for inner in current:
                n = outer.n * inner.n
                if n > min(strategy.n_cap, DIMENSION_CAP):
                    continue
                candidates.append(families.compose(outer, inner))
        # Deterministic evaluation order regardless of shaping above.
        candidates.sort(key=lambda t: (t.n, t.bits))
        fresh = []
        for t in candidates:
            key = (t.n, t.bits)
            if key in seen:
                continue
            if remaining <= 0:
                break
            seen.add(key)
            remaining -= 1
            value = board.consider(t)
            if value is not None:
                scored.append((value, t))
                fresh.append(t)
        scored.sort(key=lambda vt: (-vt[0], vt[1].n, vt[1].bits))
        current = [t for _, t in scored[:strategy.beam]] + pool
        if remaining <= 0:
            break
