"""Sweep drivers: run registered checks over function populations.

Results are aggregated with order-independent reductions (counts, plus
directional extremes with a total tie-break on the serialized table),
so reports are bit-identical regardless of worker count.
"""

from __future__ import annotations

import multiprocessing
import os
from dataclasses import dataclass
from typing import Optional, Sequence

from ..build import build_family
from ..core import TruthTable
from ..families import make_random
from .registry import BoolCtx, CheckReport, get_check, run_check

_MASK64 = (1 << 64) - 1

# Exhaustive enumeration of all 2^(2^n) tables is desk-scale only up to
# n = 4 (65,536 functions); n = 5 would be 2^32.
EXHAUSTIVE_CAP = 4

MAX_STORED_FAILURES = 20


def derive_seed(seed: int, index: int) -> int:
    """SplitMix64-style per-index stream so chunking cannot change draws."""
    x = (seed + 0x9E3779B97F4A7C15 * (index + 1)) & _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    x ^= x >> 31
    return x


@dataclass(frozen=True)
class ExhaustiveGen:
    """Every truth table at dimension n."""

    n: int

    def describe(self) -> dict:
        return {"kind": "exhaustive", "n": self.n}


@dataclass(frozen=True)
class RandomGen:
    """Seeded uniform truth tables; deterministic per (seed, index)."""

    n: int
    count: int
    seed: int

    def describe(self) -> dict:
        return {"kind": "random", "n": self.n, "count": self.count,
                "seed": self.seed}


@dataclass(frozen=True)
class FamilyGen:
    """A single constructed family member."""

    name: str
    params: dict

    def describe(self) -> dict:
        shown = {k: v for k, v in self.params.items()
                 if not isinstance(v, TruthTable)}
        return {"kind": "family", "name": self.name, "params": shown}


@dataclass(frozen=True)
class ExplicitGen:
    """A fixed tuple of tables, given as (n, bits) pairs."""

    tables: tuple

    @classmethod
    def of(cls, *tables: TruthTable) -> "ExplicitGen":
        return cls(tuple((t.n, t.bits) for t in tables))

    def describe(self) -> dict:
        return {"kind": "explicit", "count": len(self.tables)}


class _Agg:
    """Mergeable per-check aggregate."""

    __slots__ = ("counts", "extreme", "value", "witness")

    def __init__(self, extreme: Optional[str]):
        self.counts = {"pass": 0, "fail": 0, "skipped": 0, "warn": 0}
        self.extreme = extreme
        self.value: Optional[float] = None
        self.witness: Optional[str] = None

    def _consider(self, v: Optional[float], bfn1: Optional[str]) -> None:
        if v is None or self.extreme is None:
            return
        better = (
            self.value is None
            or (self.extreme == "max" and v > self.value)
            or (self.extreme == "min" and v < self.value)
            or (v == self.value and bfn1 is not None
                and (self.witness is None or bfn1 < self.witness))
        )
        if better:
            self.value = v
            self.witness = bfn1

    def add(self, report: CheckReport, bfn1: Optional[str]) -> None:
        self.counts[report.status] += 1
        self._consider(report.observed_constant, bfn1)

    def merge(self, other: "_Agg") -> None:
        for k, v in other.counts.items():
            self.counts[k] += v
        self._consider(other.value, other.witness)

    def to_json(self) -> dict:
        out: dict = dict(self.counts)
        out["extremal"] = (
            None if self.value is None
            else {"value": self.value, "witness_bfn1": self.witness}
        )
        return out


@dataclass
class SweepReport:
    scope: dict
    check_ids: list
    total_functions: int
    aggregates: dict
    failures: list
    rows: Optional[list]

    @property
    def failed(self) -> bool:
        return any(a.counts["fail"] for a in self.aggregates.values())

    def to_json(self) -> dict:
        return {
            "schema": "report-v1",
            "scope": self.scope,
            "total_functions": self.total_functions,
            "checks": {cid: self.aggregates[cid].to_json()
                       for cid in self.check_ids},
            "failures": self.failures,
        }


def _chunk_tables(args):
    """Worker body: run the per-function checks over one chunk."""
    kind, n, payload, check_ids, params, collect_rows = args
    aggs = {cid: _Agg(get_check(cid).extreme) for cid in check_ids}
    failures = []
    rows = [] if collect_rows else None
    if kind == "exhaustive":
        start, stop = payload
        iterator = ((n, bits) for bits in range(start, stop))
    elif kind == "random":
        seed, start, count = payload
        iterator = (
            (n, make_random(n, derive_seed(seed, start + i)).bits)
            for i in range(count)
        )
    else:
        iterator = ((n, bits) for bits in payload)
    for fn_n, bits in iterator:
        ctx = BoolCtx(fn_n, bits)
        bfn1 = None
        for cid in check_ids:
            report = run_check(cid, ctx, params)
            if report.status != "skipped" and bfn1 is None:
                bfn1 = ctx.bfn1()
            aggs[cid].add(report, bfn1)
            if report.status == "fail" and len(failures) < MAX_STORED_FAILURES:
                failures.append(report.to_json())
            if rows is not None:
                rows.append((bfn1 if bfn1 is not None else ctx.bfn1(), cid,
                             report.status, report.slack,
                             report.observed_constant))
    return aggs, failures, rows


def _make_chunks(generator, workers: int):
    if isinstance(generator, ExhaustiveGen):
        total = 1 << (1 << generator.n)
        step = max(512, total // (workers * 8) or 1)
        return total, [
            ("exhaustive", generator.n, (start, min(start + step, total)))
            for start in range(0, total, step)
        ]
    if isinstance(generator, RandomGen):
        total = generator.count
        step = max(64, total // (workers * 8) or 1)
        return total, [
            ("random", generator.n,
             (generator.seed, start, min(step, total - start)))
            for start in range(0, total, step)
        ]
    if isinstance(generator, FamilyGen):
        table = build_family(generator.name, generator.params)
        return 1, [("explicit", table.n, [table.bits])]
    if isinstance(generator, ExplicitGen):
        chunks = [("explicit", n, [bits]) for n, bits in generator.tables]
        return len(generator.tables), chunks
    raise ValueError(f"unknown generator {generator!r}")


def sweep(check_ids: Sequence[str], generator, *, params: Optional[dict] = None,
          parallel: Optional[int] = None, collect_rows: bool = False,
          ) -> SweepReport:
    """Run every applicable check on every generated function.

    ``parallel`` defaults to the machine CPU count; results do not
    depend on it.  Function-independent checks run once, not per
    function.
    """
    params = dict(params or {})
    check_ids = list(check_ids)
    for cid in check_ids:
        get_check(cid)  # fail fast on unknown ids
    if isinstance(generator, ExhaustiveGen) and generator.n > EXHAUSTIVE_CAP:
        raise ValueError(
            f"exhaustive sweeps are capped at n = {EXHAUSTIVE_CAP}"
        )
    scalar_ids = [cid for cid in check_ids if not get_check(cid).per_function]
    table_ids = [cid for cid in check_ids if get_check(cid).per_function]

    workers = os.cpu_count() or 1 if parallel is None else max(1, parallel)
    total, chunks = _make_chunks(generator, workers)
    job = [(kind, n, payload, table_ids, params, collect_rows)
           for kind, n, payload in chunks]

    aggs = {cid: _Agg(get_check(cid).extreme) for cid in check_ids}
    failures: list = []
    rows: Optional[list] = [] if collect_rows else None

    if workers > 1 and len(job) > 1:
        with multiprocessing.Pool(workers) as pool:
            parts = pool.imap(_chunk_tables, job)
            for part_aggs, part_failures, part_rows in parts:
                for cid, agg in part_aggs.items():
                    aggs[cid].merge(agg)
                for f in part_failures:
                    if len(failures) < MAX_STORED_FAILURES:
                        failures.append(f)
                if rows is not None and part_rows:
                    rows.extend(part_rows)
    else:
        for args in job:
            part_aggs, part_failures, part_rows = _chunk_tables(args)
            for cid, agg in part_aggs.items():
                aggs[cid].merge(agg)
            for f in part_failures:
                if len(failures) < MAX_STORED_FAILURES:
                    failures.append(f)
            if rows is not None and part_rows:
                rows.extend(part_rows)

    for cid in scalar_ids:
        report = run_check(cid, None, params)
        aggs[cid].add(report, None)
        if report.status == "fail" and len(failures) < MAX_STORED_FAILURES:
            failures.append(report.to_json())
        if rows is not None:
            rows.append(("-", cid, report.status, report.slack,
                         report.observed_constant))

    return SweepReport(
        scope=generator.describe(),
        check_ids=check_ids,
        total_functions=total,
        aggregates=aggs,
        failures=failures,
        rows=rows,
    )
