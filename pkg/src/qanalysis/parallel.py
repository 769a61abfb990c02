"""Pluggable execution strategies for the sharded loops of all engines.

A sharded run maps a shard function over work items and merges the
per-item (key, value) pairs into one dict. Values merge either by
bitwise OR (provenance bits) or by sum (emission counts); both merges
are commutative and associative, so the final dict is identical for
every strategy and worker count. This module owns the concurrency
contract: shared inputs are immutable during a run, each local
collection has exactly one writer, the shared accumulator serializes
inserts, and reduction-tree joins happen only after both children
completed.
"""
from __future__ import annotations

import heapq
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Optional, Sequence


class StrategyKind(Enum):
    SEQUENTIAL = "sequential"
    SHARED_ACCUMULATOR = "shared-accumulator"
    SPLIT_AND_MERGE = "split-and-merge"
    SHARDED_BOTTOM_UP = "sharded-bottom-up"


@dataclass(frozen=True)
class Strategy:
    kind: StrategyKind = StrategyKind.SEQUENTIAL
    worker_count: int = 1
    batch_size: int = 1024  # SHARED_ACCUMULATOR flush size

    def __post_init__(self):
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")

    @classmethod
    def sequential(cls) -> "Strategy":
        return cls(StrategyKind.SEQUENTIAL, 1)

    @classmethod
    def parse(cls, kind: str, workers: int, batch_size: int = 1024) -> "Strategy":
        return cls(StrategyKind(kind), workers, batch_size)

    @property
    def effective_workers(self) -> int:
        # worker_count 1 always degrades to plain sequential execution
        if self.kind is StrategyKind.SEQUENTIAL:
            return 1
        return self.worker_count


@dataclass
class ShardRunStats:
    strategy: str = "sequential"
    workers: int = 1
    merge_rounds: int = 0   # split-and-merge: max merges any element saw
    flushes: int = 0        # shared accumulator: batched lock acquisitions
    spill_runs: int = 0


ShardFn = Callable[[object], Iterable[tuple[int, int]]]


def _merge_pairs(target: dict, pairs: Iterable[tuple[int, int]], summing: bool) -> None:
    get = target.get
    if summing:
        for k, v in pairs:
            target[k] = get(k, 0) + v
    else:
        for k, v in pairs:
            target[k] = get(k, 0) | v


def _merge_dicts(a: dict, b: dict, summing: bool) -> dict:
    """Merge the smaller dict into the larger; returns the merged dict."""
    if len(a) < len(b):
        a, b = b, a
    get = a.get
    if summing:
        for k, v in b.items():
            a[k] = get(k, 0) + v
    else:
        for k, v in b.items():
            a[k] = get(k, 0) | v
    return a


def _chunks(items: Sequence, parts: int) -> list[Sequence]:
    """Static uniform split into contiguous chunks (may yield fewer parts)."""
    n = len(items)
    parts = min(parts, n) or 1
    size = (n + parts - 1) // parts
    return [items[k * size:(k + 1) * size] for k in range(parts) if items[k * size:(k + 1) * size]]


def run_sharded(
    work_items: Sequence,
    shard_fn: ShardFn,
    strategy: Optional[Strategy] = None,
    *,
    combine: str = "or",
    spill_dir=None,
) -> tuple[dict[int, int], ShardRunStats]:
    """Apply shard_fn to every item and merge the emitted (key, value) pairs.

    The result dict is identical for every strategy/worker count. A
    failing shard aborts the whole run with a diagnostic; no partial
    result is returned. `spill_dir` activates the on-disk sorted-run
    path of SHARDED_BOTTOM_UP.
    """
    if combine not in ("or", "sum"):
        raise ValueError(f"unknown combine mode {combine!r}")
    summing = combine == "sum"
    strategy = strategy or Strategy.sequential()
    workers = strategy.effective_workers
    stats = ShardRunStats(strategy=strategy.kind.value, workers=workers)

    if workers == 1:
        out: dict[int, int] = {}
        for item in work_items:
            _merge_pairs(out, shard_fn(item), summing)
        return out, stats

    chunks = _chunks(work_items, workers)

    def guarded(fn, *args):
        try:
            return fn(*args)
        except Exception as exc:  # noqa: BLE001 - rewrapped with context
            raise RuntimeError(f"shard worker failed: {exc}") from exc

    if strategy.kind is StrategyKind.SHARED_ACCUMULATOR:
        shared: dict[int, int] = {}
        lock = threading.Lock()
        flushes = [0]

        def accumulate(chunk):
            buf: list[tuple[int, int]] = []
            for item in chunk:
                buf.extend(shard_fn(item))
                if len(buf) >= strategy.batch_size:
                    with lock:
                        _merge_pairs(shared, buf, summing)
                        flushes[0] += 1
                    buf = []
            if buf:
                with lock:
                    _merge_pairs(shared, buf, summing)
                    flushes[0] += 1

        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(guarded, accumulate, c) for c in chunks]
            for f in futures:
                f.result()
        stats.flushes = flushes[0]
        return shared, stats

    if strategy.kind is StrategyKind.SPLIT_AND_MERGE:
        def collect(chunk) -> dict[int, int]:
            local: dict[int, int] = {}
            for item in chunk:
                _merge_pairs(local, shard_fn(item), summing)
            return local

        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(guarded, collect, c) for c in chunks]
            # (dict, rounds): rounds bounds how often any element was merged
            colls: list[tuple[dict, int]] = [(f.result(), 0) for f in futures]
            while len(colls) > 1:
                nxt = []
                merge_futures = []
                for k in range(0, len(colls) - 1, 2):
                    (a, ra), (b, rb) = colls[k], colls[k + 1]
                    merge_futures.append(
                        (pool.submit(guarded, _merge_dicts, a, b, summing), max(ra, rb) + 1))
                for fut, rounds in merge_futures:
                    nxt.append((fut.result(), rounds))
                if len(colls) % 2 == 1:
                    nxt.append(colls[-1])
                colls = nxt
        merged, rounds = colls[0] if colls else ({}, 0)
        stats.merge_rounds = rounds
        return merged, stats

    if strategy.kind is StrategyKind.SHARDED_BOTTOM_UP:
        if spill_dir is not None:
            return _run_spilled(chunks, shard_fn, workers, summing, spill_dir, stats, guarded)
        sink: list[list[tuple[int, int]]] = []
        sink_lock = threading.Lock()

        def stream(chunk):
            for item in chunk:
                pairs = list(shard_fn(item))
                if pairs:
                    with sink_lock:
                        sink.append(pairs)

        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(guarded, stream, c) for c in chunks]
            for f in futures:
                f.result()
        out = {}
        for pairs in sink:
            _merge_pairs(out, pairs, summing)
        return out, stats

    raise ValueError(f"unhandled strategy kind {strategy.kind}")


def _run_spilled(chunks, shard_fn, workers, summing, spill_dir, stats, guarded):
    """Share-nothing variant writing per-shard sorted runs to disk.

    Runs are text files of 'key value' lines sorted by key; a heap merge
    deduplicates them into the final dict.
    """
    os.makedirs(spill_dir, exist_ok=True)
    paths: list[str] = []
    paths_lock = threading.Lock()

    def spill(idx, chunk):
        local: dict[int, int] = {}
        for item in chunk:
            _merge_pairs(local, shard_fn(item), summing)
        path = os.path.join(spill_dir, f"run-{idx:04d}.tsv")
        with open(path, "w", encoding="utf-8") as fh:
            for k in sorted(local):
                fh.write(f"{k} {local[k]}\n")
        with paths_lock:
            paths.append(path)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(guarded, spill, i, c) for i, c in enumerate(chunks)]
        for f in futures:
            f.result()
    stats.spill_runs = len(paths)

    def read_run(path):
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                k, v = line.split()
                yield int(k), int(v)

    out: dict[int, int] = {}
    for k, v in heapq.merge(*(read_run(p) for p in sorted(paths))):
        if summing:
            out[k] = out.get(k, 0) + v
        else:
            out[k] = out.get(k, 0) | v
    return out, stats
