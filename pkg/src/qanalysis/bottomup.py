"""Cache-free engine: every edge derived from level q by direct scans.

Each q-simplex shard recomputes its cofaces and their supersimplex
closures straight from the adjacency sets (the |V| slow-down trade),
and each higher simplex shard re-enumerates its own faces for the
inclusion edges, so shards share nothing but the immutable graph and
the output sink. Peak retained state per shard is bounded by the
closures of one shard, never by the output size.
"""
from __future__ import annotations

import itertools
import os
import threading
from collections import deque
from typing import Optional

from .complex import FlagComplex, Simplex, build_flag_complex, coface_scan
from .graph import DirectedGraph
from .nearness import Definition, Direction
from .parallel import Strategy, run_sharded
from .qdigraph import PROV_I, PROV_II, QDigraph


def supersimplex_closure(
    simplex: Simplex, graph: DirectedGraph, d_max: Optional[int] = None
) -> list[Simplex]:
    """All strict supersimplices of `simplex`, up to dimension d_max.

    Breadth-first expansion: each frontier simplex tries every feasible
    vertex at every insertion position; a closure-local visited set
    suppresses the many duplicate discovery paths.
    """
    succ_sets = graph.succ_sets
    pred_sets = graph.pred_sets
    seen = {simplex}
    out: list[Simplex] = []
    queue = deque([simplex])
    while queue:
        s = queue.popleft()
        if d_max is not None and len(s) - 1 >= d_max:
            continue
        for p in range(len(s) + 1):
            cand = None
            for k, v in enumerate(s):
                side = succ_sets[v] if k < p else pred_sets[v]
                cand = side if cand is None else cand & side
                if not cand:
                    break
            if not cand:
                continue
            for w in sorted(cand):
                t = s[:p] + (w,) + s[p:]
                if t not in seen:
                    seen.add(t)
                    out.append(t)
                    queue.append(t)
    return out


class _PeakRecorder:
    """Thread-safe max tracker for per-shard retained item counts."""

    def __init__(self):
        self._lock = threading.Lock()
        self.peak = 0
        self.max_closure = 0

    def record(self, retained: int, largest_closure: int) -> None:
        with self._lock:
            if retained > self.peak:
                self.peak = retained
            if largest_closure > self.max_closure:
                self.max_closure = largest_closure


def get_q_bottomup(
    graph: DirectedGraph,
    q: int,
    direction: Direction,
    d_max: Optional[int] = None,
    *,
    complex_: Optional[FlagComplex] = None,
    strategy: Optional[Strategy] = None,
    spill_dir=None,
) -> QDigraph:
    """Novel-definition q-digraph computed without coface or up-set caches.

    Output simplex ids must match the other engines, so the canonical
    level enumeration still runs once (or is passed in); the shard work
    itself only touches the graph. The hat definition is unsupported
    here.
    """
    if q < 0:
        raise ValueError("q must be >= 0")
    if direction.definition is not Definition.NOVEL:
        raise ValueError("bottom-up supports only the novel definition")
    ri, rj = direction.resolve_novel(q)
    if complex_ is None:
        complex_ = build_flag_complex(graph, d_max)
    cx = complex_
    stride = cx.stride
    levels = cx.levels
    offsets = cx.offsets
    closure_cap = d_max if d_max is not None else None
    peaks = _PeakRecorder()

    def fid_of(s: Simplex) -> int:
        return offsets[len(s) - 1] + cx.index[len(s) - 1][s]

    def shard_ii(alpha: Simplex):
        cof_i = coface_scan(alpha, ri, graph)
        cof_j = cof_i if rj == ri else coface_scan(alpha, rj, graph)
        if not cof_i or not cof_j:
            return ()
        closures: dict[Simplex, list[int]] = {}
        retained = len(cof_i) + len(cof_j)
        largest = 0
        for mu in itertools.chain(cof_i, cof_j):
            if mu in closures:
                continue
            closure = [fid_of(mu)]
            closure.extend(fid_of(t) for t in supersimplex_closure(mu, graph, closure_cap))
            closures[mu] = closure
            retained += len(closure)
            largest = max(largest, len(closure))
        peaks.record(retained, largest)
        pairs = []
        for ms in cof_i:
            closure_s = closures[ms]
            for mt in cof_j:
                closure_t = closures[mt]
                for s in closure_s:
                    base = s * stride
                    for t in closure_t:
                        if s != t:
                            pairs.append((base + t, PROV_II))
        return pairs

    def shard_i(item: tuple[int, int]):
        p, k = item
        tau = levels[p][k]
        tau_key = offsets[p] + k
        pairs = []
        for d in range(q, p):
            face_index = cx.index[d]
            face_base = offsets[d]
            for f in itertools.combinations(tau, d + 1):
                pairs.append(((face_base + face_index[f]) * stride + tau_key, PROV_I))
        return pairs

    alphas = list(levels[q]) if q < len(levels) else []
    tau_items = [(p, k) for p in range(q + 1, len(levels)) for k in range(len(levels[p]))]

    spill_ii = spill_i = None
    if spill_dir is not None:
        spill_ii = os.path.join(spill_dir, "criterion-ii")
        spill_i = os.path.join(spill_dir, "criterion-i")
    edges_ii, _ = run_sharded(alphas, shard_ii, strategy, combine="or", spill_dir=spill_ii)
    edges_i, _ = run_sharded(tau_items, shard_i, strategy, combine="or", spill_dir=spill_i)

    edges = edges_i
    get = edges.get
    for key in edges_ii:
        edges[key] = get(key, 0) | PROV_II
    g = QDigraph(cx, q, direction, edges)
    g.stats.update(peak_shard_items=peaks.peak, max_closure=peaks.max_closure)
    return g
