"""Output-sensitive three-phase engine for both nearness definitions.

Phase 1 walks every simplex above level q top-down, emitting inclusion
edges from its faces and filling the up-set cache (strict supersimplex
lists). Phase 2 registers cofaces under their face-map images. Phase 3
starts from the shared q-simplices and propagates the bottom-level
criterion-II pairs upward through the cached up-sets; the reflexive
closure folds the (q+1)-level edges into the same product, so one loop
nest covers all criterion-II edges.

Emission counts per edge fall out of the deduplicating map for free and
are therefore always collected (they are additive across shards, hence
strategy-invariant).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .complex import FlagComplex, Simplex, face, hat_face
from .nearness import Definition, Direction
from .parallel import Strategy, run_sharded
from .qdigraph import PROV_I, PROV_II, QDigraph


@dataclass
class CofaceCache:
    """Coface lists keyed by the flat id of the face-map image.

    Novel mode registers the (q+1)-simplices under their d_i / d_j
    faces (keys are q-simplices); hat mode registers everything above
    level q under its clamped face (keys range over Σ_{>=q}).
    """

    complex: FlagComplex
    q: int
    direction: Direction
    by_i: dict[int, list[int]] = field(default_factory=dict)
    by_j: dict[int, list[int]] = field(default_factory=dict)

    def cofaces_of(self, simplex: Simplex, which: str = "i") -> list[Simplex]:
        """Registered cofaces of a key simplex, as tuples (test helper)."""
        cache = self.by_i if which == "i" else self.by_j
        fids = cache.get(self.complex.flat_id(simplex), [])
        return [self.complex.simplex_of_flat(f) for f in fids]


@dataclass
class PropagationResult:
    counts: dict[int, int]          # packed edge key -> emission count
    emissions: int = 0
    max_dup: int = 0


def compute_inclusions(
    complex_: FlagComplex, q: int, cache_dims: frozenset[int] | set[int] = frozenset()
) -> tuple[set[int], dict[int, list[int]]]:
    """Single top-down pass emitting all strict inclusion edges over Σ_{>=q}.

    For every simplex above level q, each face of dimension q up to one
    below its own is emitted as an edge into it; faces whose dimension
    lies in `cache_dims` get the simplex appended to their up-set. No
    pairwise simplex comparison happens anywhere.
    """
    edges: set[int] = set()
    upsets: dict[int, list[int]] = {}
    stride = complex_.stride
    levels = complex_.levels
    index = complex_.index
    offsets = complex_.offsets
    for p in range(q + 1, len(levels)):
        tau_base = offsets[p]
        for k, tau in enumerate(levels[p]):
            tau_key = (tau_base + k)
            for d in range(q, p):
                face_index = index[d]
                face_base = offsets[d]
                cache_this = d in cache_dims
                for f in itertools.combinations(tau, d + 1):
                    fid = face_base + face_index[f]
                    edges.add(fid * stride + tau_key)
                    if cache_this:
                        upsets.setdefault(fid, []).append(tau_key)
    return edges, upsets


def build_coface_cache(complex_: FlagComplex, q: int, direction: Direction) -> CofaceCache:
    """Register cofaces under their face-map images; linear in registrations."""
    cache = CofaceCache(complex_, q, direction)
    levels = complex_.levels
    offsets = complex_.offsets
    if direction.definition is Definition.NOVEL:
        ri, rj = direction.resolve_novel(q)
        if q + 1 >= len(levels):
            return cache
        q_index = complex_.index[q]
        q_base = offsets[q]
        base = offsets[q + 1]
        for k, s in enumerate(levels[q + 1]):
            sid = base + k
            cache.by_i.setdefault(q_base + q_index[face(s, ri)], []).append(sid)
            if rj == ri:
                continue
            cache.by_j.setdefault(q_base + q_index[face(s, rj)], []).append(sid)
        if rj == ri:
            cache.by_j = cache.by_i
        return cache

    same = direction.i == direction.j
    for p in range(q + 1, len(levels)):
        base = offsets[p]
        key_index = complex_.index[p - 1]
        key_base = offsets[p - 1]
        for k, s in enumerate(levels[p]):
            sid = base + k
            cache.by_i.setdefault(key_base + key_index[hat_face(s, direction.i)], []).append(sid)
            if not same:
                cache.by_j.setdefault(key_base + key_index[hat_face(s, direction.j)], []).append(sid)
    if same:
        cache.by_j = cache.by_i
    return cache


def compute_E_q1(complex_: FlagComplex, q: int, cache: CofaceCache) -> set[int]:
    """Criterion-II edges among (q+1)-simplices: the per-key coface products."""
    out: set[int] = set()
    stride = complex_.stride
    by_j = cache.by_j
    for alpha, lst_i in cache.by_i.items():
        lst_j = by_j.get(alpha)
        if not lst_j:
            continue
        for a in lst_i:
            base = a * stride
            for b in lst_j:
                if a != b:
                    out.add(base + b)
    return out


def propagate_up(
    complex_: FlagComplex,
    q: int,
    cache: CofaceCache,
    upsets: dict[int, list[int]],
    *,
    strategy: Optional[Strategy] = None,
) -> PropagationResult:
    """All criterion-II edges: coface products expanded through up-sets.

    delta*(mu) is the reflexive closure {mu} + upset(mu), so the
    bottom-level product is reproduced by the same loop. Self-loops are
    dropped. Every (alpha, mu_s, mu_t, s, t) combination emits exactly
    once, so emission counts are exact under any strategy.
    """
    stride = complex_.stride
    by_j = cache.by_j
    empty: list[int] = []

    def shard(alpha_item: tuple[int, list[int]]):
        alpha, lst_i = alpha_item
        lst_j = by_j.get(alpha)
        if not lst_j:
            return ()
        closures_j = [(b, *upsets.get(b, empty)) for b in lst_j]
        pairs = []
        for a in lst_i:
            closure_a = (a, *upsets.get(a, empty))
            for closure_b in closures_j:
                for s in closure_a:
                    base = s * stride
                    for t in closure_b:
                        if s != t:
                            pairs.append((base + t, 1))
        return pairs

    counts, _ = run_sharded(list(cache.by_i.items()), shard, strategy, combine="sum")
    emissions = sum(counts.values())
    max_dup = max(counts.values(), default=0)
    return PropagationResult(counts, emissions, max_dup)


def _merge_phases(
    complex_: FlagComplex,
    q: int,
    direction: Direction,
    incl: set[int],
    prop: PropagationResult,
    incl_upsets_len: int,
) -> QDigraph:
    edges = dict.fromkeys(incl, PROV_I)
    get = edges.get
    for key in prop.counts:
        edges[key] = get(key, 0) | PROV_II
    g = QDigraph(complex_, q, direction, edges)
    g.stats.update(
        inclusion_edges=len(incl),
        emissions=prop.emissions,
        max_dup=prop.max_dup,
        upset_keys=incl_upsets_len,
    )
    return g


def get_q_hybrid(
    complex_: FlagComplex,
    q: int,
    direction: Direction,
    *,
    strategy: Optional[Strategy] = None,
    inclusions: Optional[tuple[set[int], dict[int, list[int]]]] = None,
) -> QDigraph:
    """Three-phase computation of the novel-definition q-digraph.

    `inclusions` accepts a precomputed compute_inclusions(Σ, q, {q+1})
    result; phase 1 does not depend on the direction, so callers
    sweeping directions can share it.
    """
    if q < 0:
        raise ValueError("q must be >= 0")
    if direction.definition is not Definition.NOVEL:
        raise ValueError("get_q_hybrid computes the novel definition; see get_qhat_hybrid")
    direction.validate_for(q)
    incl, upsets = inclusions if inclusions is not None else compute_inclusions(
        complex_, q, {q + 1})
    cache = build_coface_cache(complex_, q, direction)
    prop = propagate_up(complex_, q, cache, upsets, strategy=strategy)
    return _merge_phases(complex_, q, direction, incl, prop, len(upsets))


def get_qhat_hybrid(
    complex_: FlagComplex,
    q: int,
    direction: Direction,
    *,
    strategy: Optional[Strategy] = None,
    inclusions: Optional[tuple[set[int], dict[int, list[int]]]] = None,
) -> QDigraph:
    """Hat-definition variant: iteration order of inclusions and cofaces flips.

    Cofaces are cached for everything above level q, keyed by the
    clamped face; the upward pass walks delta*(alpha) for each shared
    q-simplex and multiplies the coface lists found there.
    """
    if q < 0:
        raise ValueError("q must be >= 0")
    if direction.definition is not Definition.HAT:
        raise ValueError("get_qhat_hybrid computes the hat definition")
    incl, upsets = inclusions if inclusions is not None else compute_inclusions(
        complex_, q, {q})
    cache = build_coface_cache(complex_, q, direction)
    stride = complex_.stride
    by_i, by_j = cache.by_i, cache.by_j
    empty: list[int] = []

    alphas = [complex_.offsets[q] + k for k in range(len(complex_.levels[q]))] \
        if q < len(complex_.levels) else []

    def shard(alpha: int):
        closure = (alpha, *upsets.get(alpha, empty))
        sources: list[int] = []
        targets: list[int] = []
        for mu in closure:
            sources.extend(by_i.get(mu, empty))
            targets.extend(by_j.get(mu, empty))
        if not sources or not targets:
            return ()
        pairs = []
        for s in sources:
            base = s * stride
            for t in targets:
                if s != t:
                    pairs.append((base + t, 1))
        return pairs

    counts, _ = run_sharded(alphas, shard, strategy, combine="sum")
    prop = PropagationResult(counts, sum(counts.values()), max(counts.values(), default=0))
    return _merge_phases(complex_, q, direction, incl, prop, len(upsets))
