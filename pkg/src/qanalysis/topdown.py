"""Quadratic all-pairs engine; the correctness oracle for the others.

Every ordered pair of simplices in Σ_{>=q} is checked for nearness.
The only optimization is the shared-(q+1)-vertex gate, evaluated over
uint64 vertex bitsets with numpy so the all-pairs scan stays usable at
desk scale; pairs passing the gate get the full per-pair criteria. The
pair-check counter grows by N-1 per processed source row, so it always
measures the complete quadratic scan.
"""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .complex import FlagComplex, Simplex, face, faces_of_dim, hat_face
from .complex import includes as tuple_includes
from .nearness import Definition, Direction
from .parallel import Strategy, run_sharded
from .qdigraph import PROV_I, PROV_II, QDigraph

_ROW_BLOCK = 128


def _vertex_masks(simplices: Sequence[Simplex], n_vertices: int) -> np.ndarray:
    words = max(1, (n_vertices + 63) // 64)
    masks = np.zeros((len(simplices), words), dtype=np.uint64)
    for row, s in enumerate(simplices):
        for v in s:
            masks[row, v >> 6] |= np.uint64(1 << (v & 63))
    return masks


def _int_masks(simplices: Sequence[Simplex]) -> list[int]:
    out = []
    for s in simplices:
        m = 0
        for v in s:
            m |= 1 << v
        out.append(m)
    return out


def _face_set_table(tuples, q, directions):
    """Per-simplex face-map image sets for every index used by `directions`.

    Images are interned as small ints (one intern table, so ids compare
    across indices). Simplices of dimension q get empty sets: criterion
    II needs dimension >= q+1 on both sides.
    """
    definition = directions[0].definition
    if definition is Definition.NOVEL:
        index_pairs = [d.resolve_novel(q) for d in directions]
    else:
        index_pairs = [(d.i, d.j) for d in directions]
    wanted = sorted({x for pair in index_pairs for x in pair}, key=float)

    intern: dict[Simplex, int] = {}

    def intern_all(faces_iter) -> frozenset[int]:
        ids = []
        for t in faces_iter:
            h = intern.get(t)
            if h is None:
                h = len(intern)
                intern[t] = h
            ids.append(h)
        return frozenset(ids)

    table: dict[object, list[frozenset[int]]] = {}
    empty = frozenset()
    for idx in wanted:
        col = []
        for s in tuples:
            if len(s) < q + 2:
                col.append(empty)
            elif definition is Definition.NOVEL:
                col.append(intern_all(face(m, idx) for m in faces_of_dim(s, q + 1)))
            else:
                col.append(intern_all(faces_of_dim(hat_face(s, idx), q)))
        table[idx] = col
    return [(table[i], table[j]) for i, j in index_pairs]


def get_q_topdown(
    complex_: FlagComplex,
    q: int,
    direction: Direction,
    *,
    strategy: Optional[Strategy] = None,
) -> QDigraph:
    """All-pairs nearness scan over Σ_{>=q} for one direction."""
    return get_q_topdown_multi(complex_, q, [direction], strategy=strategy)[0]


def get_q_topdown_multi(
    complex_: FlagComplex,
    q: int,
    directions: Sequence[Direction],
    *,
    strategy: Optional[Strategy] = None,
) -> list[QDigraph]:
    """All-pairs scan shared across several directions of one definition.

    The vertex-overlap gate and the inclusion checks do not depend on
    (i, j), so a direction batch amortizes the dominant cost. Results
    are identical to one get_q_topdown call per direction.
    """
    if q < 0:
        raise ValueError("q must be >= 0")
    if not directions:
        return []
    definition = directions[0].definition
    if any(d.definition is not definition for d in directions):
        raise ValueError("direction batch must share one definition")
    for d in directions:
        d.validate_for(q)

    items = list(complex_.iter_from(q))
    n = len(items)
    digraphs = [QDigraph(complex_, q, d) for d in directions]
    for g in digraphs:
        g.stats.update(pair_checks=0, gate_hits=0)
    if n == 0:
        return digraphs

    fids = [fid for fid, _ in items]
    tuples = [s for _, s in items]
    stride = complex_.stride
    n_vertices = len(complex_.levels[0])
    gate_masks = _vertex_masks(tuples, n_vertices)
    words = gate_masks.shape[1]
    int_masks = _int_masks(tuples)
    dir_lookup = _face_set_table(tuples, q, directions)
    n_dirs = len(directions)

    def scan_block(block: tuple[int, int]):
        lo, hi = block
        counts = np.zeros((hi - lo, n), dtype=np.uint16)
        for w in range(words):
            counts += np.bitwise_count(gate_masks[lo:hi, w, None] & gate_masks[None, :, w])
        rows, cols = np.nonzero(counts > q)
        pairs: list[tuple[int, int, int]] = []
        checks = (hi - lo) * (n - 1)
        hits = 0
        for r, c in zip(rows.tolist(), cols.tolist()):
            a = lo + r
            if a == c:
                continue
            hits += 1
            s, t = tuples[a], tuples[c]
            inc = PROV_I if (int_masks[a] & int_masks[c] == int_masks[a]
                             and tuple_includes(s, t)) else 0
            key = fids[a] * stride + fids[c]
            for di in range(n_dirs):
                ai, aj = dir_lookup[di]
                bits = inc
                if ai[a] and not ai[a].isdisjoint(aj[c]):
                    bits |= PROV_II
                if bits:
                    pairs.append((di, key, bits))
        return pairs, checks, hits

    blocks = [(lo, min(lo + _ROW_BLOCK, n)) for lo in range(0, n, _ROW_BLOCK)]
    per_dir_edges: list[dict[int, int]] = [{} for _ in directions]
    total_checks = 0
    total_hits = 0

    if strategy is None or strategy.effective_workers == 1:
        for block in blocks:
            pairs, checks, hits = scan_block(block)
            total_checks += checks
            total_hits += hits
            for di, key, bits in pairs:
                per_dir_edges[di][key] = bits
    else:
        # run_sharded merges flat (key, value) pairs: fold the direction
        # index into the key and carry the counters as two extra keys.
        # Every ordered pair belongs to exactly one row block, so the
        # summing merge never combines two emissions of one edge.
        pair_space = stride * stride
        counter_base = pair_space * n_dirs

        def shard(block):
            pairs, checks, hits = scan_block(block)
            out = [(di * pair_space + key, bits) for di, key, bits in pairs]
            out.append((counter_base, checks))
            out.append((counter_base + 1, hits))
            return out

        merged, _ = run_sharded(blocks, shard, strategy, combine="sum")
        total_checks = merged.pop(counter_base, 0)
        total_hits = merged.pop(counter_base + 1, 0)
        for folded, bits in merged.items():
            di, key = divmod(folded, pair_space)
            per_dir_edges[di][key] = bits

    for di, g in enumerate(digraphs):
        g.edges = per_dir_edges[di]
        g.stats.update(pair_checks=total_checks, gate_hits=total_hits)
    return digraphs
