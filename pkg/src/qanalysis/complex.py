"""Directed flag complexes and ordered-simplex primitives.

A simplex is a plain tuple of distinct vertex ids, totally ordered by
the edge relation of its graph: every earlier vertex has an edge to
every later one. Every sub-tuple of a simplex is itself a simplex, so
the face operations below are pure tuple manipulations.
"""
from __future__ import annotations

import itertools
import sys
from typing import Iterator, Optional, Sequence

from .graph import DirectedGraph

Simplex = tuple[int, ...]

# Face index resolving to the final position ("remove the last vertex
# when the exact index is not known"). Integer indices beyond the
# dimension clamp onto it in hat_face().
LAST = float("inf")

FaceIndex = "int | float"  # an int position or LAST


def face(simplex: Simplex, i: int) -> Simplex:
    """Remove the vertex at position i. Requires 0 <= i <= dim."""
    d = len(simplex) - 1
    if d < 1:
        raise ValueError("face() needs a simplex of dimension >= 1")
    if not 0 <= i <= d:
        raise ValueError(f"face index {i} out of range for dimension {d}")
    return simplex[:i] + simplex[i + 1:]


def hat_face(simplex: Simplex, i) -> Simplex:
    """Clamping face map: removes position min(i, dim); LAST removes the end."""
    d = len(simplex) - 1
    if d < 1:
        raise ValueError("hat_face() needs a simplex of dimension >= 1")
    if i is LAST or i >= d:
        return simplex[:d]
    if i < 0:
        raise ValueError(f"negative face index {i}")
    return simplex[:i] + simplex[i + 1:]


def faces_of_dim(simplex: Simplex, n: int) -> list[Simplex]:
    """All n-dimensional faces (ordered (n+1)-sub-tuples), each exactly once.

    Deterministic order; count is C(dim+1, n+1).
    """
    if not 0 <= n <= len(simplex) - 1:
        raise ValueError(f"face dimension {n} out of range for {simplex}")
    return list(itertools.combinations(simplex, n + 1))


def includes(sub: Simplex, sup: Simplex) -> bool:
    """True iff sub's vertex tuple is a subsequence of sup's (sub ↪ sup)."""
    pos = 0
    for v in sub:
        try:
            pos = sup.index(v, pos) + 1
        except ValueError:
            return False
    return True


def coface_scan(simplex: Simplex, i: int, graph: DirectedGraph) -> list[Simplex]:
    """All simplices of `graph` whose i-th face is `simplex`.

    A candidate vertex v inserted at position i needs an edge from every
    vertex before the position and an edge to every vertex at or after
    it, so candidates are intersected straight from the adjacency sets.
    """
    d = len(simplex) - 1
    if not 0 <= i <= d + 1:
        raise ValueError(f"coface index {i} out of range for dimension {d}")
    cand: Optional[frozenset[int]] = None
    for k, v in enumerate(simplex):
        side = graph.succ_sets[v] if k < i else graph.pred_sets[v]
        cand = side if cand is None else cand & side
        if not cand:
            return []
    assert cand is not None
    return [simplex[:i] + (w,) + simplex[i:] for w in sorted(cand)]


class FlagComplex:
    """Simplices of a directed graph grouped by dimension.

    Within a level simplices are unique and lexicographically ordered,
    which makes the (dimension, ordinal) ids stable across runs. A flat
    integer id (level offset + ordinal) is used internally by the
    engines. Instances are immutable after construction.
    """

    __slots__ = ("levels", "index", "offsets", "size", "stride")

    def __init__(self, levels: Sequence[Sequence[Simplex]]):
        self.levels: tuple[tuple[Simplex, ...], ...] = tuple(tuple(lv) for lv in levels)
        self.index: tuple[dict[Simplex, int], ...] = tuple(
            {s: k for k, s in enumerate(lv)} for lv in self.levels)
        offsets = []
        total = 0
        for lv in self.levels:
            offsets.append(total)
            total += len(lv)
        self.offsets = tuple(offsets)
        self.size = total
        # Packing stride for (src, dst) edge keys; >= 1 so divmod stays legal.
        self.stride = total or 1

    @property
    def dim(self) -> int:
        """Dimension of the highest non-empty level (-1 if empty)."""
        for d in range(len(self.levels) - 1, -1, -1):
            if self.levels[d]:
                return d
        return -1

    def level_sizes(self) -> tuple[int, ...]:
        return tuple(len(lv) for lv in self.levels)

    def count_from(self, q: int) -> int:
        """|Σ_{>=q}|."""
        return sum(len(lv) for lv in self.levels[q:])

    def flat_id(self, simplex: Simplex) -> int:
        d = len(simplex) - 1
        return self.offsets[d] + self.index[d][simplex]

    def sid_of_flat(self, fid: int) -> tuple[int, int]:
        """Flat id -> (dimension, ordinal) id."""
        for d in range(len(self.levels) - 1, -1, -1):
            if fid >= self.offsets[d]:
                return d, fid - self.offsets[d]
        raise IndexError(fid)

    def simplex_of_flat(self, fid: int) -> Simplex:
        d, k = self.sid_of_flat(fid)
        return self.levels[d][k]

    def iter_from(self, q: int) -> Iterator[tuple[int, Simplex]]:
        """(flat id, simplex) for every simplex of dimension >= q, by id."""
        for d in range(q, len(self.levels)):
            base = self.offsets[d]
            for k, s in enumerate(self.levels[d]):
                yield base + k, s

    def __contains__(self, simplex: Simplex) -> bool:
        d = len(simplex) - 1
        return 0 <= d < len(self.levels) and simplex in self.index[d]


def build_flag_complex(graph: DirectedGraph, d_max: Optional[int] = None) -> FlagComplex:
    """Enumerate all directed simplices of `graph` up to dimension d_max.

    A simplex (v0..vk) is extended by appending any w in the intersection
    of the successor sets of its vertices; each ordered clique is hence
    produced exactly once, in lexicographic order within its level.
    """
    if d_max is not None and d_max < 1:
        raise ValueError("d_max must be >= 1")
    n = graph.vertex_count
    levels: list[list[Simplex]] = [[(v,) for v in range(n)]]
    succ_sets = graph.succ_sets

    # Recursion goes one frame per dimension; tournaments reach depth n.
    need = (d_max if d_max is not None else n) + 200
    if need > sys.getrecursionlimit():
        sys.setrecursionlimit(need)

    def grow(prefix: Simplex, cand: frozenset[int], depth: int) -> None:
        while len(levels) <= depth:
            levels.append([])
        level = levels[depth]
        deeper = d_max is None or depth < d_max
        for w in sorted(cand):
            t = prefix + (w,)
            level.append(t)
            if deeper:
                nxt = cand & succ_sets[w]
                if nxt:
                    grow(t, nxt, depth + 1)

    for v in range(n):
        c = succ_sets[v]
        if c:
            grow((v,), c, 1)
    return FlagComplex(levels)
