"""Simple directed graphs and edge-list file loading.

Vertices are dense integers 0..n-1. Graphs are immutable after
construction and safe to share across worker threads.
"""
from __future__ import annotations

import logging
from typing import Iterable, Sequence

log = logging.getLogger(__name__)


class GraphFormatError(ValueError):
    """Malformed input file or invalid graph structure (e.g. a self-loop)."""


class DirectedGraph:
    """A simple directed graph: no self-loops, at most one edge per ordered pair.

    Adjacency is stored both as sorted tuples (deterministic iteration)
    and as frozensets (O(1) membership).
    """

    __slots__ = ("vertex_count", "successors", "predecessors",
                 "succ_sets", "pred_sets", "edge_count")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]]):
        if vertex_count < 0:
            raise GraphFormatError("vertex count must be non-negative")
        succ: list[set[int]] = [set() for _ in range(vertex_count)]
        pred: list[set[int]] = [set() for _ in range(vertex_count)]
        duplicates = 0
        for u, v in edges:
            if u == v:
                raise GraphFormatError(f"self-loop on vertex {u} is not allowed")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphFormatError(
                    f"edge ({u}, {v}) outside vertex range 0..{vertex_count - 1}")
            if v in succ[u]:
                duplicates += 1
                continue
            succ[u].add(v)
            pred[v].add(u)
        if duplicates:
            log.warning("collapsed %d duplicate edge(s)", duplicates)
        self.vertex_count = vertex_count
        self.successors = tuple(tuple(sorted(s)) for s in succ)
        self.predecessors = tuple(tuple(sorted(p)) for p in pred)
        self.succ_sets = tuple(frozenset(s) for s in succ)
        self.pred_sets = tuple(frozenset(p) for p in pred)
        self.edge_count = sum(len(s) for s in succ)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.succ_sets[u]

    def edges(self) -> Iterable[tuple[int, int]]:
        for u, outs in enumerate(self.successors):
            for v in outs:
                yield (u, v)

    def __repr__(self) -> str:
        return f"DirectedGraph(n={self.vertex_count}, m={self.edge_count})"


def remap_labels(pairs: Sequence[tuple[int, int]]) -> tuple[DirectedGraph, list[int]]:
    """Build a graph from arbitrarily-labelled edges.

    Labels are remapped onto dense ids 0..n-1 in ascending label order.
    Returns the graph and the mapping table (index -> original label).
    """
    labels = sorted({x for e in pairs for x in e})
    to_id = {lab: k for k, lab in enumerate(labels)}
    graph = DirectedGraph(len(labels), [(to_id[u], to_id[v]) for u, v in pairs])
    return graph, labels


def _parse_edge_line(line: str, lineno: int) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
    try:
        u, v = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError(f"line {lineno}: non-integer vertex label in {line!r}") from None
    if u < 0 or v < 0:
        raise GraphFormatError(f"line {lineno}: negative vertex label in {line!r}")
    if u == v:
        raise GraphFormatError(f"line {lineno}: self-loop '{u} {v}' is not allowed")
    return u, v


def load_edge_list(path) -> tuple[DirectedGraph, list[int]]:
    """Read the plain edge-list format: one 'u v' per line.

    Lines starting with '#' and blank lines are ignored. Arbitrary integer
    labels are remapped to dense ids; the mapping table is returned.
    """
    pairs = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            pairs.append(_parse_edge_line(line, lineno))
    return remap_labels(pairs)


def load_flag_format(path) -> tuple[DirectedGraph, list[int]]:
    """Read the minimal flag-style format.

    A 'dim 0' line, then the vertex count, then 'dim 1' followed by edge
    lines. Vertex ids must already lie in 0..count-1 (isolated vertices
    are representable, unlike the edge-list format).
    """
    n = None
    pairs = []
    section = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.lower().startswith("dim"):
                parts = line.split()
                if len(parts) != 2 or parts[1] not in ("0", "1"):
                    raise GraphFormatError(f"line {lineno}: bad section header {line!r}")
                section = int(parts[1])
                continue
            if section == 0:
                if n is not None:
                    raise GraphFormatError(f"line {lineno}: repeated vertex count")
                try:
                    n = int(line)
                except ValueError:
                    raise GraphFormatError(f"line {lineno}: bad vertex count {line!r}") from None
            elif section == 1:
                pairs.append(_parse_edge_line(line, lineno))
            else:
                raise GraphFormatError(f"line {lineno}: data before a 'dim' header")
    if n is None:
        raise GraphFormatError("flag format: missing 'dim 0' vertex count")
    return DirectedGraph(n, pairs), list(range(n))


def load_graph(path, fmt: str = "edgelist") -> tuple[DirectedGraph, list[int]]:
    if fmt == "edgelist":
        return load_edge_list(path)
    if fmt == "flag":
        return load_flag_format(path)
    raise GraphFormatError(f"unknown input format {fmt!r}")


def write_edge_list(graph: DirectedGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for u, v in graph.edges():
            fh.write(f"{u} {v}\n")
