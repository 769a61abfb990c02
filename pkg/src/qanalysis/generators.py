"""Synthetic digraph generators for tests and the benchmark harness.

Seeded generators are reproducible: the same spec always yields the
same edge list.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import DirectedGraph


def tournament(n: int) -> DirectedGraph:
    """Transitive tournament: edges u -> v for all u < v."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return DirectedGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def erdos_renyi(n: int, p: float, seed: int) -> DirectedGraph:
    """Each ordered pair (u, v), u != v, kept independently with probability p."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    rng = random.Random(seed)
    edges = []
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p:
                edges.append((u, v))
    return DirectedGraph(n, edges)


def layered_dag(n: int, width: int, p: float, seed: int) -> DirectedGraph:
    """Vertices in consecutive layers of `width`; edges only to later layers."""
    if n < 1 or width < 1:
        raise ValueError("n and width must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    rng = random.Random(seed)
    layer = [v // width for v in range(n)]
    edges = []
    for u in range(n):
        for v in range(n):
            if layer[u] < layer[v] and rng.random() < p:
                edges.append((u, v))
    return DirectedGraph(n, edges)


@dataclass(frozen=True)
class GeneratorSpec:
    """Parsed generator description, e.g. 'er:n=100,p=0.1,seed=7'."""

    kind: str
    params: tuple = field(default_factory=tuple)

    _KINDS = {"er", "erdos_renyi", "tournament", "layered", "layered_dag"}

    @classmethod
    def parse(cls, text: str) -> "GeneratorSpec":
        kind, _, rest = text.partition(":")
        kind = kind.strip().lower()
        if kind not in cls._KINDS:
            raise ValueError(f"unknown generator kind {kind!r}")
        params = {}
        if rest:
            for chunk in rest.split(","):
                key, _, val = chunk.partition("=")
                if not val:
                    raise ValueError(f"bad generator parameter {chunk!r}")
                params[key.strip()] = float(val) if "." in val else int(val)
        return cls(kind, tuple(sorted(params.items())))

    def build(self) -> DirectedGraph:
        p = dict(self.params)
        if self.kind in ("er", "erdos_renyi"):
            return erdos_renyi(int(p["n"]), float(p["p"]), int(p.get("seed", 0)))
        if self.kind == "tournament":
            return tournament(int(p["n"]))
        return layered_dag(int(p["n"]), int(p["width"]), float(p["p"]), int(p.get("seed", 0)))

    def label(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.kind}:{args}" if args else self.kind
