"""The (q,i,j)-digraph: simplices of dimension >= q plus near-pair edges.

Edges are kept in a dict keyed by a single packed integer
(src_flat * complex.stride + dst_flat) mapping to provenance bits; the
packing keeps the hot engine loops on plain ints. Canonical order is
ascending packed key, which coincides with (dimension, ordinal)
lexicographic order of (src, dst).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .complex import FlagComplex
from .nearness import Direction

PROV_I = 1
PROV_II = 2
PROV_NAMES = {PROV_I: "I", PROV_II: "II", PROV_I | PROV_II: "both"}
PROV_BITS = {v: k for k, v in PROV_NAMES.items()}


def format_sid(sid: tuple[int, int]) -> str:
    return f"{sid[0]}.{sid[1]}"


@dataclass
class QDigraph:
    complex: FlagComplex
    q: int
    direction: Direction
    edges: dict[int, int] = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    @property
    def vertex_count(self) -> int:
        """Number of q-digraph vertices, i.e. |Σ_{>=q}|."""
        return self.complex.count_from(self.q)

    def edge_count(self) -> int:
        return len(self.edges)

    def counts_by_provenance(self) -> dict[str, int]:
        out = {"I": 0, "II": 0, "both": 0}
        for bits in self.edges.values():
            out[PROV_NAMES[bits]] += 1
        return out

    def decode(self, key: int) -> tuple[int, int]:
        """Packed key -> (src flat id, dst flat id)."""
        return divmod(key, self.complex.stride)

    def iter_sorted(self) -> Iterator[tuple[tuple[int, int], tuple[int, int], str]]:
        """((src dim, ord), (dst dim, ord), provenance) in canonical order."""
        cx = self.complex
        for key in sorted(self.edges):
            src, dst = self.decode(key)
            yield cx.sid_of_flat(src), cx.sid_of_flat(dst), PROV_NAMES[self.edges[key]]

    def write_edges_tsv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for src, dst, prov in self.iter_sorted():
                fh.write(f"{format_sid(src)}\t{format_sid(dst)}\t{prov}\n")

    def edges_equal(self, other: "QDigraph") -> bool:
        return self.edges == other.edges

    def diff_sample(self, other: "QDigraph", limit: int = 10) -> list[str]:
        """Human-readable sample of differing edges (for --verify failures)."""
        out = []
        keys = sorted(set(self.edges) | set(other.edges))
        for key in keys:
            a = self.edges.get(key)
            b = other.edges.get(key)
            if a == b:
                continue
            src, dst = self.decode(key)
            sid = format_sid(self.complex.sid_of_flat(src))
            did = format_sid(self.complex.sid_of_flat(dst))
            lhs = PROV_NAMES[a] if a is not None else "absent"
            rhs = PROV_NAMES[b] if b is not None else "absent"
            out.append(f"{sid} -> {did}: {lhs} vs {rhs}")
            if len(out) >= limit:
                break
        return out


def write_simplices_tsv(complex_: FlagComplex, path, min_dim: int = 0) -> None:
    """One line per simplex: id, dimension, space-separated vertices."""
    with open(path, "w", encoding="utf-8") as fh:
        for d in range(min_dim, len(complex_.levels)):
            for k, s in enumerate(complex_.levels[d]):
                verts = " ".join(map(str, s))
                fh.write(f"{d}.{k}\t{d}\t{verts}\n")
