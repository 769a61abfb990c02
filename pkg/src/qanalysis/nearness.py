"""Pairwise nearness predicates for both q-nearness definitions.

Two directed simplices are near when one includes the other
(criterion I) or when they share a q-face reachable through the chosen
pair of face maps (criterion II). The "novel" variant realizes the
shared face as d_i / d_j of (q+1)-faces of either side; the "hat"
variant embeds it into the clamped faces of the simplices themselves.

All predicates operate on raw vertex tuples: any sub-tuple of a simplex
is again a simplex, so no ambient complex is needed. Tuples that share
vertices in inconsistent order simply come out not-near (never an
error). They are pure functions, safe for any number of workers.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .complex import LAST, Simplex, face, faces_of_dim, hat_face, includes


class Definition(Enum):
    NOVEL = "novel"
    HAT = "hat"


def is_last(i) -> bool:
    """True when i denotes the remove-the-final-vertex index."""
    return isinstance(i, float) and i == LAST


def resolve_novel_index(i, q: int) -> int:
    """Validate and resolve a face index for the novel definition.

    Legal values are integers in {0, .., q+1}; LAST resolves to q+1.
    """
    if is_last(i):
        return q + 1
    if isinstance(i, float):
        raise ValueError(f"face index must be an integer or LAST, got {i!r}")
    if not 0 <= i <= q + 1:
        raise ValueError(f"novel face index {i} outside 0..{q + 1}")
    return i


def check_hat_index(i) -> None:
    if is_last(i):
        return
    if isinstance(i, float) or i < 0:
        raise ValueError(f"hat face index must be a non-negative integer or LAST, got {i!r}")


@dataclass(frozen=True)
class Direction:
    """An ordered pair of face maps plus the definition they belong to."""

    i: "int | float"
    j: "int | float"
    definition: Definition = Definition.NOVEL

    def __post_init__(self):
        if self.definition is Definition.HAT:
            check_hat_index(self.i)
            check_hat_index(self.j)
        else:
            for x in (self.i, self.j):
                if not is_last(x) and (isinstance(x, float) or x < 0):
                    raise ValueError(f"bad face index {x!r}")

    @classmethod
    def novel(cls, i, j) -> "Direction":
        return cls(i, j, Definition.NOVEL)

    @classmethod
    def hat(cls, i, j) -> "Direction":
        return cls(i, j, Definition.HAT)

    def resolve_novel(self, q: int) -> tuple[int, int]:
        """Resolved integer indices; raises if out of the novel range for q."""
        return resolve_novel_index(self.i, q), resolve_novel_index(self.j, q)

    def validate_for(self, q: int) -> None:
        if self.definition is Definition.NOVEL:
            self.resolve_novel(q)

    def label(self) -> str:
        fmt = lambda x: "inf" if is_last(x) else str(x)
        return f"({fmt(self.i)},{fmt(self.j)})"


def shares_more_than(sigma: Simplex, tau: Simplex, q: int) -> bool:
    """The necessary gate for either criterion: |σ ∩ τ| > q as vertex sets."""
    return len(set(sigma) & set(tau)) > q


def novel_criterion_ii(sigma: Simplex, tau: Simplex, q: int, i, j) -> bool:
    """Shared-face criterion of the novel definition.

    True iff some q-simplex equals d_i of a (q+1)-face of sigma and d_j
    of a (q+1)-face of tau. Needs dimension >= q+1 on both sides.
    """
    ri, rj = resolve_novel_index(i, q), resolve_novel_index(j, q)
    if len(sigma) < q + 2 or len(tau) < q + 2:
        return False
    if not shares_more_than(sigma, tau, q):
        return False
    alpha_s = {face(m, ri) for m in faces_of_dim(sigma, q + 1)}
    alpha_t = {face(m, rj) for m in faces_of_dim(tau, q + 1)}
    return not alpha_s.isdisjoint(alpha_t)


def hat_criterion_ii(sigma: Simplex, tau: Simplex, q: int, i, j) -> bool:
    """Shared-face criterion of the hat definition.

    True iff some q-simplex embeds into both hat_face(sigma, i) and
    hat_face(tau, j). Needs dimension >= q+1 on both sides (otherwise
    the clamped face is too small to contain a q-face).
    """
    check_hat_index(i)
    check_hat_index(j)
    if len(sigma) < q + 2 or len(tau) < q + 2:
        return False
    if not shares_more_than(sigma, tau, q):
        return False
    fs = set(faces_of_dim(hat_face(sigma, i), q))
    ft = faces_of_dim(hat_face(tau, j), q)
    return any(f in fs for f in ft)


def is_q_near_novel(sigma: Simplex, tau: Simplex, q: int, i, j) -> bool:
    """(q,i,j)-nearness, novel definition: inclusion or shared q-face."""
    ri, rj = resolve_novel_index(i, q), resolve_novel_index(j, q)
    if not shares_more_than(sigma, tau, q):
        return False
    if includes(sigma, tau):
        return True
    return novel_criterion_ii(sigma, tau, q, ri, rj)


def is_q_near_hat(sigma: Simplex, tau: Simplex, q: int, i, j) -> bool:
    """(q,i,j)-nearness, hat (original) definition."""
    if not shares_more_than(sigma, tau, q):
        return False
    if includes(sigma, tau):
        return True
    return hat_criterion_ii(sigma, tau, q, i, j)


def _pieces(simplex: Simplex, size: int) -> list[Simplex]:
    # size 0 yields the (-1)-dimensional empty tuple: the degenerate
    # prefix/suffix cases are vacuously satisfiable.
    if size == 0:
        return [()]
    return list(itertools.combinations(simplex, size))


def _split_candidates(s: Simplex, other: Simplex, q: int, k: int) -> set[Simplex]:
    """Shared q-simplices assembled from a split of `s` at some position >= k.

    For each split position the prefix must share a (k-1)-face with
    `other` and the suffix a (q-k)-face; candidates are the
    concatenations of the two shared pieces.
    """
    n = len(s) - 1
    pre_other = set(_pieces(other, k))
    suf_other = set(_pieces(other, q - k + 1))
    out: set[Simplex] = set()
    # split positions k .. n-q+k-1: k vertices must fit before, q-k+1 after
    for split in range(k, n - q + k):
        pre = s[:split]
        suf = s[split + 1:]
        pre_shared = [a for a in _pieces(pre, k) if a in pre_other]
        if not pre_shared:
            continue
        suf_shared = [b for b in _pieces(suf, q - k + 1) if b in suf_other]
        for a in pre_shared:
            for b in suf_shared:
                out.add(a + b)
    return out


def is_q_near_decomposition(sigma: Simplex, tau: Simplex, q: int, i: int, j: int) -> bool:
    """Criterion-II check via prefix/suffix decompositions.

    Independent of the face-map route: both simplices are split around a
    pivot position (>= i in sigma, >= j in tau), the prefix and suffix
    pieces shared with the other simplex are enumerated, and the
    predicate holds iff both sides can assemble the same q-simplex.
    Callers combine it with includes() for criterion I.
    """
    if not (0 <= i <= q + 1 and 0 <= j <= q + 1):
        raise ValueError(f"indices ({i}, {j}) outside 0..{q + 1}")
    if len(sigma) < q + 2 or len(tau) < q + 2:
        raise ValueError("decomposition check needs dimension >= q+1 on both sides")
    cands_s = _split_candidates(sigma, tau, q, i)
    if not cands_s:
        return False
    cands_t = _split_candidates(tau, sigma, q, j)
    return not cands_s.isdisjoint(cands_t)
