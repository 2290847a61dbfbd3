"""Exact perfect-matching search plus a randomized greedy maximal matcher.

The exact search is fail-first backtracking over covered-vertex states:
branch on the uncovered vertex with the fewest compatible edges, iterate
its candidates in canonical edge order, and abort any branch in which some
uncovered vertex has no compatible edge left. Ties break lexicographically
everywhere, so results and traces are deterministic. An optional
transposition cache memoizes covered states proven infeasible; it is off
by default because the state set can grow large.

Candidate bookkeeping uses bitmaps over edge indices: one AND per state
transition instead of rescanning edge lists.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .hypercore import Hypergraph, InvalidInputError


class SearchBudgetExceeded(RuntimeError):
    """The node budget ran out before the search finished."""

    def __init__(self, nodes: int, partial: tuple[tuple[int, ...], ...]):
        super().__init__(f"search aborted after {nodes} nodes")
        self.nodes = nodes
        self.partial = partial


@dataclass(frozen=True)
class Matching:
    """Pairwise disjoint edges; perfect when they cover every vertex."""

    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(tuple(e) for e in self.edges)))

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def covered(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def is_perfect_for(self, h: Hypergraph) -> bool:
        return len(self.edges) * h.k == h.n

    def union(self, other: Matching) -> Matching:
        return Matching(self.edges + other.edges)

    def to_json_dict(self, h: Hypergraph) -> dict:
        return {
            "perfect": self.is_perfect_for(h),
            "edges": [list(e) for e in self.edges],
        }


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_matching(h: Hypergraph, matching: Matching, require_perfect: bool = False) -> VerificationResult:
    """Check edges exist in h, are pairwise disjoint, and optionally cover V."""
    seen: set[int] = set()
    for e in matching.edges:
        if not h.is_edge(e):
            return VerificationResult(False, "non-edge")
        if seen.intersection(e):
            return VerificationResult(False, "overlap")
        seen.update(e)
    if require_perfect and len(seen) != h.n:
        return VerificationResult(False, "not-perfect")
    return VerificationResult(True)


def find_perfect_matching(
    h: Hypergraph,
    *,
    node_budget: int | None = None,
    use_cache: bool = False,
) -> Matching | None:
    """Return a perfect matching of h, or None if none exists.

    Deterministic: the first matching in the canonical branch order is
    returned. Raises SearchBudgetExceeded (carrying the partial matching)
    when ``node_budget`` expanded states are not enough to decide.
    """
    n, k = h.n, h.k
    if n % k != 0:
        raise InvalidInputError(f"perfect matching needs k | n, got n={n}, k={k}")
    if n == 0:
        return Matching(())

    masks = h.edge_masks
    nedges = len(masks)
    # Bitmaps over edge indices: edges touching v, edges conflicting with edge i.
    vertex_bm = [0] * n
    for i, m in enumerate(masks):
        mm = m
        while mm:
            v = (mm & -mm).bit_length() - 1
            vertex_bm[v] |= 1 << i
            mm &= mm - 1
    conflict = [0] * nedges
    for i, e in enumerate(h.edges):
        c = 0
        for v in e:
            c |= vertex_bm[v]
        conflict[i] = c

    full = (1 << n) - 1
    chosen: list[int] = []
    failed: set[int] = set()
    nodes = 0

    def extend(covered: int, compatible: int) -> bool:
        nonlocal nodes
        if covered == full:
            return True
        if use_cache and covered in failed:
            return False
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise SearchBudgetExceeded(
                nodes, tuple(h.edges[i] for i in chosen)
            )
        best_bm = 0
        best_count = -1
        uncovered = full & ~covered
        while uncovered:
            v = (uncovered & -uncovered).bit_length() - 1
            uncovered &= uncovered - 1
            bm = compatible & vertex_bm[v]
            c = bm.bit_count()
            if c == 0:
                if use_cache:
                    failed.add(covered)
                return False
            if best_count < 0 or c < best_count:
                best_bm, best_count = bm, c
                if c == 1:
                    # A forced vertex; any zero-candidate vertex further on
                    # is caught one level deeper with the same outcome.
                    break
        while best_bm:
            i = (best_bm & -best_bm).bit_length() - 1
            best_bm &= best_bm - 1
            chosen.append(i)
            if extend(covered | masks[i], compatible & ~conflict[i]):
                return True
            chosen.pop()
        if use_cache:
            failed.add(covered)
        return False

    if extend(0, (1 << nedges) - 1):
        return Matching(tuple(h.edges[i] for i in chosen))
    return None


def max_matching_greedy(h: Hypergraph, seed: int) -> Matching:
    """Maximal matching by repeatedly picking a uniform random compatible edge.

    Deterministic for a fixed seed. The result cannot be extended: every
    edge of h meets the covered set.
    """
    rng = random.Random(seed)
    masks = h.edge_masks
    available = list(range(len(masks)))
    covered = 0
    chosen: list[int] = []
    while available:
        i = available[rng.randrange(len(available))]
        chosen.append(i)
        covered |= masks[i]
        available = [j for j in available if not masks[j] & covered]
    return Matching(tuple(h.edges[i] for i in chosen))
