"""Core types for k-uniform hypergraphs on labeled vertices [0, n).

Vertex sets travel as strictly increasing tuples of ints. A Hypergraph is
immutable after construction and keeps its edges in lexicographic order, so
iteration, solver traces and serialized output are reproducible.

Scale contract: n <= 64, k <= 8. Every count is exact; binomial coefficients
refuse to leave the signed 64-bit range instead of approximating.
"""

from __future__ import annotations

import json
import math
import random
from itertools import combinations
from typing import Iterable, Sequence

MAX_VERTICES = 64
MAX_UNIFORMITY = 8
_INT64_MAX = 2**63 - 1


class InvalidQueryError(ValueError):
    """A degree or neighborhood query violates the size contract."""


class InvalidInputError(ValueError):
    """Malformed hypergraph, construction spec, or command input."""


class BinomialOverflowError(OverflowError):
    """An exact count left the signed 64-bit range."""


def binom(a: int, b: int) -> int:
    """Exact binomial coefficient C(a, b); 0 when b > a.

    Raises BinomialOverflowError instead of returning a value above
    2**63 - 1, so downstream arithmetic never silently degrades.
    """
    if a < 0 or b < 0:
        raise InvalidInputError(f"binom arguments must be nonnegative, got ({a}, {b})")
    if b > a:
        return 0
    value = math.comb(a, b)
    if value > _INT64_MAX:
        raise BinomialOverflowError(
            f"binom({a}, {b}) = {value} exceeds the 64-bit exact-arithmetic contract"
        )
    return value


def vertex_tuple(vertices: Iterable[int], n: int | None = None) -> tuple[int, ...]:
    """Canonicalize a vertex collection to a strictly increasing tuple.

    When ``n`` is given, every index must lie in [0, n).
    """
    vs = tuple(sorted(vertices))
    for i, v in enumerate(vs):
        if v < 0 or (n is not None and v >= n):
            raise InvalidInputError(f"vertex {v} out of range [0, {n})")
        if i > 0 and vs[i - 1] == v:
            raise InvalidInputError(f"duplicate vertex {v}")
    return vs


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Hypergraph:
    """A k-uniform hypergraph with vertex set {0, ..., n-1}.

    Invariants: every edge is a strictly increasing k-tuple inside [0, n);
    the edge list is duplicate-free and lexicographically sorted. k > n is
    tolerated only for edgeless hypergraphs (so that inducing on fewer than
    k vertices stays legal). Instances are immutable; all queries are pure
    and safe to call from multiple threads.
    """

    __slots__ = ("n", "k", "edges", "_edge_set", "_masks", "_incidence")

    def __init__(self, n: int, k: int, edges: Iterable[Sequence[int]] = ()):
        if not 0 <= n <= MAX_VERTICES:
            raise InvalidInputError(f"n must be in [0, {MAX_VERTICES}], got {n}")
        if not 1 <= k <= MAX_UNIFORMITY:
            raise InvalidInputError(f"k must be in [1, {MAX_UNIFORMITY}], got {k}")
        canon = sorted({vertex_tuple(e, n) for e in edges})
        for e in canon:
            if len(e) != k:
                raise InvalidInputError(f"edge {e} does not have {k} vertices")
        if k > n and canon:
            raise InvalidInputError(f"k={k} > n={n} admits no edges")
        self.n = n
        self.k = k
        self.edges: tuple[tuple[int, ...], ...] = tuple(canon)
        self._edge_set = frozenset(canon)
        self._masks = tuple(mask_of(e) for e in canon)
        inc: list[list[int]] = [[] for _ in range(n)]
        for i, e in enumerate(canon):
            for v in e:
                inc[v].append(i)
        self._incidence = tuple(tuple(lst) for lst in inc)

    # -- constructors ------------------------------------------------------

    @classmethod
    def complete(cls, n: int, k: int) -> Hypergraph:
        """The hypergraph whose edges are all k-subsets of [0, n)."""
        return cls(n, k, combinations(range(n), k))

    @classmethod
    def empty(cls, n: int, k: int) -> Hypergraph:
        return cls(n, k, ())

    # -- basic queries -----------------------------------------------------

    @property
    def edge_masks(self) -> tuple[int, ...]:
        return self._masks

    @property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Per-vertex tuples of edge indices, in canonical edge order."""
        return self._incidence

    def is_edge(self, e: Iterable[int]) -> bool:
        return tuple(sorted(e)) in self._edge_set

    def degree(self, sub: Iterable[int]) -> int:
        """Number of edges containing the vertex set ``sub`` (size <= k)."""
        s = vertex_tuple(sub, self.n)
        if len(s) > self.k:
            raise InvalidQueryError(f"degree query of size {len(s)} exceeds k={self.k}")
        m = mask_of(s)
        return sum(1 for em in self._masks if em & m == m)

    def min_degree(self, size: int) -> int:
        """Minimum degree over all ``size``-subsets of the vertex set.

        size must satisfy 0 <= size <= k-1; size 0 gives the edge count.
        Computed by counting sub-tuples per edge, so subsets contained in
        no edge (degree 0) are detected without enumerating them all.
        """
        if not 0 <= size <= self.k - 1:
            raise InvalidQueryError(f"size must be in [0, {self.k - 1}], got {size}")
        if size == 0:
            return len(self.edges)
        total = binom(self.n, size) if size <= self.n else 0
        if total == 0:
            return 0
        counts: dict[tuple[int, ...], int] = {}
        for e in self.edges:
            for sub in combinations(e, size):
                counts[sub] = counts.get(sub, 0) + 1
        if len(counts) < total:
            return 0
        return min(counts.values())

    def neighborhood(self, sub: Iterable[int]) -> frozenset[tuple[int, ...]]:
        """All (k-|sub|)-sets T disjoint from sub with T union sub an edge."""
        s = vertex_tuple(sub, self.n)
        if len(s) > self.k:
            raise InvalidQueryError(f"neighborhood query of size {len(s)} exceeds k={self.k}")
        m = mask_of(s)
        sset = set(s)
        out = set()
        for e, em in zip(self.edges, self._masks):
            if em & m == m:
                out.add(tuple(v for v in e if v not in sset))
        return frozenset(out)

    # -- derived hypergraphs -------------------------------------------------

    def complement(self) -> Hypergraph:
        """Hypergraph on the same vertices whose edges are the non-edges."""
        edges = [e for e in combinations(range(self.n), self.k) if e not in self._edge_set]
        return Hypergraph(self.n, self.k, edges)

    def induced(self, sub: Iterable[int]) -> Hypergraph:
        """Subhypergraph induced by ``sub``, relabeled to [0, |sub|).

        Relabeling preserves relative order. |sub| < k yields an edgeless
        hypergraph, since no edge fits.
        """
        s = vertex_tuple(sub, self.n)
        index = {v: i for i, v in enumerate(s)}
        m = mask_of(s)
        edges = [
            tuple(index[v] for v in e)
            for e, em in zip(self.edges, self._masks)
            if em & m == em
        ]
        return Hypergraph(len(s), self.k, edges)

    def avoiding(self, forbidden: Iterable[int]) -> Hypergraph:
        """Same vertex set, keeping only edges disjoint from ``forbidden``."""
        m = mask_of(vertex_tuple(forbidden, self.n))
        edges = [e for e, em in zip(self.edges, self._masks) if not em & m]
        return Hypergraph(self.n, self.k, edges)

    # -- serialization -------------------------------------------------------

    def to_text(self) -> str:
        """Bit-exact text format: header ``k n m`` then sorted edge lines."""
        lines = [f"{self.k} {self.n} {len(self.edges)}"]
        lines.extend(" ".join(map(str, e)) for e in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Hypergraph:
        rows = [ln.strip() for ln in text.splitlines()]
        rows = [ln for ln in rows if ln and not ln.startswith("#")]
        if not rows:
            raise InvalidInputError("empty hypergraph text")
        head = rows[0].split()
        if len(head) != 3:
            raise InvalidInputError(f"header must be 'k n m', got {rows[0]!r}")
        try:
            k, n, m = (int(x) for x in head)
        except ValueError as exc:
            raise InvalidInputError(f"non-integer header {rows[0]!r}") from exc
        if len(rows) - 1 != m:
            raise InvalidInputError(f"header promises {m} edges, found {len(rows) - 1}")
        edges = []
        for ln in rows[1:]:
            try:
                parts = tuple(int(x) for x in ln.split())
            except ValueError as exc:
                raise InvalidInputError(f"non-integer edge line {ln!r}") from exc
            if any(parts[i] >= parts[i + 1] for i in range(len(parts) - 1)):
                raise InvalidInputError(f"edge line {ln!r} is not strictly increasing")
            edges.append(parts)
        if edges != sorted(set(edges)):
            raise InvalidInputError("edge lines must be unique and lexicographically sorted")
        return cls(n, k, edges)

    def to_json_dict(self) -> dict:
        return {"k": self.k, "n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json_dict(cls, data: dict) -> Hypergraph:
        try:
            k, n, edges = data["k"], data["n"], data["edges"]
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"hypergraph JSON needs k, n, edges: {exc}") from exc
        canon = [tuple(e) for e in edges]
        if canon != sorted(set(canon)) or any(
            list(e) != sorted(set(e)) for e in canon
        ):
            raise InvalidInputError("JSON edges must be sorted, unique, strictly increasing")
        return cls(n, k, canon)

    @classmethod
    def from_json(cls, text: str) -> Hypergraph:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"invalid JSON: {exc}") from exc
        return cls.from_json_dict(data)

    # -- dunder --------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hypergraph)
            and self.n == other.n
            and self.k == other.k
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, k={self.k}, m={len(self.edges)})"


def random_hypergraph(n: int, k: int, p: float, seed: int) -> Hypergraph:
    """Each k-subset becomes an edge independently with probability p.

    Deterministic for a fixed seed: k-subsets are visited in lexicographic
    order and consume one PRNG draw each.
    """
    if not 0.0 <= p <= 1.0:
        raise InvalidInputError(f"edge probability must be in [0, 1], got {p}")
    rng = random.Random(seed)
    edges = [e for e in combinations(range(n), k) if rng.random() < p]
    return Hypergraph(n, k, edges)
