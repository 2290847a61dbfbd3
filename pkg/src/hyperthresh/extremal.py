"""Parity-obstructed extremal constructions and exact degree thresholds.

A construction is named by an ordered bipartition (A, B) of [0, n) and a
kind: ``odd`` keeps the k-sets meeting A in an odd number of vertices,
``even`` keeps the rest. The family of matching-free members (per the
parity rules below) is enumerated one spec per |A|, since minimum degrees
depend only on |A|. The threshold delta(n, k, l) is the largest minimum
l-degree over that family, computed by exact enumeration; for l = k-1 a
four-case closed formula is also evaluated and cross-reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .hypercore import Hypergraph, InvalidInputError, InvalidQueryError, binom, vertex_tuple


class CertificateNotApplicableError(ValueError):
    """The parity argument does not apply to this construction."""


@dataclass(frozen=True)
class Bipartition:
    """Ordered split of [0, n) into non-empty classes A and its complement."""

    n: int
    a: tuple[int, ...]

    def __post_init__(self):
        a = vertex_tuple(self.a, self.n)
        object.__setattr__(self, "a", a)
        if not a or len(a) >= self.n:
            raise InvalidInputError("both classes of a bipartition must be non-empty")

    @property
    def b(self) -> tuple[int, ...]:
        aset = set(self.a)
        return tuple(v for v in range(self.n) if v not in aset)

    @classmethod
    def canonical(cls, n: int, size_a: int) -> Bipartition:
        """The representative with A = {0, ..., size_a - 1}."""
        return cls(n, tuple(range(size_a)))


KINDS = ("even", "odd")


@dataclass(frozen=True)
class ExtremalSpec:
    """One construction: a bipartition plus the intersection-parity kind."""

    kind: str
    bipartition: Bipartition
    k: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not 1 <= self.k <= self.bipartition.n:
            raise InvalidInputError(
                f"k={self.k} incompatible with n={self.bipartition.n}"
            )

    @property
    def n(self) -> int:
        return self.bipartition.n

    @property
    def size_a(self) -> int:
        return len(self.bipartition.a)

    def in_extremal_family(self) -> bool:
        """Parity rules for membership in the matching-free family.

        kind=even requires |A| odd. kind=odd requires |A| even when n/k is
        odd and |A| odd when n/k is even. Requires k | n.
        """
        if self.n % self.k != 0:
            return False
        blocks = self.n // self.k
        a_odd = self.size_a % 2 == 1
        if self.kind == "even":
            return a_odd
        return (not a_odd) if blocks % 2 == 1 else a_odd


def build(spec: ExtremalSpec) -> Hypergraph:
    """Materialize the edges with the requested intersection parity."""
    want = 1 if spec.kind == "odd" else 0
    amask = 0
    for v in spec.bipartition.a:
        amask |= 1 << v
    edges = []
    for e in combinations(range(spec.n), spec.k):
        m = 0
        for v in e:
            m |= 1 << v
        if (m & amask).bit_count() % 2 == want:
            edges.append(e)
    return Hypergraph(spec.n, spec.k, edges)


def extremal_family(n: int, k: int) -> list[ExtremalSpec]:
    """All matching-free specs, one per admissible |A|, canonical A.

    Every choice of A with the same size is isomorphic, so the enumeration
    quotients by |A|. Result sorted by (|A|, kind).
    """
    if k < 2:
        raise InvalidInputError(f"family needs k >= 2, got {k}")
    if n % k != 0:
        raise InvalidInputError(f"k={k} must divide n={n}")
    specs = []
    for size_a in range(1, n):
        for kind in KINDS:
            spec = ExtremalSpec(kind, Bipartition.canonical(n, size_a), k)
            if spec.in_extremal_family():
                specs.append(spec)
    specs.sort(key=lambda s: (s.size_a, s.kind))
    return specs


def min_degree_closed_form(spec: ExtremalSpec, size: int) -> int:
    """Minimum ``size``-degree of build(spec) without building it.

    The degree of an l-set depends only on i = |S n A|: it counts the ways
    to finish the edge with j more A-vertices and k-l-j B-vertices where
    i + j has the spec's parity. Returns the minimum over feasible i.
    """
    if not 0 <= size <= spec.k - 1:
        raise InvalidQueryError(f"size must be in [0, {spec.k - 1}], got {size}")
    a = spec.size_a
    b = spec.n - a
    want = 1 if spec.kind == "odd" else 0
    best: int | None = None
    for i in range(max(0, size - b), min(size, a) + 1):
        d = 0
        for j in range(spec.k - size + 1):
            if (i + j) % 2 == want:
                d += binom(a - i, j) * binom(b - size + i, spec.k - size - j)
        if best is None or d < best:
            best = d
    assert best is not None
    return best


@dataclass(frozen=True)
class ThresholdReport:
    """delta(n, k, l): the family-wide maximum of minimum l-degrees."""

    n: int
    k: int
    l: int
    value: int
    witnesses: tuple[ExtremalSpec, ...]
    table: tuple[tuple[str, int, int], ...]  # (kind, |A|, min l-degree)
    formula_value: Fraction | None = None  # closed form, only for l = k-1

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "l": self.l,
            "delta": self.value,
            "formula_k_minus_1": _fraction_to_json(self.formula_value),
            "witnesses": [
                {"kind": s.kind, "sizeA": s.size_a} for s in self.witnesses
            ],
            "table": [
                {"kind": kind, "sizeA": size_a, "minLDegree": d}
                for kind, size_a, d in self.table
            ],
        }


def _fraction_to_json(value: Fraction | None):
    if value is None:
        return None
    if value.denominator == 1:
        return int(value)
    return float(value)


def threshold(n: int, k: int, l: int, jobs: int = 1) -> ThresholdReport:
    """Compute delta(n, k, l) by enumerating the extremal family.

    No closed form is assumed for general l; the l = k-1 formula is
    attached to the report for comparison, never substituted.
    """
    if not 1 <= l <= k - 1:
        raise InvalidQueryError(f"l must be in [1, {k - 1}], got {l}")
    specs = extremal_family(n, k)

    def entry(spec: ExtremalSpec) -> tuple[str, int, int]:
        return spec.kind, spec.size_a, min_degree_closed_form(spec, l)

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            table = tuple(pool.map(entry, specs))
    else:
        table = tuple(entry(s) for s in specs)
    value = max(row[2] for row in table)
    witnesses = tuple(s for s, row in zip(specs, table) if row[2] == value)
    formula = codegree_threshold_formula(n, k) if (l == k - 1 and k >= 3) else None
    return ThresholdReport(n, k, l, value, witnesses, table, formula)


def codegree_threshold_formula(n: int, k: int) -> Fraction:
    """Closed form for delta(n, k, k-1), exact as a rational.

    Four cases: n/2 - k + 2 when k/2 is even and n/k is odd; when k is odd
    and (n-1)/2 is an integer, n/2 - k + 3/2 if (n-1)/2 is odd and
    n/2 - k + 1/2 if it is even; otherwise n/2 - k + 1. The (n-1)/2 parity
    tests only apply when (n-1)/2 is integral, i.e. when n is odd.
    """
    if k < 3:
        raise InvalidInputError(f"codegree formula needs k >= 3, got {k}")
    if n % k != 0:
        raise InvalidInputError(f"k={k} must divide n={n}")
    half_n = Fraction(n, 2)
    if k % 2 == 0 and (k // 2) % 2 == 0 and (n // k) % 2 == 1:
        return half_n - k + 2
    if k % 2 == 1 and n % 2 == 1:
        if ((n - 1) // 2) % 2 == 1:
            return half_n - k + Fraction(3, 2)
        return half_n - k + Fraction(1, 2)
    return half_n - k + 1


@dataclass(frozen=True)
class ParityCertificate:
    """Why a family member has no perfect matching.

    A perfect matching would have ``blocks`` = n/k edges. Summing |e n A|
    over them gives |A|; the construction forces each term's parity, so the
    sum's parity (lhs) is determined and disagrees with |A|'s (rhs).
    """

    kind: str
    size_a: int
    blocks: int
    lhs_parity: int
    rhs_parity: int
    conclusion: str

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "sizeA": self.size_a,
            "blocks": self.blocks,
            "lhsParity": self.lhs_parity,
            "rhsParity": self.rhs_parity,
            "conclusion": self.conclusion,
        }


def parity_certificate(spec: ExtremalSpec, blocks: int | None = None) -> ParityCertificate:
    """Produce the parity obstruction for a member of the extremal family.

    ``blocks`` may restate n/k for cross-checking; inconsistent values are
    rejected. Non-members get CertificateNotApplicableError, since for them
    the two parities coincide and nothing is certified.
    """
    if spec.n % spec.k != 0:
        raise CertificateNotApplicableError(f"k={spec.k} does not divide n={spec.n}")
    expected = spec.n // spec.k
    if blocks is not None and blocks != expected:
        raise InvalidInputError(f"blocks={blocks} inconsistent with n/k={expected}")
    if not spec.in_extremal_family():
        raise CertificateNotApplicableError(
            f"spec (kind={spec.kind}, |A|={spec.size_a}) is not in the extremal family"
        )
    lhs = expected % 2 if spec.kind == "odd" else 0
    rhs = spec.size_a % 2
    assert lhs != rhs  # guaranteed by the membership rules
    return ParityCertificate(
        kind=spec.kind,
        size_a=spec.size_a,
        blocks=expected,
        lhs_parity=lhs,
        rhs_parity=rhs,
        conclusion="no-perfect-matching",
    )


def edit_distance(h: Hypergraph, spec: ExtremalSpec) -> int:
    """Size of the symmetric difference between E(h) and the spec's edges."""
    if h.n != spec.n or h.k != spec.k:
        raise InvalidInputError("hypergraph and spec must share n and k")
    want = 1 if spec.kind == "odd" else 0
    amask = 0
    for v in spec.bipartition.a:
        amask |= 1 << v
    count = 0
    edge_set = frozenset(h.edges)
    for e in combinations(range(h.n), h.k):
        m = 0
        for v in e:
            m |= 1 << v
        in_spec = (m & amask).bit_count() % 2 == want
        if in_spec != (e in edge_set):
            count += 1
    return count


@dataclass(frozen=True)
class ClosenessResult:
    bipartition: Bipartition
    kind: str
    edits: int
    exact: bool


def nearest_bipartition(h: Hypergraph, kind: str, mode: str = "exact") -> ClosenessResult:
    """Minimize edit_distance over near-balanced bipartitions.

    Only |A| in {floor(n/2), ceil(n/2)} is searched, matching the balanced
    construction convention. ``exact`` mode (n <= 16) enumerates every such
    A; ``heuristic`` mode hill-climbs by single-vertex swaps from a
    degree-derived seed and reports a possibly non-optimal upper bound,
    flagged via ``exact=False``.
    """
    if kind not in KINDS:
        raise InvalidInputError(f"kind must be one of {KINDS}, got {kind!r}")
    if mode not in ("exact", "heuristic"):
        raise InvalidInputError(f"mode must be 'exact' or 'heuristic', got {mode!r}")
    n = h.n
    sizes = sorted({n // 2, (n + 1) // 2})
    if sizes[0] == 0:
        raise InvalidInputError("hypergraph too small for a non-empty bipartition")
    if mode == "exact":
        if n > 16:
            raise InvalidInputError("exact bipartition search is limited to n <= 16")
        best: ClosenessResult | None = None
        for size in sizes:
            for a in combinations(range(n), size):
                spec = ExtremalSpec(kind, Bipartition(n, a), h.k)
                d = edit_distance(h, spec)
                if best is None or d < best.edits:
                    best = ClosenessResult(spec.bipartition, kind, d, True)
        assert best is not None
        return best
    return _nearest_bipartition_swap(h, kind, sizes)


def _nearest_bipartition_swap(h: Hypergraph, kind: str, sizes: list[int]) -> ClosenessResult:
    # Seed: lowest-degree vertices form A (ties by index), one run per size.
    order = sorted(range(h.n), key=lambda v: (h.degree((v,)), v))
    best: ClosenessResult | None = None
    for size in sizes:
        a = set(order[:size])
        spec = ExtremalSpec(kind, Bipartition(h.n, tuple(sorted(a))), h.k)
        d = edit_distance(h, spec)
        improved = True
        while improved:
            improved = False
            for u in sorted(a):
                for v in sorted(set(range(h.n)) - a):
                    cand = (a - {u}) | {v}
                    cand_spec = ExtremalSpec(kind, Bipartition(h.n, tuple(sorted(cand))), h.k)
                    cd = edit_distance(h, cand_spec)
                    if cd < d:
                        a, spec, d = cand, cand_spec, cd
                        improved = True
                        break
                if improved:
                    break
        if best is None or d < best.edits:
            best = ClosenessResult(spec.bipartition, kind, d, False)
    assert best is not None
    return best
