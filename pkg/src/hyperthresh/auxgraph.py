"""The split bipartite graph of a hypergraph and its structural diagnostics.

For r = ceil(k/2) and r' = k - r, the auxiliary graph puts every r-subset
on the left, every r'-subset on the right, and joins a disjoint pair when
its union is an edge. The two-block model colors each side into two
classes and declares exactly the within-class pairs (1 with 1, 2 with 2)
adjacent. Everything here measures how far an actual hypergraph sits from
that model: edit distance, bad k-sets, case dichotomies, a derived
partition, per-pair same/different color counts, and recovery of the
vertex bipartition from a coloring.

The graph is kept as an adjacency oracle. Full sweeps over all
left-by-right pairs are guarded to n <= 12; the pair counts explode
quickly beyond that.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .hypercore import Hypergraph, InvalidInputError, InvalidQueryError, binom

SWEEP_LIMIT = 12


class CaseHoldsError(ValueError):
    """Partition derivation does not apply: a dichotomy case holds."""

    def __init__(self, case: str):
        super().__init__(f"not applicable: case ({case}) holds")
        self.case = case


def split_sizes(k: int) -> tuple[int, int]:
    r = (k + 1) // 2
    return r, k - r


class AuxGraph:
    """Adjacency oracle for the split graph of a hypergraph."""

    def __init__(self, host: Hypergraph):
        self.host = host
        self.r, self.r_prime = split_sizes(host.k)
        self.left_total = binom(host.n, self.r)
        self.right_total = binom(host.n, self.r_prime)

    def adjacent(self, left: tuple[int, ...], right: tuple[int, ...]) -> bool:
        if len(left) != self.r or len(right) != self.r_prime:
            raise InvalidQueryError(
                f"expected sizes ({self.r}, {self.r_prime}), got ({len(left)}, {len(right)})"
            )
        if set(left) & set(right):
            return False
        return self.host.is_edge(tuple(sorted(left + right)))

    def left_neighborhood(self, left: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
        """Right vertices adjacent to ``left``; equals the host neighborhood."""
        return self.host.neighborhood(left)

    def edge_count(self) -> int:
        """Count aux edges by full enumeration (guarded sweep).

        Always equals |E(host)| * binom(k, r); tests assert the identity
        against this enumeration rather than trusting it.
        """
        _check_sweep(self.host)
        count = 0
        for left in combinations(range(self.host.n), self.r):
            lset = set(left)
            for right in combinations(range(self.host.n), self.r_prime):
                if lset & set(right):
                    continue
                if self.host.is_edge(tuple(sorted(left + right))):
                    count += 1
        return count


def _check_sweep(h: Hypergraph):
    if h.n > SWEEP_LIMIT:
        raise InvalidInputError(
            f"full left-right sweeps are limited to n <= {SWEEP_LIMIT}, got n={h.n}"
        )


def aux_adjacent(h: Hypergraph, left, right) -> bool:
    return AuxGraph(h).adjacent(tuple(left), tuple(right))


def aux_edge_count(h: Hypergraph) -> int:
    return AuxGraph(h).edge_count()


class PartitionColoring:
    """Total 2-coloring of all r-subsets (phi) and all r'-subsets (psi).

    Colors are the ints 1 and 2. When modeling the balanced two-block
    graph the class-1 sides aim for ceil(total/2), but totality is the
    only invariant enforced here.
    """

    def __init__(self, n: int, k: int, phi: dict, psi: dict):
        self.n = n
        self.k = k
        self.r, self.r_prime = split_sizes(k)
        if len(phi) != binom(n, self.r) or len(psi) != binom(n, self.r_prime):
            raise InvalidInputError("coloring must assign every subset on both sides")
        if not all(c in (1, 2) for c in phi.values()) or not all(
            c in (1, 2) for c in psi.values()
        ):
            raise InvalidInputError("colors must be 1 or 2")
        self.phi = dict(phi)
        self.psi = dict(psi)

    @classmethod
    def from_parity(cls, n: int, k: int, a, kind: str = "odd") -> PartitionColoring:
        """Coloring induced by a vertex class A.

        phi sends r-sets meeting A oddly to class 1. For kind="odd", psi
        sends r'-sets meeting A evenly to class 1, so that model adjacency
        (equal classes) matches odd total intersection; kind="even" flips
        psi, matching even total intersection.
        """
        if kind not in ("odd", "even"):
            raise InvalidInputError(f"kind must be 'odd' or 'even', got {kind!r}")
        r, r_prime = split_sizes(k)
        aset = set(a)
        phi = {
            p: 1 if len(aset.intersection(p)) % 2 == 1 else 2
            for p in combinations(range(n), r)
        }
        even_to_1 = kind == "odd"
        psi = {
            p: (1 if (len(aset.intersection(p)) % 2 == 0) == even_to_1 else 2)
            for p in combinations(range(n), r_prime)
        }
        return cls(n, k, phi, psi)

    @classmethod
    def random(cls, n: int, k: int, seed: int) -> PartitionColoring:
        rng = random.Random(seed)
        r, r_prime = split_sizes(k)
        phi = {p: rng.choice((1, 2)) for p in combinations(range(n), r)}
        psi = {p: rng.choice((1, 2)) for p in combinations(range(n), r_prime)}
        return cls(n, k, phi, psi)

    def model_adjacent(self, left: tuple[int, ...], right: tuple[int, ...]) -> bool:
        """Model edges: disjoint pairs with equal class labels."""
        if set(left) & set(right):
            return False
        return self.phi[left] == self.psi[right]

    def class_sizes(self) -> dict:
        phi1 = sum(1 for c in self.phi.values() if c == 1)
        psi1 = sum(1 for c in self.psi.values() if c == 1)
        return {
            "left1": phi1,
            "left2": len(self.phi) - phi1,
            "right1": psi1,
            "right2": len(self.psi) - psi1,
        }


def parity_coloring(n: int, k: int, a, kind: str = "odd") -> PartitionColoring:
    return PartitionColoring.from_parity(n, k, a, kind)


def edit_distance_model(h: Hypergraph, coloring: PartitionColoring) -> int:
    """Disjoint left-right pairs on which the aux graph and model disagree."""
    if h.n != coloring.n or h.k != coloring.k:
        raise InvalidInputError("hypergraph and coloring must share n and k")
    _check_sweep(h)
    g = AuxGraph(h)
    count = 0
    for left in combinations(range(h.n), g.r):
        lset = set(left)
        phi_left = coloring.phi[left]
        nbhd = h.neighborhood(left)
        for right in combinations(range(h.n), g.r_prime):
            if lset & set(right):
                continue
            actual = right in nbhd
            model = phi_left == coloring.psi[right]
            if actual != model:
                count += 1
    return count


def bad_kset_count(h: Hypergraph, coloring: PartitionColoring) -> int:
    """k-sets with one split model-adjacent and another one not.

    Depends only on the coloring; the hypergraph argument just pins n, k.
    """
    if h.n != coloring.n or h.k != coloring.k:
        raise InvalidInputError("hypergraph and coloring must share n and k")
    r, _ = split_sizes(h.k)
    count = 0
    for s in combinations(range(h.n), h.k):
        seen_adjacent = False
        seen_nonadjacent = False
        for left in combinations(s, r):
            right = tuple(v for v in s if v not in left)
            if coloring.phi[left] == coloring.psi[right]:
                seen_adjacent = True
            else:
                seen_nonadjacent = True
            if seen_adjacent and seen_nonadjacent:
                count += 1
                break
    return count


def good_left_count(h: Hypergraph, anchor, gamma: float) -> int:
    """How many r-sets share at least gamma*binom(n,r') neighbors with anchor."""
    anchor = tuple(anchor)
    g = AuxGraph(h)
    if len(anchor) != g.r:
        raise InvalidQueryError(f"anchor must be an r-set (r={g.r})")
    if not 0 < gamma < 1:
        raise InvalidInputError(f"gamma must be in (0, 1), got {gamma}")
    bar = gamma * g.right_total
    nb = h.neighborhood(anchor)
    count = 0
    for other in combinations(range(h.n), g.r):
        if len(nb & h.neighborhood(other)) >= bar:
            count += 1
    return count


def _neighborhoods_left(h: Hypergraph) -> dict[tuple[int, ...], frozenset]:
    r, _ = split_sizes(h.k)
    return {p: h.neighborhood(p) for p in combinations(range(h.n), r)}


def case_a(h: Hypergraph, gamma: float) -> bool:
    """Every r-set has at least (1/2 + gamma)*binom(n,r) good partners.

    Two r-sets are good partners when their neighborhoods share at least
    gamma*binom(n,r') right vertices. Sensible for 0 < gamma < 1/2.
    """
    if not 0 < gamma < 1:
        raise InvalidInputError(f"gamma must be in (0, 1), got {gamma}")
    g = AuxGraph(h)
    nbs = _neighborhoods_left(h)
    need = (0.5 + gamma) * g.left_total
    bar = gamma * g.right_total
    lefts = list(nbs)
    for b in lefts:
        nb_b = nbs[b]
        good = sum(1 for a in lefts if len(nb_b & nbs[a]) >= bar)
        if good < need:
            return False
    return True


def case_b(h: Hypergraph, gamma: float) -> bool:
    """At least 2*gamma*binom(n,r') right vertices have degree >= (1/2+gamma)*binom(n,r)."""
    if not 0 < gamma < 1:
        raise InvalidInputError(f"gamma must be in (0, 1), got {gamma}")
    g = AuxGraph(h)
    heavy = sum(
        1
        for p in combinations(range(h.n), g.r_prime)
        if h.degree(p) >= (0.5 + gamma) * g.left_total
    )
    return heavy >= 2 * gamma * g.right_total


@dataclass
class PartitionDerivation:
    """Two-block structure extracted from a case-(a) witness.

    ``left_strong`` holds the r-sets whose neighborhoods hit the witness
    neighborhood substantially; ``left_weak`` the rest. ``left_class_1``
    and ``right_class_1`` are the balanced completions (ceil of half on
    each side, filled lexicographically). Diagnostics carry the four
    between-class aux edge counts.
    """

    witness: tuple[int, ...]
    left_strong: tuple[tuple[int, ...], ...]
    left_weak: tuple[tuple[int, ...], ...]
    right_hit: tuple[tuple[int, ...], ...]
    right_miss: tuple[tuple[int, ...], ...]
    left_class_1: tuple[tuple[int, ...], ...]
    left_class_2: tuple[tuple[int, ...], ...]
    right_class_1: tuple[tuple[int, ...], ...]
    right_class_2: tuple[tuple[int, ...], ...]
    coloring: PartitionColoring
    diagnostics: dict = field(default_factory=dict)


def derive_partition(h: Hypergraph, gamma: float) -> PartitionDerivation:
    """Derive the two-block partition when neither dichotomy case holds.

    The witness is the r-set with the fewest good partners, preferring
    higher aux degree and then lexicographic order among ties, so that a
    degenerate low-degree witness is only picked when nothing better
    violates case (a). Raises CaseHoldsError naming the case otherwise.
    """
    _check_sweep(h)
    if case_a(h, gamma):
        raise CaseHoldsError("a")
    if case_b(h, gamma):
        raise CaseHoldsError("b")
    g = AuxGraph(h)
    nbs = _neighborhoods_left(h)
    need = (0.5 + gamma) * g.left_total
    bar = gamma * g.right_total
    lefts = sorted(nbs)

    witness = None
    witness_key = None
    for b in lefts:
        nb_b = nbs[b]
        good = sum(1 for a in lefts if len(nb_b & nbs[a]) >= bar)
        if good < need:
            key = (-len(nb_b), b)
            if witness_key is None or key < witness_key:
                witness, witness_key = b, key
    assert witness is not None

    right_hit = sorted(nbs[witness])
    hit_set = set(right_hit)
    left_weak = [p for p in lefts if len(hit_set & nbs[p]) < bar]
    weak_set = set(left_weak)
    left_strong = [p for p in lefts if p not in weak_set]
    right_all = list(combinations(range(h.n), g.r_prime))
    right_miss = [p for p in right_all if p not in hit_set]

    left_class_1 = _balanced_completion(left_strong, left_weak, (g.left_total + 1) // 2)
    left_class_2 = [p for p in lefts if p not in set(left_class_1)]
    right_class_1 = _balanced_completion(right_hit, right_miss, (g.right_total + 1) // 2)
    right_class_2 = [p for p in right_all if p not in set(right_class_1)]

    phi = {p: 1 for p in left_class_1}
    phi.update({p: 2 for p in left_class_2})
    psi = {p: 1 for p in right_class_1}
    psi.update({p: 2 for p in right_class_2})
    coloring = PartitionColoring(h.n, h.k, phi, psi)

    def block_edges(ls, rs):
        rset = set(rs)
        total = 0
        for p in ls:
            total += sum(1 for q in nbs[p] if q in rset)
        return total

    diagnostics = {
        "within11": block_edges(left_class_1, right_class_1),
        "within22": block_edges(left_class_2, right_class_2),
        "cross12": block_edges(left_class_1, right_class_2),
        "cross21": block_edges(left_class_2, right_class_1),
        "leftStrong": len(left_strong),
        "leftWeak": len(left_weak),
        "rightHit": len(right_hit),
        "rightMiss": len(right_miss),
        "witnessDegree": len(nbs[witness]),
    }
    return PartitionDerivation(
        witness=witness,
        left_strong=tuple(left_strong),
        left_weak=tuple(left_weak),
        right_hit=tuple(right_hit),
        right_miss=tuple(right_miss),
        left_class_1=tuple(left_class_1),
        left_class_2=tuple(left_class_2),
        right_class_1=tuple(right_class_1),
        right_class_2=tuple(right_class_2),
        coloring=coloring,
        diagnostics=diagnostics,
    )


def _balanced_completion(preferred, rest, size):
    """Lexicographic fill: as much of ``preferred`` as fits, topped up from rest."""
    preferred = sorted(preferred)
    if len(preferred) >= size:
        return preferred[:size]
    fill = sorted(rest)[: size - len(preferred)]
    return sorted(preferred + fill)


@dataclass(frozen=True)
class ColorPairCounts:
    """Same/different color counts for one vertex pair, both sides.

    ``same`` counts (r+1)-sets containing the pair whose two single-vertex
    deletions have equal phi colors; ``diff`` counts unequal ones. The
    primed fields do the same over (r'+1)-sets with psi. For k = 3 (so
    r' = 1) the primed counts degenerate to checking psi on the two
    singletons themselves, which is the intended behavior of the stated
    (r'+1)-set definition; an (r'-1)-set variant would instead be
    identically zero there.
    """

    same: int
    diff: int
    same_prime: int
    diff_prime: int


def cd_counts(coloring: PartitionColoring, u: int, v: int) -> ColorPairCounts:
    """Count color agreement of deletions over supersets of {u, v}.

    Satisfies same + diff = binom(n-2, r-1) and the primed analogue
    exactly, for every total coloring.
    """
    if u == v:
        raise InvalidInputError("vertex pair must be distinct")
    if coloring.k < 2:
        raise InvalidQueryError("pair color counts need k >= 2")
    n = coloring.n
    others = [w for w in range(n) if w != u and w != v]

    def count(mapping, size):
        same = diff = 0
        for extra in combinations(others, size - 2):
            s = tuple(sorted(extra + (u, v)))
            minus_u = tuple(w for w in s if w != u)
            minus_v = tuple(w for w in s if w != v)
            if mapping[minus_u] == mapping[minus_v]:
                same += 1
            else:
                diff += 1
        return same, diff

    same, diff = count(coloring.phi, coloring.r + 1)
    same_p, diff_p = count(coloring.psi, coloring.r_prime + 1)
    return ColorPairCounts(same, diff, same_p, diff_p)


@dataclass
class StructureReport:
    """Vertex classes recovered from a coloring, plus pair statistics.

    The case flags and model-distance fields are filled by callers that
    also hold the hypergraph; pair classification alone cannot know them.
    """

    v0: tuple[int, ...]
    v1: tuple[int, ...]
    v2: tuple[int, ...]
    anchor: int
    consistent_pairs: int
    similar_pairs: int
    flags: tuple[str, ...]
    beta1: float
    bad_ksets: int | None = None
    edit_distance: int | None = None
    case_a: bool | None = None
    case_b: bool | None = None

    def to_json_dict(self) -> dict:
        return {
            "V0": list(self.v0),
            "V1": list(self.v1),
            "V2": list(self.v2),
            "anchor": self.anchor,
            "consistentPairs": self.consistent_pairs,
            "similarPairs": self.similar_pairs,
            "badKSets": self.bad_ksets,
            "editDistance": self.edit_distance,
            "caseA": self.case_a,
            "caseB": self.case_b,
            "flags": list(self.flags),
        }


def classify_pairs(coloring: PartitionColoring, beta1: float) -> StructureReport:
    """Recover the vertex bipartition behind a near-model coloring.

    A pair is consistent when smallness of its same-count transfers
    between the two sides and likewise for the diff-count; similar when
    either unprimed count is small. The anchor vertex maximizes the number
    of vertices both consistent and similar to it (lowest index on ties)
    and joins the diff-small class itself. V0 collects the vertices
    related to the anchor by neither property; V1/V2 split the rest by
    which count is small.
    """
    if not 0 < beta1 < 1:
        raise InvalidInputError(f"beta1 must be in (0, 1), got {beta1}")
    n, r, r_prime = coloring.n, coloring.r, coloring.r_prime
    small = beta1 * n ** (r - 1)
    small_prime = beta1 * n ** (r_prime - 1)
    flags: list[str] = []
    if binom(n - 2, r - 1) <= 2 * small:
        flags.append("degenerate-threshold")

    counts: dict[tuple[int, int], ColorPairCounts] = {}
    for u, v in combinations(range(n), 2):
        counts[(u, v)] = cd_counts(coloring, u, v)

    def consistent(c: ColorPairCounts) -> bool:
        return ((c.same <= small) == (c.same_prime <= small_prime)) and (
            (c.diff <= small) == (c.diff_prime <= small_prime)
        )

    def similar(c: ColorPairCounts) -> bool:
        return c.same <= small or c.diff <= small

    consistent_pairs = sum(1 for c in counts.values() if consistent(c))
    similar_pairs = sum(1 for c in counts.values() if similar(c))

    def both(u: int, v: int) -> bool:
        c = counts[(min(u, v), max(u, v))]
        return consistent(c) and similar(c)

    anchor = max(
        range(n), key=lambda u: (sum(1 for v in range(n) if v != u and both(u, v)), -u)
    )

    v0, v1, v2 = [], [anchor], []
    for v in range(n):
        if v == anchor:
            continue
        c = counts[(min(anchor, v), max(anchor, v))]
        if not (consistent(c) and similar(c)):
            v0.append(v)
        elif c.diff <= small:
            v1.append(v)
            if c.same <= small:
                flags.append("ambiguous-pair")
        else:
            v2.append(v)
    return StructureReport(
        v0=tuple(v0),
        v1=tuple(sorted(v1)),
        v2=tuple(v2),
        anchor=anchor,
        consistent_pairs=consistent_pairs,
        similar_pairs=similar_pairs,
        flags=tuple(dict.fromkeys(flags)),
        beta1=beta1,
    )


@dataclass
class RecoveryReport:
    """Composite partition-recovery diagnostics on top of classify_pairs.

    For each mixed profile (r-i vertices from V1, i from V2) the dominant
    phi class and its fraction are reported, and likewise for psi; exact
    model colorings alternate the dominant class with i at fraction 1.
    """

    structure: StructureReport
    left_profiles: tuple[tuple[int, int, int, int], ...]  # (i, in_class_1, total, dominant)
    right_profiles: tuple[tuple[int, int, int, int], ...]
    v1_size: int
    v2_size: int


def recovery_report(coloring: PartitionColoring, beta1: float) -> RecoveryReport:
    structure = classify_pairs(coloring, beta1)
    v1, v2 = list(structure.v1), list(structure.v2)

    def profiles(mapping, size):
        rows = []
        for i in range(size + 1):
            total = 0
            in1 = 0
            for pa in combinations(v1, size - i):
                for pb in combinations(v2, i):
                    s = tuple(sorted(pa + pb))
                    total += 1
                    if mapping[s] == 1:
                        in1 += 1
            dominant = 1 if 2 * in1 >= total else 2
            rows.append((i, in1, total, dominant))
        return tuple(rows)

    return RecoveryReport(
        structure=structure,
        left_profiles=profiles(coloring.phi, coloring.r),
        right_profiles=profiles(coloring.psi, coloring.r_prime),
        v1_size=len(v1),
        v2_size=len(v2),
    )
