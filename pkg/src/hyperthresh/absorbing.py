"""Absorbing sets, structured absorber enumeration, and the matching pipeline.

A set S absorbs a disjoint set Q when both the subhypergraph on S and the
one on S union Q have perfect matchings: a matching covering S can then
swallow Q. Two structured absorber shapes are enumerated for a k-set
target Q, split into an x-part (first r' vertices) and a y-part (last r),
with r = ceil(k/2), r' = k - r:

* k-absorbers: a single edge x'y' (|x'| = r, |y'| = r') such that the
  x-part extends x' to an edge and the y-part extends y' to an edge;
* 2k-absorbers: disjoint tuples x'(r), y'(r'), w'(r'), z'(r) carrying five
  edges x'w', y'z', w'z', (x-part)x', (y-part)y'. The absorber's own
  perfect matching is {x'w', y'z'}; together with Q it re-matches as
  {(x-part)x', (y-part)y', w'z'}.

The pipeline builds a small absorbing matching greedily, runs the random
greedy matcher on the rest, then absorbs the leftover by one exact solve
on the absorbed region.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations

from .hypercore import Hypergraph, InvalidInputError, mask_of, vertex_tuple
from .matching import (
    Matching,
    SearchBudgetExceeded,
    find_perfect_matching,
    max_matching_greedy,
    verify_matching,
)


@dataclass(frozen=True)
class AbsorptionCertificate:
    """Evidence that ``absorber`` absorbs ``target``: both matchings verify."""

    target: tuple[int, ...]
    absorber: tuple[int, ...]
    matching_on_absorber: Matching
    matching_on_union: Matching


def _perfect_matching_on(h: Hypergraph, vertices) -> Matching | None:
    """Exact perfect matching of h restricted to ``vertices``, original labels."""
    vs = vertex_tuple(vertices, h.n)
    if not vs:
        return Matching(())
    if len(vs) % h.k != 0:
        return None
    sub = h.induced(vs)
    m = find_perfect_matching(sub)
    if m is None:
        return None
    return Matching(tuple(tuple(vs[i] for i in e) for e in m.edges))


def is_absorbing(h: Hypergraph, absorber, target) -> AbsorptionCertificate | None:
    """Certificate that ``absorber`` absorbs ``target``, or None.

    Preconditions: the sets are disjoint, |absorber| and |absorber| +
    |target| are multiples of k.
    """
    s = vertex_tuple(absorber, h.n)
    q = vertex_tuple(target, h.n)
    if set(s) & set(q):
        raise InvalidInputError("absorber and target must be disjoint")
    if len(s) % h.k != 0 or (len(s) + len(q)) % h.k != 0:
        raise InvalidInputError(
            f"sizes |S|={len(s)}, |S|+|Q|={len(s) + len(q)} must be multiples of k={h.k}"
        )
    pm_s = _perfect_matching_on(h, s)
    if pm_s is None:
        return None
    pm_union = _perfect_matching_on(h, s + q)
    if pm_union is None:
        return None
    return AbsorptionCertificate(q, s, pm_s, pm_union)


@dataclass(frozen=True)
class StructuredAbsorber:
    """One structured absorber with the witnessing pieces.

    ``w_new``/``z_new`` are None for k-absorbers. ``matching_edges`` gives
    the perfect matching of the absorber implied by the structure.
    """

    vertices: tuple[int, ...]
    x_part: tuple[int, ...]
    y_part: tuple[int, ...]
    x_new: tuple[int, ...]
    y_new: tuple[int, ...]
    w_new: tuple[int, ...] | None = None
    z_new: tuple[int, ...] | None = None

    def matching_edges(self) -> tuple[tuple[int, ...], ...]:
        if self.w_new is None:
            return (tuple(sorted(self.x_new + self.y_new)),)
        assert self.z_new is not None
        return (
            tuple(sorted(self.x_new + self.w_new)),
            tuple(sorted(self.y_new + self.z_new)),
        )


@dataclass(frozen=True)
class AbsorberEnumeration:
    kind: str  # "k" or "2k"
    target: tuple[int, ...]
    absorbers: tuple[StructuredAbsorber, ...]
    labeled_count: int
    truncated: bool


def _split_choices(h: Hypergraph, target, all_splits: bool):
    k = h.k
    r = (k + 1) // 2
    r_prime = k - r
    q = tuple(target)
    vertex_tuple(q, h.n)  # validates range/duplicates
    if len(q) != k:
        raise InvalidInputError(f"target must have {k} vertices, got {len(q)}")
    if all_splits:
        out = []
        for x_part in combinations(sorted(q), r_prime):
            y_part = tuple(v for v in sorted(q) if v not in x_part)
            out.append((x_part, y_part))
        return r, r_prime, out
    return r, r_prime, [(q[:r_prime], q[r_prime:])]


def enumerate_absorbing_ksets(
    h: Hypergraph,
    target,
    *,
    budget: int | None = None,
    all_splits: bool = False,
) -> AbsorberEnumeration:
    """All structured k-absorbers for ``target`` (caller-supplied order).

    The x-part is the first r' vertices of ``target`` and the y-part the
    remaining r, unless ``all_splits`` unions over every choice.
    ``labeled_count`` counts (edge, split-of-edge) witnesses before
    de-duplication by vertex set; an absorber can be witnessed at most
    binom(k, r) times per target split.
    """
    r, _, splits = _split_choices(h, target, all_splits)
    qmask = mask_of(target)
    seen: dict[tuple[int, ...], StructuredAbsorber] = {}
    labeled = 0
    truncated = False
    for x_part, y_part in splits:
        for e, em in zip(h.edges, h.edge_masks):
            if em & qmask:
                continue
            for x_new in combinations(e, r):
                y_new = tuple(v for v in e if v not in x_new)
                if not h.is_edge(x_part + x_new):
                    continue
                if not h.is_edge(y_part + y_new):
                    continue
                if e not in seen:
                    if budget is not None and len(seen) >= budget:
                        truncated = True
                        break
                    seen[e] = StructuredAbsorber(e, x_part, y_part, x_new, y_new)
                labeled += 1
            if truncated:
                break
        if truncated:
            break
    return AbsorberEnumeration(
        "k", tuple(target), tuple(seen.values()), labeled, truncated
    )


def enumerate_absorbing_2ksets(
    h: Hypergraph,
    target,
    *,
    budget: int | None = None,
    all_splits: bool = False,
) -> AbsorberEnumeration:
    """All structured 2k-absorbers for ``target``; see the module docstring.

    Enumeration order is lexicographic in (x', y', w', z'), so output is
    deterministic. ``budget`` caps distinct absorbers; hitting it sets the
    truncation flag and stops the scan.
    """
    r, r_prime, splits = _split_choices(h, target, all_splits)
    qmask = mask_of(target)
    others = [v for v in range(h.n) if not (qmask >> v) & 1]
    seen: dict[tuple[int, ...], StructuredAbsorber] = {}
    labeled = 0
    truncated = False
    for x_part, y_part in splits:
        for x_new in combinations(others, r):
            if not h.is_edge(x_part + x_new):
                continue
            rest1 = [v for v in others if v not in x_new]
            for y_new in combinations(rest1, r_prime):
                if not h.is_edge(y_part + y_new):
                    continue
                rest2 = [v for v in rest1 if v not in y_new]
                for w_new in combinations(rest2, r_prime):
                    if not h.is_edge(x_new + w_new):
                        continue
                    rest3 = [v for v in rest2 if v not in w_new]
                    for z_new in combinations(rest3, r):
                        if not h.is_edge(y_new + z_new):
                            continue
                        if not h.is_edge(w_new + z_new):
                            continue
                        vertices = tuple(sorted(x_new + y_new + w_new + z_new))
                        if vertices not in seen:
                            if budget is not None and len(seen) >= budget:
                                truncated = True
                                break
                            seen[vertices] = StructuredAbsorber(
                                vertices, x_part, y_part, x_new, y_new, w_new, z_new
                            )
                        labeled += 1
                    if truncated:
                        break
                if truncated:
                    break
            if truncated:
                break
        if truncated:
            break
    return AbsorberEnumeration(
        "2k", tuple(target), tuple(seen.values()), labeled, truncated
    )


@dataclass(frozen=True)
class AbsorberAttempt:
    target: tuple[int, ...]
    k_candidates: int
    kind: str | None  # "k", "2k", or None when nothing was usable
    added: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class AbsorbingMatchingResult:
    matching: Matching
    attempts: tuple[AbsorberAttempt, ...]
    cap: int
    xi: float
    seed: int


def build_absorbing_matching(
    h: Hypergraph,
    xi: float,
    seed: int,
    *,
    attempt_limit: int | None = None,
    enum_budget: int = 64,
) -> AbsorbingMatchingResult:
    """Greedy absorbing matching of at most xi*n/k edges.

    Repeatedly samples a random k-set target among the still-free vertices
    and adds the first structured absorber (k-absorbers preferred) that
    avoids the matching built so far. Per-target availability is recorded.
    No simultaneous-absorption guarantee is claimed; coverage is whatever
    the later exact absorption phase can use.
    """
    if not 0 < xi < 1:
        raise InvalidInputError(f"xi must be in (0, 1), got {xi}")
    cap = int(xi * h.n / h.k)
    rng = random.Random(seed)
    if attempt_limit is None:
        attempt_limit = 10 * max(cap, 1) + 10
    edges: list[tuple[int, ...]] = []
    covered: set[int] = set()
    attempts: list[AbsorberAttempt] = []
    for _ in range(attempt_limit):
        if len(edges) >= cap:
            break
        free = [v for v in range(h.n) if v not in covered]
        if len(free) < h.k:
            break
        target = tuple(sorted(rng.sample(free, h.k)))
        sub = h.avoiding(covered) if covered else h
        enum_k = enumerate_absorbing_ksets(sub, target, budget=enum_budget)
        added: tuple[tuple[int, ...], ...] = ()
        kind = None
        if enum_k.absorbers:
            kind = "k"
            added = enum_k.absorbers[0].matching_edges()
        elif len(edges) + 2 <= cap:
            enum_2k = enumerate_absorbing_2ksets(sub, target, budget=1)
            if enum_2k.absorbers:
                kind = "2k"
                added = enum_2k.absorbers[0].matching_edges()
        if added:
            edges.extend(added)
            for e in added:
                covered.update(e)
        attempts.append(AbsorberAttempt(target, len(enum_k.absorbers), kind, added))
    return AbsorbingMatchingResult(Matching(tuple(edges)), tuple(attempts), cap, xi, seed)


@dataclass
class PipelineReport:
    """Outcome of the three-phase matching pipeline."""

    n: int
    k: int
    xi: float
    gamma: float
    seed: int
    absorbing: Matching
    absorbing_attempts: tuple[AbsorberAttempt, ...]
    greedy: Matching
    leftover: tuple[int, ...]
    absorption_chunks: int
    final: Matching | None
    status: str  # "perfect" | "not-perfect"
    solver_confirmed_absent: bool | None
    used_fallback: bool
    truncated: bool
    timings: dict[str, float] = field(default_factory=dict)

    def to_json_dict(self, include_timings: bool = False) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "xi": self.xi,
            "gamma": self.gamma,
            "seed": self.seed,
            "status": self.status,
            "absorbingSize": len(self.absorbing),
            "greedySize": len(self.greedy),
            "leftoverSize": len(self.leftover),
            "absorptionChunks": self.absorption_chunks,
            "solverConfirmedAbsent": self.solver_confirmed_absent,
            "usedFallback": self.used_fallback,
            "truncated": self.truncated,
            "perfect": self.final is not None,
            "edges": [list(e) for e in self.final.edges] if self.final else None,
        }
        if include_timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out


def pm_via_absorption(
    h: Hypergraph,
    *,
    xi: float = 0.1,
    gamma: float = 0.05,
    seed: int = 0,
    fallback: bool = False,
    node_budget: int | None = None,
) -> PipelineReport:
    """Absorbing matching, then greedy, then exact absorption of the leftover.

    Phase 3 re-solves the subhypergraph on V(absorbing) union leftover
    exactly, which at desk scale is cheap and strictly more permissive than
    chunk-by-chunk absorber bookkeeping. With ``fallback`` the full exact
    solver decides the instance whenever the pipeline itself stalls.

    xi and gamma are tuning knobs, not guarantees; nothing is promised at
    small n. Deterministic for a fixed seed.
    """
    if h.n % h.k != 0:
        raise InvalidInputError(f"pipeline needs k | n, got n={h.n}, k={h.k}")
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    phase1 = build_absorbing_matching(h, xi, seed)
    absorbing = phase1.matching
    timings["absorbing"] = time.perf_counter() - t0

    t1 = time.perf_counter()
    remaining = h.avoiding(sorted(absorbing.covered)) if absorbing.edges else h
    greedy = max_matching_greedy(remaining, seed)
    timings["greedy"] = time.perf_counter() - t1

    t2 = time.perf_counter()
    covered = absorbing.covered | greedy.covered
    leftover = tuple(v for v in range(h.n) if v not in covered)
    chunks = len(leftover) // h.k
    final: Matching | None = None
    used_fallback = False
    solver_absent: bool | None = None
    truncated = False
    if not leftover:
        final = absorbing.union(greedy)
    else:
        region = tuple(sorted(set(leftover) | absorbing.covered))
        rematch = _perfect_matching_on(h, region)
        if rematch is not None:
            final = greedy.union(rematch)
    if final is None and fallback:
        used_fallback = True
        try:
            solved = find_perfect_matching(h, node_budget=node_budget)
        except SearchBudgetExceeded:
            truncated = True
        else:
            solver_absent = solved is None
            if solved is not None:
                final = solved
    timings["absorption"] = time.perf_counter() - t2

    if final is not None:
        check = verify_matching(h, final, require_perfect=True)
        if not check:
            raise AssertionError(f"pipeline produced an invalid matching: {check.reason}")
    return PipelineReport(
        n=h.n,
        k=h.k,
        xi=xi,
        gamma=gamma,
        seed=seed,
        absorbing=absorbing,
        absorbing_attempts=phase1.attempts,
        greedy=greedy,
        leftover=leftover,
        absorption_chunks=chunks,
        final=final,
        status="perfect" if final is not None else "not-perfect",
        solver_confirmed_absent=solver_absent,
        used_fallback=used_fallback,
        truncated=truncated,
        timings=timings,
    )
