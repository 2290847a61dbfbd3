"""The acceptance suite: one callable per criterion, shared by CLI and tests.

Each criterion function returns a CriterionOutcome; ``run_suite`` executes
them all at a level. ``smoke`` trims ranges and instance counts for quick
runs; ``full`` uses the contract ranges, including the per-criterion wall
clock limits where stated.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .absorbing import (
    enumerate_absorbing_2ksets,
    enumerate_absorbing_ksets,
    is_absorbing,
    pm_via_absorption,
)
from .auxgraph import (
    aux_edge_count,
    bad_kset_count,
    cd_counts,
    classify_pairs,
    edit_distance_model,
    parity_coloring,
    split_sizes,
    PartitionColoring,
)
from .extremal import (
    Bipartition,
    ExtremalSpec,
    build,
    codegree_threshold_formula,
    extremal_family,
    min_degree_closed_form,
    parity_certificate,
    threshold,
)
from .hypercore import Hypergraph, binom, random_hypergraph
from .lemmas import (
    clique_shadow_bound_check,
    evensum_asymptotic_check,
    parity_split_sums,
    verify_profile_identities,
)
from .matching import find_perfect_matching, verify_matching

LEVELS = ("smoke", "full")


@dataclass
class CriterionOutcome:
    name: str
    passed: bool
    detail: str
    warnings: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status} {self.name}: {self.detail} [{self.elapsed:.2f}s]"
        for w in self.warnings:
            out += f"\n     warn: {w}"
        return out


def _check_level(level: str):
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}, got {level!r}")


def _family_instances(max_n: int, ks) -> list[ExtremalSpec]:
    specs = []
    for k in ks:
        for n in range(2 * k, max_n + 1, k):
            specs.extend(extremal_family(n, k))
    return specs


def criterion_extremal_nonmatchability(level: str = "full") -> CriterionOutcome:
    """Every family member is matching-free by certificate and exact search."""
    _check_level(level)
    t0 = time.perf_counter()
    max_n = 15 if level == "full" else 9
    ks = (3, 4, 5) if level == "full" else (3, 4)
    disagreements = 0
    checked = 0
    for spec in _family_instances(max_n, ks):
        cert = parity_certificate(spec)
        solver_none = find_perfect_matching(build(spec), use_cache=True) is None
        cert_says_none = cert.conclusion == "no-perfect-matching"
        if solver_none != cert_says_none or not solver_none:
            disagreements += 1
        checked += 1
    elapsed = time.perf_counter() - t0
    ok = disagreements == 0 and (level == "smoke" or elapsed < 60)
    return CriterionOutcome(
        "extremal-nonmatchability",
        ok,
        f"{checked} members, {disagreements} disagreements",
        elapsed=elapsed,
    )


def criterion_threshold_formula(level: str = "full") -> CriterionOutcome:
    """Enumerated delta(n,k,k-1) agrees with the closed formula.

    Anchors (9,3)->2, (12,3)->4, (12,4)->4 are re-derived by brute force
    (build every member, take minimum codegrees). Mismatches with n >= 3k
    fail; 2k <= n < 3k mismatches are demoted to warnings.
    """
    _check_level(level)
    t0 = time.perf_counter()
    failures: list[str] = []
    warnings: list[str] = []

    anchors = {(9, 3): 2, (12, 3): 4, (12, 4): 4}
    for (n, k), expected in anchors.items():
        brute = max(
            build(spec).min_degree(k - 1) for spec in extremal_family(n, k)
        )
        enumerated = threshold(n, k, k - 1).value
        if brute != expected or enumerated != expected:
            failures.append(f"anchor ({n},{k}): brute={brute} enum={enumerated} want {expected}")

    max_n = 28 if level == "full" else 18
    checked = 0
    for k in (3, 4):
        for n in range(2 * k, max_n + 1, k):
            delta = threshold(n, k, k - 1).value
            formula = codegree_threshold_formula(n, k)
            agree = (delta == formula) if formula.denominator == 1 else (
                delta == formula.numerator // formula.denominator
            )
            note = f"({n},{k}): delta={delta} formula={formula}"
            if not agree:
                if n >= 3 * k:
                    failures.append(note)
                else:
                    warnings.append(note + " (n < 3k, reported only)")
            if n >= 3 * k:
                checked += 1
    elapsed = time.perf_counter() - t0
    ok = not failures and (level == "smoke" or elapsed < 30)
    detail = f"{checked} (n,k) pairs + 3 anchors"
    if failures:
        detail += "; " + "; ".join(failures)
    return CriterionOutcome("threshold-formula", ok, detail, warnings, elapsed)


def criterion_closed_form_degrees(level: str = "full") -> CriterionOutcome:
    """Closed-form minimum degrees equal brute force on every family member."""
    _check_level(level)
    t0 = time.perf_counter()
    max_n = 14 if level == "full" else 9
    mismatches = 0
    checked = 0
    for n in range(4, max_n + 1):
        for k in range(2, min(8, n) + 1):
            if n % k:
                continue
            for spec in extremal_family(n, k):
                h = build(spec)
                for size in range(k):
                    if min_degree_closed_form(spec, size) != h.min_degree(size):
                        mismatches += 1
                    checked += 1
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and (level == "smoke" or elapsed < 60)
    return CriterionOutcome(
        "closed-form-degrees",
        ok,
        f"{checked} (spec, size) pairs, {mismatches} mismatches",
        elapsed=elapsed,
    )


def criterion_absorber_soundness(level: str = "full") -> CriterionOutcome:
    """Structured absorbers certify, and generic count dominates structured."""
    _check_level(level)
    t0 = time.perf_counter()
    instances = 100 if level == "full" else 20
    violations = 0
    densities = (0.3, 0.5, 0.7)
    sizes = (9, 10, 11, 12)
    for idx in range(instances):
        n = sizes[idx % len(sizes)]
        p = densities[idx % len(densities)]
        h = random_hypergraph(n, 3, p, seed=1000 + idx)
        import random as _random

        rng = _random.Random(2000 + idx)
        target = tuple(sorted(rng.sample(range(n), 3)))
        ks = enumerate_absorbing_ksets(h, target)
        for ab in ks.absorbers:
            if is_absorbing(h, ab.vertices, target) is None:
                violations += 1
        twoks = enumerate_absorbing_2ksets(h, target, budget=40)
        for ab in twoks.absorbers:
            if is_absorbing(h, ab.vertices, target) is None:
                violations += 1
        generic = 0
        others = [v for v in range(n) if v not in target]
        for s in combinations(others, 3):
            if is_absorbing(h, s, target) is not None:
                generic += 1
        if generic < len(ks.absorbers):
            violations += 1
    elapsed = time.perf_counter() - t0
    return CriterionOutcome(
        "absorber-soundness",
        violations == 0,
        f"{instances} instances, {violations} violations",
        elapsed=elapsed,
    )


def criterion_profile_identities(level: str = "full") -> CriterionOutcome:
    """Span-profile identities exact and clique bound never 'fail'."""
    _check_level(level)
    t0 = time.perf_counter()
    instances = 500 if level == "full" else 60
    bad = 0
    import random as _random

    rng = _random.Random(31)
    for idx in range(instances):
        r = rng.choice((1, 2, 3))
        n = rng.randrange(max(r + 2, 4), 13)
        p = rng.choice((0.15, 0.3, 0.5, 0.7, 0.9))
        f = random_hypergraph(n, r, p, seed=5000 + idx)
        for check in verify_profile_identities(f):
            if check.check != "pair-discrepancy-lower-bound" and check.verdict != "pass":
                bad += 1
        if f.edges:
            if clique_shadow_bound_check(f).verdict == "fail":
                bad += 1
    elapsed = time.perf_counter() - t0
    return CriterionOutcome(
        "profile-identities",
        bad == 0,
        f"{instances} hypergraphs, {bad} failed checks",
        elapsed=elapsed,
    )


def criterion_parity_split(level: str = "full") -> CriterionOutcome:
    """Vandermonde and signed-coefficient identities, plus the envelope.

    The signed identity is checked against an independent polynomial
    multiplication: full coefficient vectors of (1+z)^a and (1-z)^b are
    convolved exactly.
    """
    _check_level(level)
    t0 = time.perf_counter()
    ab_max = 40 if level == "full" else 16
    n_max = 64 if level == "full" else 32
    bad = 0
    for a in range(ab_max + 1):
        row_a = [binom(a, i) for i in range(a + 1)]
        for b in range(ab_max + 1):
            row_b = [binom(b, i) * (-1) ** i for i in range(b + 1)]
            conv = [0] * (a + b + 1)
            for i, ca in enumerate(row_a):
                for j, cb in enumerate(row_b):
                    conv[i + j] += ca * cb
            for r in range(9):
                s = parity_split_sums(a, b, r)
                if s.even + s.odd != binom(a + b, r):
                    bad += 1
                signed = conv[r] if r <= a + b else 0
                if s.even - s.odd != signed:
                    bad += 1
    envelope_checked = 0
    for c in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)):
        for n in range(1, n_max + 1):
            if (c * n).denominator != 1:
                continue
            for r in range(1, 9):
                for check in evensum_asymptotic_check(c, r, n):
                    envelope_checked += 1
                    if check.verdict != "pass":
                        bad += 1
    elapsed = time.perf_counter() - t0
    return CriterionOutcome(
        "parity-split-sums",
        bad == 0,
        f"identities to a,b<={ab_max}, {envelope_checked} envelope checks, {bad} failures",
        elapsed=elapsed,
    )


def criterion_auxgraph_exactness(level: str = "full") -> CriterionOutcome:
    """Aux edge identity, zero distance on extremal, and pair-count identities."""
    _check_level(level)
    t0 = time.perf_counter()
    bad = 0
    instances = 100 if level == "full" else 20
    import random as _random

    rng = _random.Random(77)
    for idx in range(instances):
        k = rng.choice((3, 4, 5))
        n = rng.randrange(k + 1, 13)
        h = random_hypergraph(n, k, rng.choice((0.2, 0.5, 0.8)), seed=7000 + idx)
        r, _ = split_sizes(k)
        if aux_edge_count(h) != len(h.edges) * binom(k, r):
            bad += 1

    max_n = 10 if level == "full" else 8
    for k in (3, 4, 5):
        for n in range(2 * k, max_n + 1, k):
            for spec in extremal_family(n, k):
                h = build(spec)
                col = parity_coloring(n, k, spec.bipartition.a, spec.kind)
                if edit_distance_model(h, col) != 0:
                    bad += 1
                if bad_kset_count(h, col) != 0:
                    bad += 1

    for k in (3, 4, 5):
        for n in (max(k + 2, 6), max_n):
            r, rp = split_sizes(k)
            colorings = [PartitionColoring.random(n, k, seed) for seed in (1, 2)]
            colorings.append(parity_coloring(n, k, tuple(range(n // 2))))
            for col in colorings:
                for u, v in combinations(range(n), 2):
                    c = cd_counts(col, u, v)
                    if c.same + c.diff != binom(n - 2, r - 1):
                        bad += 1
                    if c.same_prime + c.diff_prime != binom(n - 2, rp - 1):
                        bad += 1
    elapsed = time.perf_counter() - t0
    return CriterionOutcome(
        "auxgraph-exactness",
        bad == 0,
        f"{instances} random + extremal inputs, {bad} failures",
        elapsed=elapsed,
    )


def criterion_partition_recovery(level: str = "full") -> CriterionOutcome:
    """classify_pairs on parity colorings recovers the bipartition exactly."""
    _check_level(level)
    t0 = time.perf_counter()
    ns = (8, 9, 10) if level == "full" else (8,)
    bad = 0
    checked = 0
    for n in ns:
        for k in (3, 4):
            for size_a in range(1, n):
                a = tuple(range(size_a))
                col = parity_coloring(n, k, a)
                rep = classify_pairs(col, 0.01)
                b = tuple(v for v in range(n) if v not in a)
                classes = {rep.v1, rep.v2}
                if rep.v0 != () or classes != {a, b}:
                    bad += 1
                checked += 1
    elapsed = time.perf_counter() - t0
    return CriterionOutcome(
        "partition-recovery",
        bad == 0,
        f"{checked} colorings, {bad} recovery failures",
        elapsed=elapsed,
    )


def criterion_pipeline(level: str = "full") -> CriterionOutcome:
    """Pipeline perfects complete hypergraphs and rejects extremal members."""
    _check_level(level)
    t0 = time.perf_counter()
    bad = 0
    max_n = 20 if level == "full" else 12
    runs = 0
    for k in range(1, 9):
        for n in range(k, max_n + 1, k):
            h = Hypergraph.complete(n, k)
            rep = pm_via_absorption(h, seed=11)
            if rep.status != "perfect" or not verify_matching(h, rep.final, True):
                bad += 1
            runs += 1
    for spec in extremal_family(12, 3):
        h = build(spec)
        rep = pm_via_absorption(h, seed=11, fallback=True)
        if rep.status != "not-perfect" or rep.solver_confirmed_absent is not True:
            bad += 1
        again = pm_via_absorption(h, seed=11, fallback=True)
        if again.to_json_dict() != rep.to_json_dict():
            bad += 1
        runs += 1
    elapsed = time.perf_counter() - t0
    return CriterionOutcome(
        "pipeline-sanity",
        bad == 0,
        f"{runs} runs, {bad} failures",
        elapsed=elapsed,
    )


CRITERIA = (
    criterion_extremal_nonmatchability,
    criterion_threshold_formula,
    criterion_closed_form_degrees,
    criterion_absorber_soundness,
    criterion_profile_identities,
    criterion_parity_split,
    criterion_auxgraph_exactness,
    criterion_partition_recovery,
    criterion_pipeline,
)


def run_suite(level: str = "full") -> list[CriterionOutcome]:
    _check_level(level)
    return [criterion(level) for criterion in CRITERIA]
