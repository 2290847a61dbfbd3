"""Executable counting checks: discrepancy sums, span profiles, the shadow
clique bound, and parity-split binomial sums.

All identities are checked with exact integers. The one real-valued piece,
the clique bound, solves an edge-count equation for a real x by bisection
and evaluates the bound through the falling-factorial extension of the
binomial coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial

from .hypercore import Hypergraph, InvalidInputError, binom

_BISECT_TOL = 1e-9
_INCONCLUSIVE_REL = 1e-6


@dataclass(frozen=True)
class CheckResult:
    check: str
    lhs: object
    rhs: object
    margin: object
    verdict: str  # "pass" | "fail" | "inconclusive"

    def to_json_dict(self) -> dict:
        def plain(x):
            if isinstance(x, Fraction):
                return int(x) if x.denominator == 1 else float(x)
            return x

        return {
            "check": self.check,
            "lhs": plain(self.lhs),
            "rhs": plain(self.rhs),
            "margin": plain(self.margin),
            "verdict": self.verdict,
        }


def pair_discrepancy_count(f: Hypergraph, u: int, v: int) -> int:
    """(r+1)-supersets of {u, v} where deleting u vs v differs on edge-ness.

    Symmetric in u, v and invariant under complementing f.
    """
    if u == v:
        raise InvalidInputError("vertex pair must be distinct")
    r = f.k
    count = 0
    others = [w for w in range(f.n) if w != u and w != v]
    for extra in combinations(others, r - 1):
        s = set(extra)
        s.add(u)
        s.add(v)
        minus_u = tuple(sorted(s - {u}))
        minus_v = tuple(sorted(s - {v}))
        if f.is_edge(minus_u) != f.is_edge(minus_v):
            count += 1
    return count


def pair_discrepancy_total(f: Hypergraph) -> int:
    """Sum of pair_discrepancy_count over unordered vertex pairs.

    Computed in one pass from the span profile identity would be circular;
    this walks all (r+1)-subsets directly.
    """
    r = f.k
    total = 0
    for s in combinations(range(f.n), r + 1):
        spanned = sum(1 for sub in combinations(s, r) if f.is_edge(sub))
        total += spanned * (r + 1 - spanned)
    return total


@dataclass(frozen=True)
class SpanProfile:
    """counts[i] = number of (r+1)-subsets spanning exactly i edges."""

    r: int
    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        assert len(self.counts) == self.r + 2


def span_profile(f: Hypergraph) -> SpanProfile:
    counts = [0] * (f.k + 2)
    for s in combinations(range(f.n), f.k + 1):
        spanned = sum(1 for sub in combinations(s, f.k) if f.is_edge(sub))
        counts[spanned] += 1
    return SpanProfile(f.k, f.n, tuple(counts))


def verify_profile_identities(f: Hypergraph) -> list[CheckResult]:
    """The two exact double-counting identities, plus a reported lower bound.

    Asserted: |E|(n-r) = sum i*t_i and the pair-discrepancy total equals
    sum i*(r+1-i)*t_i. Reported only (the guarantee is asymptotic): the
    discrepancy total against alpha*(1-alpha)*binom(n, r+1) with alpha the
    smaller of density and co-density; a shortfall is marked inconclusive,
    never fail.
    """
    r, n = f.k, f.n
    profile = span_profile(f)
    t = profile.counts
    lhs1 = len(f.edges) * (n - r)
    rhs1 = sum(i * t[i] for i in range(1, r + 2))
    m = pair_discrepancy_total(f)
    rhs2 = sum(i * (r + 1 - i) * t[i] for i in range(1, r + 1))
    results = [
        CheckResult("edge-extension-count", lhs1, rhs1, lhs1 - rhs1,
                    "pass" if lhs1 == rhs1 else "fail"),
        CheckResult("discrepancy-profile-sum", m, rhs2, m - rhs2,
                    "pass" if m == rhs2 else "fail"),
    ]
    total = binom(n, r)
    if total and n >= r + 1:
        rho = Fraction(len(f.edges), total)
        alpha = min(rho, 1 - rho)
        bound = alpha * (1 - alpha) * binom(n, r + 1)
        results.append(
            CheckResult(
                "pair-discrepancy-lower-bound",
                m,
                bound,
                m - bound,
                "pass" if m >= bound else "inconclusive",
            )
        )
    return results


def real_binomial(x: float, j: int) -> float:
    """Falling-factorial extension x(x-1)...(x-j+1)/j! for real x."""
    out = 1.0
    for i in range(j):
        out *= x - i
    return out / factorial(j)


def clique_shadow_bound_check(f: Hypergraph) -> CheckResult:
    """Cliques-on-one-more-vertex bound from the edge count.

    Solves |E| = C(x, r) for real x >= r by bisection (tolerance 1e-9 on
    x; snapped to the exact integer when the edge count is a plain
    binomial) and checks that the number of (r+1)-subsets spanning all
    their r-subsets is at most C(x, r+1). A violation smaller than 1e-6 of
    the bound is inconclusive rather than fail, since x itself is only
    known to rounding.
    """
    r, n = f.k, f.n
    edges = len(f.edges)
    if edges == 0:
        raise InvalidInputError("clique bound needs a non-empty hypergraph")
    cliques = span_profile(f).counts[r + 1]

    lo, hi = float(r), float(max(n, r + 1))
    while real_binomial(hi, r) < edges:
        hi *= 2
    while hi - lo > _BISECT_TOL:
        mid = (lo + hi) / 2
        if real_binomial(mid, r) < edges:
            lo = mid
        else:
            hi = mid
    x = (lo + hi) / 2
    snapped = round(x)
    if abs(x - snapped) < 1e-7 and snapped >= r and binom(snapped, r) == edges:
        x = float(snapped)
        bound: float = float(binom(snapped, r + 1))
    else:
        bound = real_binomial(x, r + 1)
    margin = bound - cliques
    if margin >= 0:
        verdict = "pass"
    elif -margin <= _INCONCLUSIVE_REL * max(bound, 1.0):
        verdict = "inconclusive"
    else:
        verdict = "fail"
    return CheckResult("clique-shadow-bound", cliques, bound, margin, verdict)


@dataclass(frozen=True)
class ParitySplit:
    even: int
    odd: int


def parity_split_sums(a: int, b: int, r: int) -> ParitySplit:
    """Split sum_i C(a, r-i) C(b, i) by the parity of i.

    Exactly: even + odd = C(a+b, r), and even - odd is the degree-r
    coefficient of (1+z)^a (1-z)^b.
    """
    if a < 0 or b < 0 or r < 0:
        raise InvalidInputError("arguments must be nonnegative")
    even = odd = 0
    for i in range(r + 1):
        term = binom(a, r - i) * binom(b, i)
        if i % 2 == 0:
            even += term
        else:
            odd += term
    return ParitySplit(even, odd)


def evensum_asymptotic_check(c, r: int, n: int) -> list[CheckResult]:
    """Compare both parity sums at a = cn, b = (1-c)n against their leading terms.

    Leading terms: n^r/(2 r!) * (1 +- (2c-1)^r). The error envelope is the
    deliberately loose explicit constant 2^r * r times n^(r-1); its job is
    regression detection, not sharpness. c must make cn integral.
    """
    if r < 1 or n < 1:
        raise InvalidInputError("need r >= 1 and n >= 1")
    c = Fraction(c)
    if not 0 <= c <= 1:
        raise InvalidInputError(f"c must be in [0, 1], got {c}")
    cn = c * n
    if cn.denominator != 1:
        raise InvalidInputError(f"c*n = {cn} is not an integer")
    a = int(cn)
    b = n - a
    split = parity_split_sums(a, b, r)
    base = Fraction(n**r, 2 * factorial(r))
    signed = (2 * c - 1) ** r
    envelope = 2**r * r * n ** (r - 1)
    out = []
    for name, exact, lead in (
        ("evensum-envelope", split.even, base * (1 + signed)),
        ("oddsum-envelope", split.odd, base * (1 - signed)),
    ):
        err = abs(exact - lead)
        out.append(
            CheckResult(name, err, Fraction(envelope), Fraction(envelope) - err,
                        "pass" if err <= envelope else "fail")
        )
    return out
