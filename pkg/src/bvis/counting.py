"""Exact counts of visible points in finite boxes, plus density reports.

The workhorse is Moebius inclusion-exclusion over the invisibility events
"p**ei divides li for every i" (one event per prime p):

    V = sum_{d >= 1} mu(d) * prod_i floor(Mi / d**ei)

The sum truncates at d <= min_i iroot(Mi, ei): past that point some factor
floor(Mi / d**ei) is zero in every term.  Counts are exact big integers;
only the empirical proportion inside a DensityReport touches floating
point.  Brute-force enumeration with an arbitrary predicate is kept as an
independent cross-check of the identity.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .arith import floor_root, iroot, mobius_table
from .errors import PreconditionError, ResourceLimitError, UsageError
from .visibility import (
    RationalExponentVector,
    as_exponent_vector,
    as_rational_exponent_vector,
    gcd_is_one_rational,
    reduce_b,
)
from .zeta import inv_zeta

DEFAULT_BRUTE_LIMIT = 10_000_000

# Density comparisons happen at 1e-2..1e-3 scale; 1e-6 on the zeta side is
# three orders finer than any of them and keeps zeta(2) at ~1e6 series terms.
DENSITY_ZETA_TOL = 1e-6


@dataclass(frozen=True)
class BoxSpec:
    """Per-coordinate upper bounds (N1,...,Nk); the box is [1,N1]x...x[1,Nk].

    Density boxes always have every edge >= 1; a zero edge (empty box) is
    tolerated for brute-force cross-checks and counts as zero points.
    """

    edges: tuple[int, ...]

    def __post_init__(self):
        if len(self.edges) < 1:
            raise UsageError("box needs at least one edge")
        if any(e < 0 for e in self.edges):
            raise UsageError(f"box edges must be >= 0, got {self.edges}")

    @property
    def volume(self) -> int:
        return math.prod(self.edges)


@dataclass(frozen=True)
class DensityReport:
    """Exact count over a box next to the limiting density 1/zeta(s).

    ``theoretical`` is None when no finite density applies (exponent sum
    below 2, or a signed vector with no negative entries).  ``empirical``
    and ``abs_error`` are the only floating-point quantities; abs_error is
    defined on the already-rounded floats so that consumers can reproduce
    it exactly from a serialized report.
    """

    box: BoxSpec
    visible_count: int
    total: int
    exponent_sum: int
    theoretical: float | None

    def __post_init__(self):
        if self.total < 1:
            raise UsageError("density reports need a nonempty box")
        if not 0 <= self.visible_count <= self.total:
            raise UsageError(
                f"count {self.visible_count} outside [0, {self.total}]"
            )

    @property
    def empirical(self) -> float:
        return float(Fraction(self.visible_count, self.total))

    @property
    def abs_error(self) -> float | None:
        if self.theoretical is None:
            return None
        return abs(self.empirical - self.theoretical)


def mobius_box_count(edges: Sequence[int], exps: Sequence[int]) -> int:
    """Tuples l in the box with no prime p dividing as p**exps[i] | l[i] for all i."""
    edges = tuple(int(m) for m in edges)
    exps = tuple(int(e) for e in exps)
    if len(edges) != len(exps) or not edges:
        raise UsageError("edges and exponents must align, k >= 1")
    if any(e < 1 for e in exps):
        raise UsageError(f"exponents must be >= 1, got {exps}")
    if any(m < 0 for m in edges):
        raise UsageError(f"edges must be >= 0, got {edges}")
    if any(m == 0 for m in edges):
        return 0
    bound = min(iroot(m, e) for m, e in zip(edges, exps))
    mu = mobius_table(bound)
    total = 0
    for d in range(1, bound + 1):
        sign = mu[d]
        if sign == 0:
            continue
        term = 1
        for m, e in zip(edges, exps):
            term *= m // d**e
            if term == 0:
                break
        total += sign * term
    return total


def count_visible_int(N: int, b) -> int:
    """Number of b-visible points in [1,N]^k, exactly.

    b is reduced by its gcd first (visibility is invariant under that), so
    the Moebius identity applies with gcd(b) = 1.
    """
    if N < 1:
        raise UsageError(f"N must be >= 1, got {N}")
    vec = reduce_b(b)
    return mobius_box_count((N,) * len(vec), vec.entries)


def rational_box_edges(N: int, vec: RationalExponentVector) -> tuple[int, ...]:
    alpha = vec.denominator_lcm
    return tuple(floor_root(N, a, alpha) for a in vec.denominators)


def _require_gcd_one(vec: RationalExponentVector) -> None:
    if not gcd_is_one_rational(vec):
        raise PreconditionError(
            f"exponent vector ({', '.join(str(f) for f in vec.fractions)}) violates "
            "the gcd-one condition: no integer combination of the entries equals 1"
        )


def count_visible_rat(N: int, b) -> DensityReport:
    """Density report for positive rational exponents bi/ai.

    Base tuples l range over the box with edges Mi = floor(N**(ai/alpha));
    l is visible exactly when it is visible for the integer numerator
    vector, so the Moebius sum runs with exponents bi.  The limiting
    density is 1/zeta(sum bi).
    """
    vec = as_rational_exponent_vector(b)
    if any(n < 0 for n in vec.numerators):
        raise UsageError("count_visible_rat expects positive exponents; use count_visible_signed")
    _require_gcd_one(vec)
    if N < 1:
        raise UsageError(f"N must be >= 1, got {N}")
    edges = rational_box_edges(N, vec)
    count = mobius_box_count(edges, vec.numerators)
    s = sum(vec.numerators)
    return DensityReport(
        box=BoxSpec(edges),
        visible_count=count,
        total=math.prod(edges),
        exponent_sum=s,
        theoretical=inv_zeta(s, DENSITY_ZETA_TOL) if s >= 2 else None,
    )


def count_visible_signed(N: int, b) -> DensityReport:
    """Density report for signed rational exponents.

    Only coordinates with negative exponents constrain visibility, so the
    count factorizes: (product of the other edges) times a Moebius count
    over the negative positions with exponents |bj|.  The limiting density
    is 1/zeta(sum over J of |bj|); with J empty every point is visible and
    no finite density is attached.
    """
    vec = as_rational_exponent_vector(b)
    _require_gcd_one(vec)
    if N < 1:
        raise UsageError(f"N must be >= 1, got {N}")
    edges = rational_box_edges(N, vec)
    neg = sorted(i for i, n in enumerate(vec.numerators) if n < 0)
    if neg:
        j_count = mobius_box_count(
            tuple(edges[j] for j in neg),
            tuple(-vec.numerators[j] for j in neg),
        )
        rest = math.prod(edges[h] for h in range(len(edges)) if h not in neg)
        count = rest * j_count
        s = sum(-vec.numerators[j] for j in neg)
    else:
        count = math.prod(edges)
        s = 0
    return DensityReport(
        box=BoxSpec(edges),
        visible_count=count,
        total=math.prod(edges),
        exponent_sum=s,
        theoretical=inv_zeta(s, DENSITY_ZETA_TOL) if s >= 2 else None,
    )


def brute_force_limit(limit: int | None = None) -> int:
    """Configured ceiling on brute-force box volume (BVIS_BRUTE_LIMIT overrides)."""
    if limit is not None:
        return limit
    env = os.environ.get("BVIS_BRUTE_LIMIT")
    if env:
        return int(env)
    return DEFAULT_BRUTE_LIMIT


def count_visible_bruteforce(
    box: BoxSpec | Iterable[int],
    predicate: Callable[[tuple[int, ...]], bool],
    limit: int | None = None,
) -> int:
    """Full enumeration of the box, counting points where predicate holds.

    Independent of the Moebius identity; used to cross-validate it.  The
    box volume must stay within the configured limit.
    """
    spec = box if isinstance(box, BoxSpec) else BoxSpec(tuple(int(e) for e in box))
    cap = brute_force_limit(limit)
    if spec.volume > cap:
        raise ResourceLimitError(
            f"brute-force box of {spec.volume} points exceeds limit {cap}", limit=cap
        )
    if spec.volume == 0:
        return 0
    ranges = [range(1, e + 1) for e in spec.edges]
    return sum(1 for point in itertools.product(*ranges) if predicate(point))


def _normalize_case(case: str) -> str:
    text = case.strip().lower()
    if text in ("int", "integer"):
        return "int"
    if text in ("rat", "rational"):
        return "rat"
    if text == "signed":
        return "signed"
    raise UsageError(f"unknown case {case!r}; expected int, rat, or signed")


def density_report(N: int, b, case: str) -> DensityReport:
    """Count + empirical proportion + theoretical 1/zeta density, one call.

    ``case`` selects the exponent family: "int" (positive integers over
    [1,N]^k), "rat" (positive rationals over the restricted-lattice box),
    or "signed".
    """
    kind = _normalize_case(case)
    if kind == "rat":
        return count_visible_rat(N, b)
    if kind == "signed":
        return count_visible_signed(N, b)
    vec = as_exponent_vector(b)
    if N < 1:
        raise UsageError(f"N must be >= 1, got {N}")
    count = count_visible_int(N, vec)
    s = sum(reduce_b(vec).entries)
    edges = (N,) * len(vec)
    return DensityReport(
        box=BoxSpec(edges),
        visible_count=count,
        total=math.prod(edges),
        exponent_sum=s,
        theoretical=inv_zeta(s, DENSITY_ZETA_TOL) if s >= 2 else None,
    )
