"""Riemann zeta values for integer s >= 2, with certified error bounds.

The primary method is the defining series truncated at M terms, where M is
sized from the integral tail bound: the remainder after M terms lies in
(0, M**(1-s)/(s-1)).  The recorded ``tail_bound`` additionally includes a
floating-point allowance, so the enclosure [value, value + tail_bound]
genuinely contains zeta(s) even in double precision.  The Euler product
over primes serves as an independent cross-check; it approaches zeta(s)
from below as the prime limit grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import _kernels
from .arith import sieve_primes
from .errors import ResourceLimitError

# Below this tolerance double precision can no longer back the certificate.
MIN_TOL = 1e-12
# Refuse series lengths that would take minutes to sum.
MAX_SERIES_TERMS = 2_000_000_000


@dataclass(frozen=True)
class ZetaValue:
    """A certified series evaluation: zeta(s) lies in [value, value + tail_bound]."""

    s: int
    value: float
    tail_bound: float
    terms: int


def _integral_tail(m: int, s: int) -> float:
    return float(m) ** (1 - s) / (s - 1)


def _validate(s: int, tol: float) -> None:
    if s <= 1:
        raise ValueError(f"zeta series diverges for s <= 1, got s={s}")
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if tol < MIN_TOL:
        raise ValueError(f"tolerance {tol} below double-precision floor {MIN_TOL}")


@lru_cache(maxsize=64)
def zeta(s: int, tol: float = 1e-9) -> ZetaValue:
    """Partial series sum with a tail bound guaranteed to be <= tol.

    M is the smallest term count whose integral tail bound fits inside
    0.99*tol; the remaining 1% of the budget absorbs double-precision
    summation error, keeping the recorded enclosure honest.
    """
    _validate(s, tol)
    budget = 0.99 * tol
    m = max(1, math.ceil(budget ** (-1.0 / (s - 1)) * (s - 1) ** (-1.0 / (s - 1))))
    while _integral_tail(m, s) > budget:
        m += 1
    if m > MAX_SERIES_TERMS:
        raise ResourceLimitError(
            f"zeta({s}) at tol={tol} needs {m} series terms "
            f"(limit {MAX_SERIES_TERMS}); use a coarser tolerance",
            limit=MAX_SERIES_TERMS,
        )
    value = _kernels.zeta_partial_sum(s, m)
    return ZetaValue(s=s, value=value, tail_bound=_integral_tail(m, s) + 0.01 * tol, terms=m)


def inv_zeta(s: int, tol: float = 1e-9) -> float:
    """1/zeta(s) within tol of the true value.

    Since zeta(s) >= 1 and the series value is within tail_bound <= tol of
    zeta(s), the reciprocal inherits the same absolute error bound.
    """
    return 1.0 / zeta(s, tol).value


def zeta_euler_product(s: int, prime_limit: int) -> float:
    """prod(1/(1 - p**-s)) over primes p <= prime_limit.

    A lower approximation to zeta(s), nondecreasing in prime_limit; the
    empty product (prime_limit < 2) is 1.
    """
    if s <= 1:
        raise ValueError(f"zeta series diverges for s <= 1, got s={s}")
    if prime_limit < 1:
        raise ValueError(f"prime_limit must be >= 1, got {prime_limit}")
    out = 1.0
    for p in sieve_primes(prime_limit):
        out /= 1.0 - float(p) ** (-s)
    return out
