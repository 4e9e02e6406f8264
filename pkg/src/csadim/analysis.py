"""Realisability intervals, the large-n covering theorem, gaps and density.

Quantities involving sqrt(n) are compared exactly through squared integers;
floats appear only in values that are reported, never in pass/fail checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, nan, sqrt
from typing import List, Tuple

from csadim.core import DimTable
from csadim.errors import RangeError
from csadim.width import GREEDY_FLOOR

THEOREM_N_MIN = 225
#: alternative, more conservative threshold reported alongside the default
THEOREM_N_MIN_ALT = 255
COROLLARY_N_MIN = 49


def ceil_scaled_sqrt(p: int, q: int, x: int) -> int:
    """Smallest integer D >= 0 with D >= (p/q) * sqrt(x)."""
    d = isqrt(p * p * x) // q
    while q * q * d * d < p * p * x:
        d += 1
    return d


def sign_vs_scaled_sqrt(value: int, p: int, q: int, x: int) -> int:
    """Sign of value - (p/q) * sqrt(x), exactly."""
    if value < 0:
        return -1
    lhs, rhs = q * q * value * value, p * p * x
    return (lhs > rhs) - (lhs < rhs)


def _step2_mask(count: int) -> int:
    """Bits 0, 2, ..., 2*(count-1)."""
    return (4**count - 1) // 3 if count > 0 else 0


@dataclass(frozen=True)
class IntervalSj:
    """Dimensions n + j(j-1) + 2m' from a j x j block plus a wide CSA of M_{n-j}."""

    n: int
    j: int
    lo: int
    hi: int

    def members(self) -> range:
        return range(self.lo, self.hi + 1, 2)


def _interval_bounds(n: int, j: int) -> Tuple[int, int]:
    lo = n + j * (j - 1)
    hi = lo + (4 * (n - j) ** 2) // 9
    if (hi - n) % 2:
        hi -= 1
    return lo, hi


def interval_S(n: int, j: int) -> IntervalSj:
    """S_j for 1 <= j <= n - 38, with hi floored and moved to n's parity.

    The lower-right block has size n - j >= 38, where the greedy bound
    guarantees every 2m' <= (4/9)(n - j)^2 is realisable.
    """
    if not 1 <= j <= n - GREEDY_FLOOR:
        raise RangeError(f"j={j} outside [1, {n - GREEDY_FLOOR}] for n={n}")
    return IntervalSj(n, j, *_interval_bounds(n, j))


def intervals_overlap(n: int, j: int) -> bool:
    """hi(S_j) >= lo(S_{j+1}), from the bounds formula alone (no range check)."""
    return _interval_bounds(n, j)[1] >= _interval_bounds(n, j + 1)[0]


def overlap_root(n: int) -> float:
    """Smaller root of 4j^2 - (8n+18)j + 4n^2.

    The discriminant is 288n + 324, giving n + 9/4 - (3/2) sqrt(2n + 9/4).
    Consecutive intervals overlap for integer j at or below this value.
    """
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    return n + 2.25 - 1.5 * sqrt(2 * n + 2.25)


def j_max(n: int) -> int:
    """floor(n - (3/2) sqrt(n))."""
    if n < 3:
        raise RangeError(f"n must be >= 3, got {n}")
    return n - ceil_scaled_sqrt(3, 2, n)


def theorem_bound(n: int) -> int:
    """Largest even 2m with 2m <= n^2 - (9/2) n sqrt(n), or 0 if there is none."""
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    b = n * n - ceil_scaled_sqrt(9, 2, n**3)
    if b <= 0:
        return 0
    return b - (b % 2)


def corollary_upper(n: int) -> int:
    """floor(n^2 - (9/2) n sqrt(n) - 2n), possibly negative."""
    return n * n - 2 * n - ceil_scaled_sqrt(9, 2, n**3)


@dataclass
class CoverageReport:
    n: int
    upper: int
    checked: int
    failures: List[int]

    @property
    def ok(self) -> bool:
        return not self.failures


def _missing(bits: int, mask: int) -> List[int]:
    miss = mask & ~bits
    out = []
    while miss:
        low = miss & -miss
        out.append(low.bit_length() - 1)
        miss ^= low
    return out


def verify_theorem_main(n: int, table: DimTable) -> CoverageReport:
    """Check n + 2m in C(n) for every even 0 <= 2m <= theorem_bound(n).

    Failures are reported as the offending values of 2m.  Below n = 225 the
    theorem claims nothing, so a non-empty list there is informational.
    """
    table.check_n(n)
    if n == 0:
        return CoverageReport(0, 0, 1, [] if 0 in table.csa[0] else [0])
    upper = theorem_bound(n)
    count = upper // 2 + 1
    mask = _step2_mask(count) << n
    fails = [d - n for d in _missing(table.csa[n].bits, mask)]
    return CoverageReport(n, upper, count, fails)


def verify_corollary(n: int, table: DimTable) -> CoverageReport:
    """Check that every integer in [0, max(0, corollary_upper(n))] lies in D(n)."""
    table.check_n(n)
    upper = max(0, corollary_upper(n)) if n else 0
    mask = (1 << (upper + 1)) - 1
    return CoverageReport(n, upper, upper + 1, _missing(table.cumulative[n], mask))


@dataclass(frozen=True)
class GapRecord:
    n: int
    gap: int
    normalized: float
    sign_13_4: int
    sign_7_2: int


def gap(n: int, table: DimTable) -> GapRecord:
    """Smallest integer that is not the dimension of a semi-simple subalgebra of M_n(k)."""
    table.check_n(n)
    d = table.cumulative[n]
    g = ((d + 1) & ~d).bit_length() - 1
    if n == 0:
        return GapRecord(0, g, nan, 0, 0)
    excess = n * n - g
    return GapRecord(
        n,
        g,
        excess / n**1.5,
        sign_vs_scaled_sqrt(excess, 13, 4, n**3),
        sign_vs_scaled_sqrt(excess, 7, 2, n**3),
    )


@dataclass
class SweepSummary:
    n_lo: int
    n_hi: int
    min_normalized: float
    max_normalized: float
    frac_13_4_positive: float
    frac_7_2_negative: float


def sweep_gap(n_lo: int, n_hi: int, table: DimTable) -> Tuple[List[GapRecord], SweepSummary]:
    if n_lo < 1 or n_lo > n_hi:
        raise RangeError(f"bad sweep range [{n_lo}, {n_hi}]")
    table.check_n(n_hi)
    records = [gap(n, table) for n in range(n_lo, n_hi + 1)]
    k = len(records)
    summary = SweepSummary(
        n_lo,
        n_hi,
        min(r.normalized for r in records),
        max(r.normalized for r in records),
        sum(r.sign_13_4 > 0 for r in records) / k,
        sum(r.sign_7_2 < 0 for r in records) / k,
    )
    return records, summary


def density(n: int, table: DimTable) -> float:
    """Fraction of [0, n^2] occupied by D(n)."""
    table.check_n(n)
    return table.cumulative[n].bit_count() / (n * n + 1)


def density_lower_bound(n: int) -> float:
    return (n * n - 4.5 * n**1.5 - 2 * n) / (n * n + 1)


def density_bound_holds(n: int, table: DimTable) -> bool:
    """popcount(D(n)) >= n^2 - 2n - (9/2) n sqrt(n), exactly."""
    table.check_n(n)
    slack = n * n - 2 * n - table.cumulative[n].bit_count()
    return sign_vs_scaled_sqrt(slack, 9, 2, n**3) <= 0
