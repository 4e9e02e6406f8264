"""Greedy decompositions 2m = sum t(t-1), greedy width and exact width.

If block sizes t_i satisfy sum t_i = n and sum t_i^2 = n + 2m then
sum t_i(t_i - 1) = 2m, so any expansion of 2m into pronic numbers t(t-1)
gives a CSA of dimension n + 2m in every M_n(k) with n >= sum t_i (pad with
1x1 blocks).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, sqrt
from typing import List, NamedTuple, Tuple

from csadim.core import DimTable
from csadim.errors import ParityError, RangeError, ResourceLimitError

#: the width below which the greedy bound falls back to a constant
GREEDY_FLOOR = 38


def _check_even(two_m: int) -> None:
    if two_m < 0:
        raise RangeError(f"2m must be nonnegative, got {two_m}")
    if two_m % 2:
        raise ParityError(f"2m must be even, got {two_m}")


def largest_pronic_root(r: int) -> int:
    """Largest t >= 1 with t(t-1) <= r.

    t(t-1) <= r  <=>  (2t-1)^2 <= 4r+1, so t = (isqrt(4r+1) + 1) // 2.
    """
    return (isqrt(4 * r + 1) + 1) // 2


@dataclass(frozen=True)
class GreedyDecomposition:
    target: int
    terms: Tuple[int, ...]

    @property
    def width(self) -> int:
        return sum(self.terms)

    def __str__(self):
        return f"{' '.join(map(str, self.terms))} | G={self.width}".lstrip()


def greedy_decomposition(two_m: int) -> GreedyDecomposition:
    """Expand ``two_m`` greedily, taking each t maximal against what remains."""
    _check_even(two_m)
    terms: List[int] = []
    r = two_m
    while r:
        # r is even and positive here, so t >= 2 and the loop makes progress
        t = largest_pronic_root(r)
        terms.append(t)
        r -= t * (t - 1)
    return GreedyDecomposition(two_m, tuple(terms))


def greedy_width(two_m: int) -> int:
    return greedy_decomposition(two_m).width


def realisable_in(two_m: int, n: int, table: DimTable) -> bool:
    """True iff M_n(k) has a CSA of dimension n + 2m."""
    _check_even(two_m)
    table.check_n(n)
    dim = n + two_m
    return dim <= n * n and dim in table.csa[n]


def exact_width(two_m: int, table: DimTable) -> int:
    """Smallest n such that 2m is realisable in dimension n.

    Realisability is monotone in n (add a 1x1 block), so this is the
    threshold from which every larger n also works.  ``exact_width(0) == 0``.
    """
    _check_even(two_m)
    for n in range(table.n_max + 1):
        if n + two_m in table.csa[n]:
            return n
    raise ResourceLimitError(
        f"width of {two_m} exceeds table n_max={table.n_max}; "
        f"greedy width {greedy_width(two_m)} is an upper bound"
    )


def exceeds_sqrt_bound(width: int, two_m: int) -> bool:
    """Exact test of width > (3/2) sqrt(2m), i.e. 4 width^2 > 18m."""
    return 4 * width * width > 9 * two_m


def greedy_bound(two_m: int) -> float:
    return 1.5 * sqrt(two_m)


class Violation(NamedTuple):
    two_m: int
    greedy_width: int
    bound: float


def verify_greedy_bound(m_max: int) -> List[Violation]:
    """Every even 2m <= 2*m_max whose greedy width exceeds (3/2) sqrt(2m).

    The constant fallback of the full bound max{(3/2) sqrt(2m), 38} is
    deliberately ignored here; see :func:`greedy_bound_holds` for it.
    """
    if m_max < 1:
        raise RangeError(f"m_max must be >= 1, got {m_max}")
    out = []
    for two_m in range(0, 2 * m_max + 1, 2):
        w = greedy_width(two_m)
        if exceeds_sqrt_bound(w, two_m):
            out.append(Violation(two_m, w, greedy_bound(two_m)))
    return out


def greedy_bound_holds(two_m: int) -> bool:
    """G(2m) <= max{(3/2) sqrt(2m), 38}, evaluated exactly."""
    w = greedy_width(two_m)
    return w <= GREEDY_FLOOR or not exceeds_sqrt_bound(w, two_m)
