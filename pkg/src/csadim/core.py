"""Partitions, dimension bitsets and the table of CSA dimension sets.

A connected semi-simple subalgebra of M_n(k) is, up to conjugation, block
diagonal with full matrix blocks whose sizes partition n.  Its dimension is
the sum of the squared block sizes, so the set C(n) of achievable dimensions
is ``{sum(d*d for d in p) for p in partitions(n)}``.

Bitsets are plain Python ints: bit ``l`` is set iff ``l`` is a member.  The
shift-OR recursion then runs in C inside the int implementation, and the
byte image of an int (``int.to_bytes(..., "little")``) is exactly the dense
little-endian 64-bit word layout used by the cache file.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import isqrt
from typing import Iterator, List, Optional, Tuple

from csadim.errors import RangeError, ResourceLimitError

log = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 40


def words_per_row(n_max: int) -> int:
    """Number of 64-bit words needed to hold indices 0..n_max**2."""
    return (n_max * n_max + 1 + 63) // 64


def estimate_table_bytes(n_max: int) -> int:
    # csa rows plus cumulative rows, each padded to the widest row
    return 2 * (n_max + 1) * words_per_row(n_max) * 8


DEFAULT_MEMORY_CAP = estimate_table_bytes(1200)


@dataclass(frozen=True)
class Partition:
    """Block sizes of a CSA, stored non-increasing."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def squared_sum(self) -> int:
        return sum(d * d for d in self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return " ".join(map(str, self.parts))


def enumerate_partitions(n: int, cap: int = DEFAULT_ORACLE_CAP) -> Iterator[Partition]:
    """Yield every partition of ``n`` once, in reverse-lexicographic order.

    ``n = 0`` yields the empty partition.  Refuses ``n > cap``: the number
    of partitions grows like exp(c*sqrt(n)).
    """
    if n < 0:
        raise RangeError(f"n must be nonnegative, got {n}")
    if n > cap:
        raise ResourceLimitError(
            f"partition enumeration of n={n} exceeds the oracle cap {cap}"
        )

    def rec(remaining: int, largest: int) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    for parts in rec(n, n):
        yield Partition(parts)


@dataclass(frozen=True)
class DimensionSet:
    """The set of achievable dimensions for a fixed ``n`` as a bitset over [0, n^2]."""

    n: int
    bits: int

    def __contains__(self, dim: int) -> bool:
        return dim >= 0 and (self.bits >> dim) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    @property
    def size(self) -> int:
        """Logical bit length, n^2 + 1."""
        return self.n * self.n + 1

    def to_list(self) -> List[int]:
        return list(iter_bits(self.bits))

    def runs(self) -> List[Tuple[int, int]]:
        """Maximal runs ``(lo, hi)`` of members spaced two apart."""
        out: List[Tuple[int, int]] = []
        for d in iter_bits(self.bits):
            if out and out[-1][1] + 2 == d:
                out[-1] = (out[-1][0], d)
            else:
                out.append((d, d))
        return out


def iter_bits(x: int) -> Iterator[int]:
    """Indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def csa_dims_bruteforce(n: int, cap: int = DEFAULT_ORACLE_CAP) -> DimensionSet:
    """C(n) straight from the definition, by enumerating all partitions of n.

    Shares no code with :func:`build_table`; it is the oracle the DP is
    checked against.
    """
    bits = 0
    for p in enumerate_partitions(n, cap=cap):
        bits |= 1 << p.squared_sum
    return DimensionSet(n, bits)


@dataclass
class DimTable:
    """C(0..n_max) together with the cumulative unions D(n) = C(0) | ... | C(n)."""

    n_max: int
    csa: List[DimensionSet]
    cumulative: List[int] = field(repr=False)

    @classmethod
    def from_rows(cls, rows: List[int]) -> "DimTable":
        """Wrap precomputed C(n) bitsets and derive the cumulative unions."""
        csa = [DimensionSet(n, bits) for n, bits in enumerate(rows)]
        cumulative = []
        acc = 0
        for bits in rows:
            acc |= bits
            cumulative.append(acc)
        return cls(len(rows) - 1, csa, cumulative)

    def check_n(self, n: int) -> None:
        if not 0 <= n <= self.n_max:
            raise RangeError(f"n={n} outside table range [0, {self.n_max}]")

    def __getitem__(self, n: int) -> DimensionSet:
        self.check_n(n)
        return self.csa[n]


def build_table(n_max: int, memory_cap: int = DEFAULT_MEMORY_CAP) -> DimTable:
    """Compute C(0), ..., C(n_max) by the recursion on the top-left block.

    ``C(0) = {0}`` and ``C(n) = OR_{j=1..n} (C(n-j) << j*j)``.
    """
    if n_max < 0:
        raise RangeError(f"n_max must be nonnegative, got {n_max}")
    need = estimate_table_bytes(n_max)
    if need > memory_cap:
        raise ResourceLimitError(
            f"table for n_max={n_max} needs ~{need} bytes, over the memory cap {memory_cap}"
        )
    rows = [1]
    for n in range(1, n_max + 1):
        acc = 0
        for j in range(1, n + 1):
            acc |= rows[n - j] << (j * j)
        rows.append(acc)
    log.debug("built CSA table up to n=%d", n_max)
    return DimTable.from_rows(rows)


def _check_dim(n: int, dim: int) -> None:
    if not 0 <= dim <= n * n:
        raise RangeError(f"dimension {dim} outside [0, {n * n}] for n={n}")


def is_csa_dim(table: DimTable, n: int, dim: int) -> bool:
    table.check_n(n)
    _check_dim(n, dim)
    if (dim - n) % 2:
        return False
    return dim in table.csa[n]


def witness_partition(table: DimTable, n: int, dim: int) -> Optional[Partition]:
    """A partition of ``n`` whose squared sum is ``dim``, or None.

    Backtracks the recursion taking the largest feasible block each step,
    which makes the returned parts non-increasing.
    """
    table.check_n(n)
    if dim < 0 or dim > n * n or dim not in table.csa[n]:
        return None
    parts = []
    while n:
        for j in range(min(n, isqrt(dim)), 0, -1):
            if dim - j * j in table.csa[n - j]:
                break
        else:  # pragma: no cover - membership above guarantees a block exists
            raise AssertionError("table inconsistent")
        parts.append(j)
        n -= j
        dim -= j * j
    return Partition(tuple(parts))


def semisimple_dims(table: DimTable, n: int) -> int:
    """Bitset D(n): dimensions of all semi-simple subalgebras of M_n(k)."""
    table.check_n(n)
    return table.cumulative[n]
