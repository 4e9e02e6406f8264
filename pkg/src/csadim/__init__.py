"""Dimensions of (connected) semi-simple subalgebras of n x n matrix algebras."""

from csadim.core import (
    DEFAULT_MEMORY_CAP,
    DEFAULT_ORACLE_CAP,
    DimensionSet,
    DimTable,
    Partition,
    build_table,
    csa_dims_bruteforce,
    enumerate_partitions,
    estimate_table_bytes,
    is_csa_dim,
    semisimple_dims,
    witness_partition,
)
from csadim.errors import (
    CacheFormatError,
    ChecksumError,
    CsaDimError,
    ParityError,
    RangeError,
    ResourceLimitError,
    VersionError,
)
from csadim.width import (
    GreedyDecomposition,
    exact_width,
    greedy_decomposition,
    greedy_width,
    realisable_in,
    verify_greedy_bound,
)
from csadim.analysis import (
    GapRecord,
    IntervalSj,
    density,
    gap,
    interval_S,
    j_max,
    overlap_root,
    sweep_gap,
    theorem_bound,
    verify_corollary,
    verify_theorem_main,
)

__version__ = "0.1.0"
