"""Binary persistence of a DimTable.

Layout (all little-endian)::

    b"CSAD"                 magic
    uint32                  format version (1)
    uint32                  n_max
    (n_max + 1) rows of W uint64 words, W = ceil((n_max^2 + 1) / 64)
    uint64                  sum of all row words modulo 2^64

Only the C(n) rows are stored; cumulative unions are rebuilt on load.
"""

from __future__ import annotations

import os
import struct
from pathlib import Path
from typing import Union

import numpy as np
from filelock import FileLock

from csadim.core import DimTable, words_per_row
from csadim.errors import CacheFormatError, ChecksumError, VersionError

MAGIC = b"CSAD"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sII")
_CHECKSUM = struct.Struct("<Q")

PathLike = Union[str, os.PathLike]


def _checksum(payload: bytes) -> int:
    words = np.frombuffer(payload, dtype="<u8")
    return int(words.sum(dtype=np.uint64))


def dumps(table: DimTable) -> bytes:
    row_bytes = words_per_row(table.n_max) * 8
    payload = b"".join(row.bits.to_bytes(row_bytes, "little") for row in table.csa)
    return (
        _HEADER.pack(MAGIC, FORMAT_VERSION, table.n_max)
        + payload
        + _CHECKSUM.pack(_checksum(payload))
    )


def loads(data: bytes) -> DimTable:
    if len(data) < _HEADER.size:
        raise CacheFormatError(f"cache too short for header ({len(data)} bytes)")
    magic, version, n_max = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise CacheFormatError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != FORMAT_VERSION:
        raise VersionError(f"cache format version {version}, expected {FORMAT_VERSION}")
    row_bytes = words_per_row(n_max) * 8
    end = _HEADER.size + (n_max + 1) * row_bytes
    if len(data) != end + _CHECKSUM.size:
        raise ChecksumError(
            f"checksum cannot be validated: expected {end + _CHECKSUM.size} bytes, "
            f"file has {len(data)} (truncated or padded)"
        )
    payload = data[_HEADER.size:end]
    (stored,) = _CHECKSUM.unpack_from(data, end)
    actual = _checksum(payload)
    if stored != actual:
        raise ChecksumError(f"checksum mismatch: stored {stored:#018x}, computed {actual:#018x}")
    rows = [
        int.from_bytes(payload[i * row_bytes:(i + 1) * row_bytes], "little")
        for i in range(n_max + 1)
    ]
    return DimTable.from_rows(rows)


def save_table(table: DimTable, path: PathLike) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with FileLock(str(path) + ".lock"):
        tmp.write_bytes(dumps(table))
        os.replace(tmp, path)


def load_table(path: PathLike) -> DimTable:
    return loads(Path(path).read_bytes())
