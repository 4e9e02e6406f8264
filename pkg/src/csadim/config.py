from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Mapping, Optional

from csadim.analysis import THEOREM_N_MIN
from csadim.core import DEFAULT_MEMORY_CAP, DEFAULT_ORACLE_CAP

ENV_PREFIX = "CSADIM_"
FORMATS = ("csv", "json")


@dataclass
class RunConfig:
    n_max: Optional[int] = None  # None: build exactly as far as a command needs
    memory_cap_bytes: int = DEFAULT_MEMORY_CAP
    oracle_cap: int = DEFAULT_ORACLE_CAP
    cache_path: Optional[str] = None
    output_format: str = "csv"
    n_min_theorem: int = THEOREM_N_MIN

    def __post_init__(self):
        if self.n_max is not None and self.n_max < 0:
            raise ValueError(f"n_max must be nonnegative, got {self.n_max}")
        if self.memory_cap_bytes <= 0 or self.oracle_cap <= 0:
            raise ValueError("caps must be positive")
        if self.output_format not in FORMATS:
            raise ValueError(f"output format must be one of {FORMATS}, got {self.output_format!r}")


def env_default(name: str, default=None, environ: Optional[Mapping[str, str]] = None):
    """Value of ``CSADIM_<NAME>`` if set, else ``default``."""
    environ = os.environ if environ is None else environ
    return environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)
