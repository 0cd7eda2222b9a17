"""Run configuration: caps, seed, cache directory and output format."""

import os
from dataclasses import dataclass, replace

SEED_ENV = "TSVS_SEED"


@dataclass(frozen=True)
class Config:
    max_field_degree: int = 8
    max_norm_degree: int = 64
    max_matrix_size: int = 64
    seed: int = 0
    cache_dir: str = None
    output_format: str = "text"

    def __post_init__(self):
        for name in ("max_field_degree", "max_norm_degree", "max_matrix_size"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if not -(2 ** 63) <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        if self.output_format not in ("text", "json"):
            raise ValueError("output format is 'text' or 'json'")

    def with_env(self, environ=None):
        """Apply TSVS_SEED when it is set."""
        environ = os.environ if environ is None else environ
        raw = environ.get(SEED_ENV)
        if raw is None or not raw.strip():
            return self
        return replace(self, seed=int(raw.strip(), 0))

    def apply(self):
        """Push caps and the cache directory into the library modules."""
        from . import numfield, parsing

        numfield.MAX_FIELD_DEGREE = self.max_field_degree
        numfield.MAX_NORM_DEGREE = self.max_norm_degree
        parsing.MAX_MATRIX_SIZE = self.max_matrix_size
        numfield.configure_cache(self.cache_dir)
