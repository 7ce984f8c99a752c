"""Run configuration shared by the library, the service and the CLI."""
from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import PreconditionError

# hard default bounds; HULLKIT_BOUND overrides enumeration_bound at load time
ENUMERATION_BOUND = 64
EXHAUSTIVE_MAP_BOUND = 8
MAX_RESULTS = 2_000_000
LIFT_PRODUCT_BOUND = 1_000_000


@dataclass
class RunConfig:
    """Bounds and knobs for one analysis run.

    enumeration_bound   largest |I| for which translation enumeration runs
    exhaustive_map_bound  largest |A| for which full n^n map scans run
    max_results         cap on the number of enumerated translations; null
                        semigroups have m^(m-1) right translations, so the
                        |I| bound alone does not protect the output size
    lift_product_bound  cap on the product of class sizes in lift enumeration
    workers             reserved; enumeration currently runs single-process
    seed                RNG seed for every sampled check
    fmt                 "text" or "json" (CLI rendering only)
    """

    enumeration_bound: int = ENUMERATION_BOUND
    exhaustive_map_bound: int = EXHAUSTIVE_MAP_BOUND
    max_results: int = MAX_RESULTS
    lift_product_bound: int = LIFT_PRODUCT_BOUND
    workers: int = 1
    seed: int = 0
    fmt: str = "text"

    def __post_init__(self):
        if self.enumeration_bound < 1 or self.exhaustive_map_bound < 1:
            raise PreconditionError("bounds must be positive")
        if self.workers < 1:
            raise PreconditionError("workers must be >= 1")
        if self.fmt not in ("text", "json"):
            raise PreconditionError("fmt must be 'text' or 'json'")


def default_config() -> RunConfig:
    cfg = RunConfig()
    env = os.environ.get("HULLKIT_BOUND")
    if env is not None:
        try:
            cfg.enumeration_bound = int(env)
        except ValueError:
            raise PreconditionError("HULLKIT_BOUND must be an integer, got %r" % env)
        if cfg.enumeration_bound < 1:
            raise PreconditionError("HULLKIT_BOUND must be positive")
    return cfg
