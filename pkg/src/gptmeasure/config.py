"""Run configuration shared by the CLI and the scripts."""
from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

from .incompatibility import DEFAULT_PRODUCT_LIMIT

SEED_ENV = "GPTM_SEED"


@dataclass(frozen=True)
class RunConfig:
    arithmetic: str = "exact"
    seed: int = 0
    limit: int = DEFAULT_PRODUCT_LIMIT
    fmt: str | None = None
    paths: tuple = field(default=())

    def __post_init__(self):
        if self.arithmetic not in ("exact", "float"):
            raise ValueError("arithmetic must be 'exact' or 'float'")
        if self.seed < 0:
            raise ValueError("seed must be an unsigned integer")
        if self.limit < 1:
            raise ValueError("limit must be positive")


def resolve(cfg: RunConfig, *, seed_given: bool, environ=os.environ) -> RunConfig:
    """An explicit ``--seed`` wins; otherwise ``GPTM_SEED`` replaces the default."""
    if not seed_given and environ.get(SEED_ENV, "").strip():
        return replace(cfg, seed=int(environ[SEED_ENV]))
    return cfg
