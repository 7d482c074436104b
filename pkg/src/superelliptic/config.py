"""Runtime budgets and precision settings.

Exhaustive character sums cost O(|F|) field operations and the point-count
oracle costs O(r^m) per trace coefficient, so both are gated behind
configurable element-count budgets.  Defaults are sized so that the flagship
verification instances run in well under two minutes on a laptop.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Config:
    # largest field (element count) that may be constructed / summed over
    field_budget: int = 1 << 26
    # largest set S = (Z/a x Z/b x F_q^*) that may be enumerated orbit by orbit
    enumeration_budget: int = 1 << 20
    # largest r^m the point-count oracle will sweep for one trace coefficient
    transform_budget: int = 1 << 22
    # fields up to this size keep full discrete-log / trace tables in memory
    char_table_limit: int = 1 << 16
    # weighted integer-op estimate above which exact L-product expansion is refused
    expansion_budget: int = 1 << 33
    # working precision (bits) for log-ratio reports
    precision_bits: int = 80
    # tolerance for the numeric Riemann-hypothesis cross-check
    rh_tol: float = 1e-9
    # worker threads for per-orbit computations (1 = sequential)
    workers: int = 1

    def with_overrides(self, **kw) -> "Config":
        return replace(self, **kw)


_ENV_KEYS = {
    "SUPERELLIPTIC_FIELD_BUDGET": "field_budget",
    "SUPERELLIPTIC_ENUM_BUDGET": "enumeration_budget",
    "SUPERELLIPTIC_TRANSFORM_BUDGET": "transform_budget",
    "SUPERELLIPTIC_TABLE_LIMIT": "char_table_limit",
    "SUPERELLIPTIC_EXPANSION_BUDGET": "expansion_budget",
    "SUPERELLIPTIC_PRECISION_BITS": "precision_bits",
    "SUPERELLIPTIC_WORKERS": "workers",
}


def default_config() -> Config:
    """Config built from defaults plus any SUPERELLIPTIC_* env overrides."""
    overrides = {}
    for env, field in _ENV_KEYS.items():
        raw = os.environ.get(env)
        if raw is not None:
            overrides[field] = int(raw)
    return Config(**overrides)


class BudgetExceeded(RuntimeError):
    """A computation was refused because it would exceed a configured budget."""
