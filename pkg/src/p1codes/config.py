"""Run configuration: seed and computational budgets."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields

ENV_PREFIX = "P1CODES_"


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    closure_bound: int = 100_000
    enumeration_budget: int = 10**6
    sample_trials: int = 10**4
    sn_scan_max_n: int = 8
    pgl_scan_max_q: int = 11
    output_path: str | None = None

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        for f in fields(self):
            if f.name in ("seed", "output_path"):
                continue
            if getattr(self, f.name) <= 0:
                raise ValueError(f"{f.name} must be positive")

    @classmethod
    def from_env(cls, environ=None, **overrides) -> "RunConfig":
        """Defaults, then P1CODES_* environment variables, then explicit overrides."""
        env = os.environ if environ is None else environ
        values = {}
        for f in fields(cls):
            raw = env.get(ENV_PREFIX + f.name.upper())
            if raw is not None and raw != "":
                values[f.name] = raw if f.name == "output_path" else int(raw)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("output_path")
        return d
