"""Run configuration shared by the command line and embedded in reports."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

from .bergman import R_GRID_DEFAULT, DomainSpec

ENV_SEED = "NULLSATZ_SEED"


@dataclass(frozen=True)
class RunConfig:
    """Every knob a run depends on; serialized verbatim into reports.

    Identical configs and inputs must reproduce byte-identical reports, so
    nothing here may be derived from wall clock, process state, or thread
    count.
    """

    domain: DomainSpec = field(default_factory=DomainSpec.ball)
    seed: int = 0
    tol_res: float = 1e-10
    tol_point: float = 1e-8
    tol_circle: float = 1e-6
    delta: float = 1e-6
    samples: int = 20000
    mc_samples: int = 100000
    r_grid: tuple[float, ...] = R_GRID_DEFAULT
    n_max: int = 20
    alpha_grid: int = 4096
    pitch: float = 0.01

    def __post_init__(self):
        for name in ("tol_res", "tol_point", "tol_circle", "delta", "pitch"):
            v = getattr(self, name)
            if not (isinstance(v, float) and v > 0.0):
                raise ValueError(f"{name} must be a positive float, got {v!r}")
        for name in ("samples", "mc_samples", "n_max", "alpha_grid"):
            v = getattr(self, name)
            if not (isinstance(v, int) and v > 0):
                raise ValueError(f"{name} must be a positive int, got {v!r}")
        if not isinstance(self.seed, int):
            raise ValueError(f"seed must be an int, got {self.seed!r}")
        if not self.r_grid:
            raise ValueError("r_grid must be nonempty")
        for r in self.r_grid:
            if not 0.5 < r < 1.0:
                raise ValueError(f"r_grid entry {r} outside (1/2, 1)")
        if not isinstance(self.domain, DomainSpec):
            raise ValueError("domain must be a DomainSpec")
        object.__setattr__(self, "r_grid", tuple(float(r) for r in self.r_grid))

    def with_env_seed(self) -> "RunConfig":
        """NULLSATZ_SEED in the environment wins over the configured seed."""
        raw = os.environ.get(ENV_SEED)
        if raw is None:
            return self
        try:
            return replace(self, seed=int(raw))
        except ValueError:
            raise ValueError(f"{ENV_SEED} must be an integer, got {raw!r}") from None

    def to_json_dict(self) -> dict:
        return {
            "domain": self.domain.to_json_dict(),
            "seed": self.seed,
            "tol_res": self.tol_res,
            "tol_point": self.tol_point,
            "tol_circle": self.tol_circle,
            "delta": self.delta,
            "samples": self.samples,
            "mc_samples": self.mc_samples,
            "r_grid": list(self.r_grid),
            "n_max": self.n_max,
            "alpha_grid": self.alpha_grid,
            "pitch": self.pitch,
        }
