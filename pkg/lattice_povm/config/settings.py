"""Simulation settings: defaults, environment overrides and domain-object converters."""

import math
from functools import lru_cache
from typing import List, Literal, Optional

import numpy as np
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..models import (
    DEFAULT_KAPPA_RATIO,
    AnnealSchedule,
    ExpansionContext,
    LatticeSpec,
    PovmNormalization,
)


class SimulationSettings(BaseSettings):
    """Every tunable of a run. Energies are in h x kHz."""

    model_config = SettingsConfigDict(
        env_prefix="LATTICE_POVM_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="forbid",
    )

    # Lattice
    M: int = Field(130, ge=2, description="Number of lattice sites")
    N: int = Field(170, ge=0, description="Number of atoms")
    d: float = Field(1.0, gt=0)
    U: float = Field(1.0, ge=0, description="On-site repulsion")
    J: float = 0.0
    V2: float = Field(9.9, ge=0)
    kappa_ratio: float = DEFAULT_KAPPA_RATIO

    # Ground-state preparation
    method: Literal["anneal", "insertion", "enumeration"] = "anneal"
    T0: Optional[float] = Field(None, gt=0)
    cooling: float = Field(0.95, gt=0, lt=1)
    stages: int = Field(400, ge=1)
    sweeps_per_stage: int = Field(20, ge=1)
    restarts: int = Field(4, ge=1)
    seed: int = Field(0, ge=0, lt=2**64)

    # Correlation curves
    grid_points: int = Field(4096, ge=3)
    u_max: float = Field(6.0 * math.pi, gt=0)
    threshold: float = Field(1e-3, ge=0)
    normalization: PovmNormalization = PovmNormalization.MEASURE
    v2_list: List[float] = Field(default_factory=lambda: [0.0, 2.0, 5.0, 9.9, 15.0])

    # Expansion and oracles
    mass: float = Field(1.0, gt=0)
    t: float = Field(1.0, gt=0)
    hbar: float = Field(1.0, gt=0)
    sigma_factor: float = Field(20.0, gt=0, description="Envelope width in units of M*d")
    envelope: Literal["common", "site_centered"] = "common"
    mc_samples: Optional[int] = Field(None, ge=10_000, description="Defaults to the verification level's count")
    level: Literal["fast", "full"] = "fast"

    # Runtime
    workers: int = Field(1, ge=1)
    log_level: str = "INFO"
    log_format: Literal["console", "json"] = "console"

    def lattice_spec(self, V2: Optional[float] = None) -> LatticeSpec:
        return LatticeSpec(
            M=self.M,
            d=self.d,
            U=self.U,
            J=self.J,
            V2=self.V2 if V2 is None else V2,
            kappa_ratio=self.kappa_ratio,
        )

    def anneal_schedule(self) -> AnnealSchedule:
        return AnnealSchedule(
            T0=self.T0,
            cooling=self.cooling,
            stages=self.stages,
            sweeps_per_stage=self.sweeps_per_stage,
            seed=self.seed,
            restarts=self.restarts,
        )

    def u_grid(self) -> np.ndarray:
        """Uniform (0, u_max] grid starting one step above u = 0."""
        return np.linspace(self.u_max / self.grid_points, self.u_max, self.grid_points)

    def expansion_context(self) -> ExpansionContext:
        return ExpansionContext.for_lattice(
            self.lattice_spec(),
            mass=self.mass,
            t=self.t,
            hbar=self.hbar,
            sigma=self.sigma_factor * self.M * self.d,
            envelope=self.envelope,
        )


@lru_cache()
def get_settings() -> SimulationSettings:
    """Get cached settings from defaults and environment."""
    return SimulationSettings()
