"""Simulated annealing schedule and result models."""

from typing import Optional

from pydantic import Field

from .base import BaseModel
from .lattice import FockConfig, LatticeSpec


class AnnealSchedule(BaseModel):
    """Geometric cooling schedule for the Metropolis annealer.

    One sweep is M proposed moves. T0=None derives the initial temperature
    from the instance as max(U, V2) * N.
    """

    T0: Optional[float] = Field(None, gt=0, description="Initial temperature")
    cooling: float = Field(0.95, gt=0, lt=1, description="Multiplicative factor per stage")
    stages: int = Field(400, ge=1)
    sweeps_per_stage: int = Field(20, ge=1)
    seed: int = Field(0, ge=0, lt=2**64)
    restarts: int = Field(4, ge=1, description="Best of R independent runs")

    def initial_temperature(self, spec: LatticeSpec, N: int) -> float:
        if self.T0 is not None:
            return self.T0
        derived = max(spec.U, spec.V2) * N
        return derived if derived > 0 else 1.0


class AnnealResult(BaseModel):
    """Best configuration found by a ground-state search."""

    config: FockConfig
    energy: float
    accepted_moves: int = Field(0, ge=0)
    proposed_moves: int = Field(0, ge=0)
    method: str = "anneal"
    seed: Optional[int] = None

    @property
    def acceptance_rate(self) -> float:
        if self.proposed_moves == 0:
            return 0.0
        return self.accepted_moves / self.proposed_moves
