"""Correlation curves, peak reports, sweep rows and oracle estimates."""

from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import Field, model_validator

from ..utils import write_key_values, write_table_csv
from .base import ArrayModel, BaseModel, PovmNormalization, Prescription


class CorrelationCurve(ArrayModel):
    """Integrated correlation function sampled in u = Q*r."""

    u_grid: np.ndarray
    values: np.ndarray
    prescription: Prescription
    M: int
    N: int
    normalization: Optional[PovmNormalization] = None
    parameters: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode='after')
    def check_real(self) -> 'CorrelationCurve':
        if self.u_grid.shape != self.values.shape:
            raise ValueError('u_grid and values must have the same shape')
        if np.iscomplexobj(self.values):
            raise ValueError('correlation values must be real')
        return self

    @property
    def step(self) -> float:
        return float(self.u_grid[1] - self.u_grid[0]) if len(self.u_grid) > 1 else 0.0

    def to_csv(self, path: Union[str, Path]) -> Path:
        meta: Dict[str, Any] = {
            'prescription': self.prescription,
            'M': self.M,
            'N': self.N,
            'points': len(self.u_grid),
            'u_min': float(self.u_grid[0]),
            'u_max': float(self.u_grid[-1]),
            **self.parameters,
        }
        if self.normalization is not None:
            meta['normalization'] = self.normalization
        return write_table_csv(path, ['u', 'value'], [self.u_grid, self.values], meta)


class PeakReport(BaseModel):
    """Main and secondary maxima of a correlation curve; heights are above 1."""

    main_peaks: List[Tuple[float, float]] = Field(default_factory=list)
    secondary_peaks: List[Tuple[float, float]] = Field(default_factory=list)
    threshold: float
    grid_points: int

    @property
    def secondary_height(self) -> float:
        """Largest secondary height, 0 when there is none."""
        return max((h for _, h in self.secondary_peaks), default=0.0)

    @property
    def main_height(self) -> float:
        return max((h for _, h in self.main_peaks), default=0.0)


class SweepRow(BaseModel):
    """One V2 point of the secondary-peak sweep."""

    V2: float
    secondary_trace: Optional[float] = None
    secondary_povm: Optional[float] = None
    energy: Optional[float] = None
    seed: int
    status: str = "ok"
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"


class OracleEstimate(BaseModel):
    """Monte Carlo estimate with its standard error."""

    estimate: float
    stderr: float = Field(..., ge=0)
    samples: int = Field(..., ge=1)
    seed: int
    observable: str

    def z_score(self, reference: float) -> float:
        if self.stderr == 0:
            return 0.0 if self.estimate == reference else float('inf')
        return abs(self.estimate - reference) / self.stderr

    def agrees_with(self, reference: float, sigmas: float = 3.0) -> bool:
        return self.z_score(reference) <= sigmas

    def to_key_values(self, path: Union[str, Path]) -> Path:
        return write_key_values(path, self.model_dump())
