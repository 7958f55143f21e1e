"""Time-of-flight expansion context and density profile models."""

from pathlib import Path
from typing import Any, Dict, Literal, Optional, Union

import numpy as np
from pydantic import Field, model_validator
from scipy.integrate import trapezoid

from ..logging import get_logger
from ..utils import write_table_csv
from .base import ArrayModel, BaseModel, Prescription, StateKind
from .lattice import LatticeSpec

logger = get_logger(__name__)

EnvelopeModel = Literal["common", "site_centered"]


class ExpansionContext(BaseModel):
    """Ballistic-expansion parameters.

    `common` gives every evolved Wannier function the same Gaussian envelope
    centred on the lattice; `site_centered` centres site j's envelope on x_j.
    """

    mass: float = Field(1.0, gt=0)
    t: float = Field(1.0, gt=0, description="Expansion time")
    hbar: float = Field(1.0, gt=0)
    d: float = Field(1.0, gt=0, description="Lattice spacing")
    sigma: float = Field(..., gt=0, description="Envelope width of |w(x,t)|")
    M: int = Field(..., ge=1, description="Number of lattice sites")
    envelope: EnvelopeModel = "common"

    @model_validator(mode='after')
    def warn_narrow_envelope(self) -> 'ExpansionContext':
        if self.sigma < 5 * self.M * self.d:
            logger.warning(
                "envelope narrower than 5*M*d; common-envelope results are unreliable",
                sigma=self.sigma,
                lattice_length=self.M * self.d,
            )
        return self

    @classmethod
    def for_lattice(
        cls,
        spec: LatticeSpec,
        mass: float = 1.0,
        t: float = 1.0,
        hbar: float = 1.0,
        sigma: Optional[float] = None,
        envelope: EnvelopeModel = "common",
    ) -> 'ExpansionContext':
        """Context for a lattice; sigma defaults to 20*M*d."""
        return cls(
            mass=mass,
            t=t,
            hbar=hbar,
            d=spec.d,
            sigma=sigma if sigma is not None else 20.0 * spec.M * spec.d,
            M=spec.M,
            envelope=envelope,
        )

    @property
    def center(self) -> float:
        """Lattice centre (M+1)d/2 with sites at x_j = j*d, j = 1..M."""
        return 0.5 * (self.M + 1) * self.d

    def site_positions(self) -> np.ndarray:
        return self.d * np.arange(1, self.M + 1, dtype=float)

    def grid(self, points: int = 2**14, extent: float = 6.0) -> np.ndarray:
        """Uniform grid spanning centre +/- extent*sigma."""
        half = extent * self.sigma
        return np.linspace(self.center - half, self.center + half, points)

    def with_sigma(self, sigma: float) -> 'ExpansionContext':
        return self.model_copy(update={'sigma': sigma})


class DensityProfile(ArrayModel):
    """Real-space density after time of flight."""

    x_grid: np.ndarray
    values: np.ndarray
    prescription: Prescription
    state: StateKind
    N: int
    parameters: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode='after')
    def check_shapes(self) -> 'DensityProfile':
        if self.x_grid.shape != self.values.shape:
            raise ValueError('x_grid and values must have the same shape')
        if np.any(self.values < 0):
            raise ValueError('density must be non-negative')
        return self

    def integral(self) -> float:
        """Trapezoidal integral over the grid."""
        return float(trapezoid(self.values, self.x_grid))

    def to_csv(self, path: Union[str, Path]) -> Path:
        meta = {
            'prescription': self.prescription,
            'state': self.state,
            'N': self.N,
            **self.parameters,
        }
        return write_table_csv(path, ['x', 'value'], [self.x_grid, self.values], meta)
