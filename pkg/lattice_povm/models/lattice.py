"""Lattice, Fock-state and coherent-state models."""

import math
from typing import Any, Optional, Sequence, Tuple

import numpy as np
from pydantic import Field, field_validator, model_validator

from .base import BaseModel

DEFAULT_KAPPA_RATIO = 830.0 / 1076.0
TWO_PI = 2.0 * math.pi


class LatticeSpec(BaseModel):
    """Lattice geometry plus Bose-Hubbard parameters.

    Energies carry no absolute unit; U, J, V2 and the offsets must share one
    (h x kHz in the shipped defaults).
    """

    M: int = Field(..., ge=1, description="Number of lattice sites")
    d: float = Field(1.0, gt=0, description="Lattice spacing")
    U: float = Field(1.0, ge=0, description="On-site repulsion")
    J: float = Field(0.0, description="Hopping energy (not used in state preparation)")
    V2: float = Field(0.0, ge=0, description="Secondary-lattice strength")
    kappa_ratio: float = Field(DEFAULT_KAPPA_RATIO, description="kappa_2 / kappa_1")
    extra_offsets: Optional[Tuple[float, ...]] = Field(None, description="Per-site energy additions")

    @field_validator('kappa_ratio')
    @classmethod
    def reduce_kappa_ratio(cls, v: float) -> float:
        """Reduce modulo 1; sin^2(i*pi*x) has period 1 in x."""
        reduced = v % 1.0
        if not 0.0 < reduced < 1.0:
            raise ValueError('kappa_ratio must not be an integer')
        return reduced

    @model_validator(mode='after')
    def check_offsets(self) -> 'LatticeSpec':
        if self.extra_offsets is not None and len(self.extra_offsets) != self.M:
            raise ValueError(f'extra_offsets must have length M={self.M}')
        return self

    @property
    def offsets(self) -> np.ndarray:
        if self.extra_offsets is None:
            return np.zeros(self.M)
        return np.asarray(self.extra_offsets, dtype=float)


class FockConfig(BaseModel):
    """Integer occupation vector with a fixed total atom count."""

    occupations: Tuple[int, ...] = Field(..., min_length=1)
    N: int = Field(..., ge=0)

    @model_validator(mode='before')
    @classmethod
    def fill_total(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get('N') is None and 'occupations' in data:
            data = {**data, 'N': int(sum(int(k) for k in data['occupations']))}
        return data

    @field_validator('occupations')
    @classmethod
    def non_negative(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(k < 0 for k in v):
            raise ValueError('occupations must be non-negative')
        return v

    @model_validator(mode='after')
    def check_total(self) -> 'FockConfig':
        if sum(self.occupations) != self.N:
            raise ValueError(f'occupations sum to {sum(self.occupations)}, expected N={self.N}')
        return self

    @classmethod
    def of(cls, occupations: Sequence[int]) -> 'FockConfig':
        """Build from an occupation sequence, inferring N."""
        return cls(occupations=tuple(int(k) for k in occupations))

    @property
    def M(self) -> int:
        return len(self.occupations)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.occupations, dtype=np.int64)


class CoherentSpec(BaseModel):
    """Amplitudes on the probability simplex plus site phases."""

    xi: Tuple[float, ...] = Field(..., min_length=1)
    phi: Tuple[float, ...] = Field(..., min_length=1)

    @field_validator('xi')
    @classmethod
    def on_simplex(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        if any(x < 0.0 or x > 1.0 for x in v):
            raise ValueError('xi entries must lie in [0, 1]')
        if abs(math.fsum(v) - 1.0) > 1e-12:
            raise ValueError('xi must sum to 1')
        return v

    @field_validator('phi')
    @classmethod
    def reduce_phases(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        return tuple(float(p % TWO_PI) for p in v)

    @model_validator(mode='after')
    def check_lengths(self) -> 'CoherentSpec':
        if len(self.xi) != len(self.phi):
            raise ValueError('xi and phi must have the same length')
        return self

    @classmethod
    def uniform(cls, M: int, phi: Optional[Sequence[float]] = None) -> 'CoherentSpec':
        """Equal amplitudes on every site."""
        phases = tuple(phi) if phi is not None else (0.0,) * M
        return cls(xi=(1.0 / M,) * M, phi=phases)

    @property
    def M(self) -> int:
        return len(self.xi)

    @property
    def xi_array(self) -> np.ndarray:
        return np.asarray(self.xi, dtype=float)

    @property
    def phi_array(self) -> np.ndarray:
        return np.asarray(self.phi, dtype=float)

    @property
    def amplitudes(self) -> np.ndarray:
        """sqrt(xi_j) * exp(i phi_j)."""
        return np.sqrt(self.xi_array) * np.exp(1j * self.phi_array)
