"""Shared pydantic models for lattice-povm."""

from .base import ArrayModel, BaseModel, PovmNormalization, Prescription, StateKind
from .lattice import DEFAULT_KAPPA_RATIO, CoherentSpec, FockConfig, LatticeSpec
from .anneal import AnnealResult, AnnealSchedule
from .expansion import DensityProfile, ExpansionContext
from .curves import CorrelationCurve, OracleEstimate, PeakReport, SweepRow

__all__ = [
    "ArrayModel",
    "BaseModel",
    "PovmNormalization",
    "Prescription",
    "StateKind",
    "DEFAULT_KAPPA_RATIO",
    "CoherentSpec",
    "FockConfig",
    "LatticeSpec",
    "AnnealResult",
    "AnnealSchedule",
    "DensityProfile",
    "ExpansionContext",
    "CorrelationCurve",
    "OracleEstimate",
    "PeakReport",
    "SweepRow",
]
