"""Base model classes for lattice-povm."""

from enum import Enum

from pydantic import BaseModel as PydanticBaseModel, ConfigDict


class BaseModel(PydanticBaseModel):
    """Base model class with common configuration."""

    # Domain values are immutable after construction and safe to share
    # between worker processes.
    model_config = ConfigDict(
        frozen=True,
        populate_by_name=True,
        validate_default=True,
        str_strip_whitespace=True,
    )


class ArrayModel(BaseModel):
    """Base model for values carrying numpy arrays."""

    model_config = ConfigDict(
        frozen=True,
        populate_by_name=True,
        validate_default=True,
        arbitrary_types_allowed=True,
    )


class Prescription(str, Enum):
    """How an average over repeated absorption images is modelled."""

    TRACE = "trace"
    POVM = "povm"


class StateKind(str, Enum):
    """Family of the initial many-body state."""

    FOCK = "fock"
    COHERENT = "coherent"


class PovmNormalization(str, Enum):
    """Renormalization of the POVM correlation cross-sum.

    MEASURE divides by (N+M)(N+M+1), the Dirichlet second moment of the
    coherent-state measure; PRINTED divides by (N+M)(N+M-1).
    """

    MEASURE = "measure"
    PRINTED = "printed"
