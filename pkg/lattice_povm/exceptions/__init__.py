"""
Custom exceptions for lattice-povm.
"""
from .errors import (
    LatticePovmError,
    InputError,
    RefusalError,
    ConfigurationError,
    VerificationError,
)

__all__ = [
    'LatticePovmError',
    'InputError',
    'RefusalError',
    'ConfigurationError',
    'VerificationError',
]
