"""
On-site energies of the bichromatic lattice and the Fock-state energy.
"""
from typing import Union

import numpy as np

from ..exceptions import InputError
from ..models import FockConfig, LatticeSpec

Occupations = Union[FockConfig, np.ndarray, list, tuple]


def as_occupations(k: Occupations) -> np.ndarray:
    """Occupation vector as an int64 array."""
    if isinstance(k, FockConfig):
        return k.array
    return np.asarray(k, dtype=np.int64)


def site_energies(spec: LatticeSpec) -> np.ndarray:
    """
    eps_i = V2 * sin^2(i * pi * kappa_ratio) + extra_offsets[i], i = 1..M.

    The site label i is 1-based, matching x_i = i*d.
    """
    i = np.arange(1, spec.M + 1, dtype=float)
    return spec.V2 * np.sin(i * np.pi * spec.kappa_ratio) ** 2 + spec.offsets


def fock_energy(k: Occupations, eps: np.ndarray, U: float) -> float:
    """E = sum_j eps_j k_j + U/2 sum_j k_j (k_j - 1). J never enters."""
    occ = as_occupations(k)
    eps = np.asarray(eps, dtype=float)
    if occ.shape != eps.shape:
        raise InputError(
            f"occupation vector has {occ.size} sites but eps has {eps.size}",
            field="eps",
        )
    return float(np.dot(eps, occ) + 0.5 * U * np.dot(occ, occ - 1))
