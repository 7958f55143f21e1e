"""
Overlaps between Fock and fixed-phase coherent states.

Factorials are handled through log-gamma throughout; N=170 atoms on M=130
sites is far beyond what float factorials survive.
"""
import numpy as np
from scipy.special import gammaln, xlogy

from ..exceptions import InputError
from ..models import CoherentSpec, FockConfig
from .energies import Occupations, as_occupations


def _check_sites(expected: int, got: int, what: str) -> None:
    if expected != got:
        raise InputError(f"{what}: expected {expected} sites, got {got}", field=what)


def coherent_overlap(a: CoherentSpec, b: CoherentSpec, N: int) -> complex:
    """<a;N|b;N> = (sum_i sqrt(xi_i xi'_i) exp(i(phi_i - phi'_i)))^N."""
    _check_sites(a.M, b.M, "coherent_overlap")
    bracket = np.sum(np.sqrt(a.xi_array * b.xi_array) * np.exp(1j * (a.phi_array - b.phi_array)))
    return complex(bracket ** N)


def log_multinomial(k: np.ndarray) -> float:
    """log(N! / prod_j k_j!)."""
    return float(gammaln(k.sum() + 1) - gammaln(k + 1).sum())


def log_povm_weight_array(k: Occupations, xi: np.ndarray) -> np.ndarray:
    """
    log[(N!/k!) prod_j xi_j^k_j] for one xi vector or a stack of shape (S, M).

    Returns -inf where some xi_j = 0 carries k_j > 0.
    """
    occ = as_occupations(k)
    xi = np.asarray(xi, dtype=float)
    if xi.shape[-1] != occ.size:
        raise InputError(f"xi has {xi.shape[-1]} sites, occupations have {occ.size}", field="xi")
    with np.errstate(divide='ignore'):
        terms = xlogy(occ, xi)
    return log_multinomial(occ) + terms.sum(axis=-1)


def povm_weight(k: Occupations, c: CoherentSpec) -> float:
    """|<k;N|xi,phi;N>|^2 = (N!/k!) prod_j xi_j^k_j, independent of the phases."""
    return float(np.exp(log_povm_weight_array(k, c.xi_array)))


def fock_coherent_overlap(k: Occupations, c: CoherentSpec) -> complex:
    """<k;N|xi,phi;N> = sqrt(N!/k!) exp(i k.phi) prod_j xi_j^(k_j/2)."""
    occ = as_occupations(k)
    _check_sites(occ.size, c.M, "fock_coherent_overlap")
    log_weight = float(log_povm_weight_array(occ, c.xi_array))
    if np.isneginf(log_weight):
        return 0j
    return complex(np.exp(0.5 * log_weight + 1j * np.dot(occ, c.phi_array)))


def coherent_state_weight(reference: CoherentSpec, N: int, xi: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """|<xi,phi;N|reference;N>|^2 for stacks of (xi, phi) of shape (S, M)."""
    _check_sites(reference.M, xi.shape[-1], "coherent_state_weight")
    bracket = np.sum(
        np.sqrt(xi * reference.xi_array) * np.exp(1j * (phi - reference.phi_array)),
        axis=-1,
    )
    return np.abs(bracket) ** (2 * N)

