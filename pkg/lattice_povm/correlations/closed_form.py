"""
Closed-form integrated density-density correlations for Fock initial states.

Curves are functions of the dimensionless u = Q r. Both prescriptions share
the prefactor N(N-1)/N^2 and differ in the occupation weights of the
cross-sum sum_{i!=j} w_i w_j exp(i(i-j)u) and in its normalization.
"""
from typing import Optional, Tuple, Union

import numpy as np

from ..core import as_occupations
from ..core.energies import Occupations
from ..exceptions import InputError
from ..models import CorrelationCurve, PovmNormalization, Prescription

ArrayLike = Union[float, np.ndarray]

# Below this distance from 2*pi*p the sine ratio uses its Taylor expansion.
_PEAK_WINDOW = 1e-7


def default_u_grid(points: int = 4096, u_max: float = 6.0 * np.pi) -> np.ndarray:
    """Uniform grid on (0, u_max]: the u=0 self-peak is excluded by starting one step in."""
    return np.linspace(u_max / points, u_max, points)


def _restore_shape(values: np.ndarray, u: ArrayLike) -> ArrayLike:
    return float(values[0]) if np.ndim(u) == 0 else values


def _occupations_for_pairs(k: Occupations) -> Tuple[np.ndarray, int, int]:
    occ = as_occupations(k)
    N = int(occ.sum())
    if N < 2:
        raise InputError(f"pair correlations need N >= 2, got N={N}", field="k")
    return occ, N, occ.size


def cross_sum(weights: np.ndarray, u: ArrayLike) -> np.ndarray:
    """sum_{i!=j} w_i w_j exp(i(i-j)u) = |sum_j w_j exp(i j u)|^2 - sum_j w_j^2, O(M) per u."""
    weights = np.asarray(weights, dtype=float)
    u = np.atleast_1d(np.asarray(u, dtype=float))
    sites = np.arange(1, weights.size + 1, dtype=float)
    amplitude = weights @ np.exp(1j * np.outer(sites, u))
    return np.abs(amplitude) ** 2 - np.dot(weights, weights)


def cross_sum_pairwise(weights: np.ndarray, u: ArrayLike) -> np.ndarray:
    """Explicit O(M^2) double sum; complex, with a vanishing imaginary part."""
    weights = np.asarray(weights, dtype=float)
    u = np.atleast_1d(np.asarray(u, dtype=float))
    sites = np.arange(1, weights.size + 1)
    diff = sites[:, None] - sites[None, :]
    pair = np.outer(weights, weights)
    np.fill_diagonal(pair, 0.0)
    return np.einsum('ij,ijk->k', pair, np.exp(1j * diff[:, :, None] * u[None, None, :]))


def cross_sum_fft(weights: np.ndarray, points: int) -> Tuple[np.ndarray, np.ndarray]:
    """Cross-sum on u_n = 2*pi*n/points, n = 0..points-1, from one FFT."""
    weights = np.asarray(weights, dtype=float)
    if points < weights.size:
        raise InputError("FFT length must be at least M", field="points")
    spectrum = np.fft.ifft(weights, n=points) * points
    u = 2.0 * np.pi * np.arange(points) / points
    return u, np.abs(spectrum) ** 2 - np.dot(weights, weights)


def povm_denominator(N: int, M: int, normalization: PovmNormalization = PovmNormalization.MEASURE) -> float:
    if PovmNormalization(normalization) == PovmNormalization.PRINTED:
        return float((N + M) * (N + M - 1))
    return float((N + M) * (N + M + 1))


def corr_closed_trace(k: Occupations, u: ArrayLike) -> ArrayLike:
    """G(u) = N(N-1)/N^2 {1 + sum_{i!=j} k_i k_j exp(i(i-j)u) / (N(N-1))}."""
    occ, N, _ = _occupations_for_pairs(k)
    values = (N - 1) / N * (1.0 + cross_sum(occ, u) / (N * (N - 1)))
    return _restore_shape(values, u)


def corr_closed_povm(
    k: Occupations,
    u: ArrayLike,
    normalization: PovmNormalization = PovmNormalization.MEASURE,
) -> ArrayLike:
    """G~(u) = N(N-1)/N^2 {1 + sum_{i!=j} (k_i+1)(k_j+1) exp(i(i-j)u) / D}, D per `normalization`."""
    occ, N, M = _occupations_for_pairs(k)
    values = (N - 1) / N * (1.0 + cross_sum(occ + 1, u) / povm_denominator(N, M, normalization))
    return _restore_shape(values, u)


def sine_ratio(M: int, u: ArrayLike) -> np.ndarray:
    """sin^2(Mu/2) / sin^2(u/2), continued analytically to M^2 at u = 2*pi*p."""
    u = np.atleast_1d(np.asarray(u, dtype=float))
    offset = u - 2.0 * np.pi * np.round(u / (2.0 * np.pi))
    near = np.abs(offset) < _PEAK_WINDOW
    ratio = np.empty_like(u)
    far = ~near
    ratio[far] = np.sin(M * u[far] / 2.0) ** 2 / np.sin(u[far] / 2.0) ** 2
    ratio[near] = M**2 * (1.0 - (M**2 - 1) * offset[near] ** 2 / 12.0)
    return ratio


def corr_balanced(N: int, M: int, u: ArrayLike) -> ArrayLike:
    """Balanced filling k_j = N/M: N(N-1)/N^2 {1 + (N/M)^2 [R(u) - M] / (N(N-1))}."""
    if M < 1 or N % M != 0:
        raise InputError(f"balanced filling needs M | N, got N={N}, M={M}", field="M")
    if N < 2:
        raise InputError(f"pair correlations need N >= 2, got N={N}", field="N")
    filling = N / M
    values = (N - 1) / N * (1.0 + filling**2 * (sine_ratio(M, u) - M) / (N * (N - 1)))
    return _restore_shape(values, u)


def main_peak_value(
    k: Occupations,
    prescription: Prescription,
    normalization: PovmNormalization = PovmNormalization.MEASURE,
) -> float:
    """Curve value at u = 2*pi*p from the exact cross-sums N^2 - sum k^2 and (N+M)^2 - sum (k+1)^2."""
    occ, N, M = _occupations_for_pairs(k)
    if Prescription(prescription) == Prescription.TRACE:
        cross = N**2 - int(np.dot(occ, occ))
        return (N - 1) / N * (1.0 + cross / (N * (N - 1)))
    cross = (N + M) ** 2 - int(np.dot(occ + 1, occ + 1))
    return (N - 1) / N * (1.0 + cross / povm_denominator(N, M, normalization))


def correlation_curve(
    k: Occupations,
    u_grid: Optional[np.ndarray] = None,
    prescription: Prescription = Prescription.TRACE,
    normalization: PovmNormalization = PovmNormalization.MEASURE,
) -> CorrelationCurve:
    """Sample the closed form for one prescription."""
    occ = as_occupations(k)
    u = default_u_grid() if u_grid is None else np.asarray(u_grid, dtype=float)
    if Prescription(prescription) == Prescription.TRACE:
        values = corr_closed_trace(occ, u)
        norm = None
    else:
        values = corr_closed_povm(occ, u, normalization)
        norm = PovmNormalization(normalization)
    return CorrelationCurve(
        u_grid=u,
        values=np.asarray(values, dtype=float),
        prescription=Prescription(prescription),
        M=occ.size,
        N=int(occ.sum()),
        normalization=norm,
    )
