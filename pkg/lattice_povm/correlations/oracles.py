"""
Brute-force oracles for the closed forms.

The two-point function is built by applying the field operator twice to
|k;N,t> in the Fock basis and summing squared amplitudes over the reduced
basis; no interference identity is used.
"""
import math
from collections import defaultdict
from typing import Dict, Optional, Tuple, Union

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import betaln, gammaln

from ..core import as_occupations
from ..core.energies import Occupations
from ..exceptions import RefusalError
from ..expansion import fringe_wavevector, wannier_matrix
from ..models import ExpansionContext

ORACLE_MAX_SITES = 4
ORACLE_MAX_ATOMS = 6

Amplitudes = Dict[Tuple[int, ...], np.ndarray]


def _check_small(occ: np.ndarray, max_sites: int = ORACLE_MAX_SITES, max_atoms: int = ORACLE_MAX_ATOMS) -> None:
    N, M = int(occ.sum()), occ.size
    if M > max_sites:
        raise RefusalError(f"brute-force oracle limited to M <= {max_sites}, got M={M}", required=M, cap=max_sites)
    if N > max_atoms:
        raise RefusalError(f"brute-force oracle limited to N <= {max_atoms}, got N={N}", required=N, cap=max_atoms)


def annihilate(states: Amplitudes, w: np.ndarray) -> Amplitudes:
    """Apply psi(x) = sum_j w_j(x) b_j to a superposition of Fock states.

    `w` has shape (M, points); amplitudes are arrays over the same points.
    """
    result: Amplitudes = defaultdict(lambda: 0j)
    for occ, amplitude in states.items():
        for j, count in enumerate(occ):
            if count == 0:
                continue
            reduced = occ[:j] + (count - 1,) + occ[j + 1:]
            result[reduced] = result[reduced] + math.sqrt(count) * w[j] * amplitude
    return dict(result)


def one_point_fock_oracle(k: Occupations, ctx: ExpansionContext, x: np.ndarray) -> np.ndarray:
    """<k;N,t| psi^dag(x) psi(x) |k;N,t> = || psi(x)|k> ||^2."""
    occ = as_occupations(k)
    _check_small(occ)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    states = annihilate({tuple(occ.tolist()): np.ones(x.size, dtype=complex)}, wannier_matrix(ctx, x))
    return sum((np.abs(a) ** 2 for a in states.values()), np.zeros(x.size))


def two_point_fock_oracle(
    k: Occupations,
    ctx: ExpansionContext,
    x: np.ndarray,
    x_prime: np.ndarray,
) -> np.ndarray:
    """<k;N,t| psi^dag(x) psi^dag(x') psi(x) psi(x') |k;N,t> = || psi(x) psi(x')|k> ||^2.

    Raises:
        RefusalError: for instances beyond N <= 6, M <= 4
    """
    occ = as_occupations(k)
    _check_small(occ)
    x, x_prime = np.broadcast_arrays(np.atleast_1d(np.asarray(x, dtype=float)), np.asarray(x_prime, dtype=float))
    start = {tuple(occ.tolist()): np.ones(x.size, dtype=complex)}
    states = annihilate(annihilate(start, wannier_matrix(ctx, x_prime)), wannier_matrix(ctx, x))
    return sum((np.abs(a) ** 2 for a in states.values()), np.zeros(x.size))


def barycenter_grid(ctx: ExpansionContext, fringe_order: int = 1, extent: float = 6.0, per_period: int = 32) -> np.ndarray:
    """Uniform R grid over +/- extent*sigma with >= per_period points per fringe of order fringe_order."""
    span = 2.0 * extent * ctx.sigma
    period = 2.0 * np.pi / (fringe_wavevector(ctx) * max(fringe_order, 1))
    points = max(2049, int(np.ceil(per_period * span / period)) + 1)
    return ctx.grid(points, extent)


def integrated_oracle_trace(
    k: Occupations,
    ctx: ExpansionContext,
    r: Union[float, np.ndarray],
    R: Optional[np.ndarray] = None,
) -> Union[float, np.ndarray]:
    """
    G(r) = int dR n(R-r/2, R+r/2) / int dR n(R-r/2) n(R+r/2) by trapezoidal quadrature.
    """
    occ = as_occupations(k)
    _check_small(occ)
    R = barycenter_grid(ctx, fringe_order=occ.size - 1) if R is None else R
    values = []
    for shift in np.atleast_1d(np.asarray(r, dtype=float)):
        x, x_prime = R - shift / 2.0, R + shift / 2.0
        numerator = trapezoid(two_point_fock_oracle(occ, ctx, x, x_prime), R)
        denominator = trapezoid(one_point_fock_oracle(occ, ctx, x) * one_point_fock_oracle(occ, ctx, x_prime), R)
        values.append(numerator / denominator)
    result = np.asarray(values)
    return float(result[0]) if np.ndim(r) == 0 else result


def dirichlet_log_integral(k: Occupations) -> float:
    """log int_simplex prod_j xi_j^k_j dxi by stick-breaking into Beta integrals."""
    occ = as_occupations(k)
    M = occ.size
    tail = np.cumsum(occ[::-1])[::-1]
    return math.fsum(
        float(betaln(occ[j] + 1, tail[j + 1] + M - (j + 1))) for j in range(M - 1)
    )


def completeness_residual(k: Occupations) -> float:
    """
    <k| 1 |k> - 1 with 1 resolved over coherent states:

        (N+M-1)!/N! * N!/k! * int prod xi^k dxi - 1
    """
    occ = as_occupations(k)
    N, M = int(occ.sum()), occ.size
    if M == 1:
        return 0.0
    log_terms = [
        float(gammaln(N + M) - gammaln(N + 1)),
        float(gammaln(N + 1) - gammaln(occ + 1).sum()),
        dirichlet_log_integral(occ),
    ]
    return math.expm1(math.fsum(log_terms))
