"""
Density profiles after time of flight, for coherent and Fock initial states.

Functions take an optional `envelope` array of shape (M, len(x)) holding
|w_j(x,t)|^2 explicitly; by default it comes from the expansion context.
"""
from typing import Optional, Union

import numpy as np

from ..core import as_occupations
from ..core.energies import Occupations
from ..exceptions import InputError
from ..models import (
    CoherentSpec,
    DensityProfile,
    ExpansionContext,
    FockConfig,
    Prescription,
    StateKind,
)
from .wannier import dynamical_phase, envelope_densities, relative_phases


def _envelope(ctx: ExpansionContext, x: np.ndarray, envelope: Optional[np.ndarray]) -> np.ndarray:
    if envelope is None:
        return envelope_densities(ctx, x)
    envelope = np.asarray(envelope, dtype=float)
    if envelope.shape != (ctx.M, x.size):
        raise InputError(f"envelope must have shape {(ctx.M, x.size)}, got {envelope.shape}", field="envelope")
    return envelope


def _check_sites(ctx: ExpansionContext, M: int) -> None:
    if M != ctx.M:
        raise InputError(f"state has {M} sites, expansion context has {ctx.M}", field="M")


def coherent_amplitude(
    c: CoherentSpec,
    ctx: ExpansionContext,
    x: np.ndarray,
    envelope: Optional[np.ndarray] = None,
) -> np.ndarray:
    """sum_j sqrt(xi_j) exp(i phi_j) w_j(x,t), up to a global phase."""
    _check_sites(ctx, c.M)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    w = np.sqrt(_envelope(ctx, x, envelope)) * np.exp(1j * relative_phases(ctx, x))
    return c.amplitudes @ w


def density_coherent(
    c: CoherentSpec,
    N: int,
    ctx: ExpansionContext,
    x: np.ndarray,
    envelope: Optional[np.ndarray] = None,
) -> np.ndarray:
    """N |sum_j sqrt(xi_j) exp(i phi_j) w_j(x,t)|^2."""
    return N * np.abs(coherent_amplitude(c, ctx, x, envelope)) ** 2


def density_coherent_cosine(
    c: CoherentSpec,
    N: int,
    ctx: ExpansionContext,
    x: np.ndarray,
    envelope: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Same density in interference form: N{sum_j xi_j|w_j|^2 + 2 sum_{j<l} ... cos(theta_jl - phi_j + phi_l)}."""
    _check_sites(ctx, c.M)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    env = _envelope(ctx, x, envelope)
    xi, phi = c.xi_array, c.phi_array
    total = xi @ env
    for j in range(c.M):
        for l in range(j + 1, c.M):
            theta = dynamical_phase(ctx, j + 1, l + 1, x)
            total = total + 2.0 * np.sqrt(xi[j] * xi[l] * env[j] * env[l]) * np.cos(theta - phi[j] + phi[l])
    return N * total


def density_fock_trace(
    k: Occupations,
    ctx: ExpansionContext,
    x: np.ndarray,
    envelope: Optional[np.ndarray] = None,
) -> np.ndarray:
    """sum_j k_j |w_j(x,t)|^2; no interference term survives."""
    occ = as_occupations(k)
    _check_sites(ctx, occ.size)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return occ.astype(float) @ _envelope(ctx, x, envelope)


def density_fock_povm(
    k: Occupations,
    ctx: ExpansionContext,
    x: np.ndarray,
    envelope: Optional[np.ndarray] = None,
) -> np.ndarray:
    """N/(N+M) sum_j (k_j + 1) |w_j(x,t)|^2."""
    occ = as_occupations(k)
    _check_sites(ctx, occ.size)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    N, M = int(occ.sum()), occ.size
    return N / (N + M) * ((occ + 1).astype(float) @ _envelope(ctx, x, envelope))


def density_profile(
    state: Union[FockConfig, CoherentSpec],
    ctx: ExpansionContext,
    prescription: Prescription = Prescription.TRACE,
    N: Optional[int] = None,
    points: int = 2**14,
    extent: float = 6.0,
) -> DensityProfile:
    """
    Sample a density on the default +/- extent*sigma grid.

    Coherent states are only supported under the trace prescription; their
    POVM average is available from the Monte Carlo oracle.
    """
    x = ctx.grid(points, extent)
    params = {'M': ctx.M, 'sigma': ctx.sigma, 'Q': ctx.mass * ctx.d / (ctx.hbar * ctx.t), 'envelope': ctx.envelope}
    if isinstance(state, FockConfig):
        if prescription == Prescription.TRACE:
            values = density_fock_trace(state, ctx, x)
        else:
            values = density_fock_povm(state, ctx, x)
        return DensityProfile(
            x_grid=x, values=values, prescription=prescription, state=StateKind.FOCK, N=state.N, parameters=params
        )
    if N is None:
        raise InputError("a coherent-state profile needs the atom number N", field="N")
    if prescription != Prescription.TRACE:
        raise InputError("POVM densities of coherent states come from povm_mc_oracle", field="prescription")
    return DensityProfile(
        x_grid=x,
        values=density_coherent(state, N, ctx, x),
        prescription=prescription,
        state=StateKind.COHERENT,
        N=N,
        parameters=params,
    )
