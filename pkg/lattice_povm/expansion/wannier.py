"""
Ballistically evolved Wannier functions

    w_j(x, t) = |w_j(x, t)| exp(i m (x - x_j)^2 / (2 hbar t)),   x_j = j d.
"""
import numpy as np

from ..exceptions import InputError
from ..models import ExpansionContext


def fringe_wavevector(ctx: ExpansionContext) -> float:
    """Q = m d / (hbar t); interference fringes repeat every 2*pi/Q."""
    return ctx.mass * ctx.d / (ctx.hbar * ctx.t)


def _gaussian_density(x: np.ndarray, center: np.ndarray, sigma: float) -> np.ndarray:
    return np.exp(-((x - center) ** 2) / (2.0 * sigma**2)) / (np.sqrt(2.0 * np.pi) * sigma)


def envelope_densities(ctx: ExpansionContext, x: np.ndarray) -> np.ndarray:
    """|w_j(x,t)|^2 for every site, shape (M, len(x)); each row integrates to 1."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if ctx.envelope == "common":
        row = _gaussian_density(x, np.asarray(ctx.center), ctx.sigma)
        return np.broadcast_to(row, (ctx.M, x.size))
    return _gaussian_density(x[None, :], ctx.site_positions()[:, None], ctx.sigma)


def relative_phases(ctx: ExpansionContext, x: np.ndarray) -> np.ndarray:
    """
    Site phases with the common factor m (x - c)^2 / (2 hbar t) removed, shape (M, len(x)).

    Written as m/(2 hbar t) * (c - x_j)(2x - x_j - c) so that far from the
    lattice no large phases are subtracted from each other.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    xj = ctx.site_positions()[:, None]
    c = ctx.center
    return ctx.mass / (2.0 * ctx.hbar * ctx.t) * (c - xj) * (2.0 * x[None, :] - xj - c)


def wannier_matrix(ctx: ExpansionContext, x: np.ndarray) -> np.ndarray:
    """w_j(x,t) up to a site-independent phase, shape (M, len(x))."""
    return np.sqrt(envelope_densities(ctx, x)) * np.exp(1j * relative_phases(ctx, x))


def wannier_evolved(ctx: ExpansionContext, j: int, x: np.ndarray) -> np.ndarray:
    """w_j(x,t) for 1-based site j, including its full quadratic phase."""
    if not 1 <= j <= ctx.M:
        raise InputError(f"site {j} outside 1..{ctx.M}", field="j")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    magnitude = np.sqrt(envelope_densities(ctx, x)[j - 1])
    phase = ctx.mass * (x - j * ctx.d) ** 2 / (2.0 * ctx.hbar * ctx.t)
    return magnitude * np.exp(1j * phase)


def dynamical_phase(ctx: ExpansionContext, j: int, l: int, x: np.ndarray) -> np.ndarray:
    """theta_jl(x,t) = Q (j - l)(x - d(j + l)/2) = arg w_l - arg w_j (mod 2*pi)."""
    x = np.asarray(x, dtype=float)
    return fringe_wavevector(ctx) * (j - l) * (x - 0.5 * ctx.d * (j + l))
