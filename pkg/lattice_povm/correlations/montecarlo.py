"""
Monte Carlo evaluation of POVM averages over the coherent-state measure

    int dmu(phi) dmu(xi) <xi,phi;N| rho |xi,phi;N> <O>_{xi,phi}.

xi is drawn uniformly on the simplex (normalized exponential spacings), the
phases uniformly on [0, 2*pi) with phi_M pinned to 0. Each sample carries
the state weight times (N+M-1)!/N! over the uniform simplex density (M-1)!.
"""
import math
from enum import Enum
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import gammaln

from ..core import as_occupations, coherent_state_weight, log_povm_weight_array
from ..exceptions import InputError, RefusalError
from ..expansion import wannier_matrix
from ..logging import get_logger
from ..metrics import get_metrics
from ..models import CoherentSpec, ExpansionContext, FockConfig, OracleEstimate
from .oracles import barycenter_grid

logger = get_logger(__name__)

MC_MAX_SITES = 3
MC_MAX_ATOMS = 12
MC_MIN_SAMPLES = 10_000


class Observable(str, Enum):
    """What the POVM oracle averages."""

    DENSITY = "density"
    PAIR_CORRELATION = "pair_correlation"
    IDENTITY = "identity"


State = Union[FockConfig, CoherentSpec]


class _StateWeights:
    """Per-sample <xi,phi;N| rho |xi,phi;N> times the measure constant."""

    def __init__(self, state: State, N: Optional[int]):
        if isinstance(state, FockConfig):
            self.occ: Optional[np.ndarray] = as_occupations(state)
            self.reference: Optional[CoherentSpec] = None
            self.N = state.N
            self.M = state.M
        else:
            if N is None:
                raise InputError("a coherent reference state needs the atom number N", field="N")
            self.occ = None
            self.reference = state
            self.N = N
            self.M = state.M
        self.log_measure = float(gammaln(self.N + self.M) - gammaln(self.N + 1) - gammaln(self.M))

    def __call__(self, xi: np.ndarray, phi: np.ndarray) -> np.ndarray:
        if self.occ is not None:
            return np.exp(self.log_measure + log_povm_weight_array(self.occ, xi))
        return math.exp(self.log_measure) * coherent_state_weight(self.reference, self.N, xi, phi)


def sample_coherent_parameters(rng: np.random.Generator, size: int, M: int) -> Tuple[np.ndarray, np.ndarray]:
    """Uniform Dirichlet(1,...,1) amplitudes and uniform phases with the last pinned to 0."""
    spacings = rng.exponential(size=(size, M))
    xi = spacings / spacings.sum(axis=1, keepdims=True)
    phi = rng.uniform(0.0, 2.0 * np.pi, size=(size, M))
    phi[:, -1] = 0.0
    return xi, phi


def _chunks(total: int, chunk: int) -> Iterator[int]:
    while total > 0:
        yield min(chunk, total)
        total -= chunk


def _check_instance(weights: _StateWeights, samples: int) -> None:
    if weights.M > MC_MAX_SITES:
        raise RefusalError(
            f"POVM Monte Carlo limited to M <= {MC_MAX_SITES}, got M={weights.M}",
            required=weights.M,
            cap=MC_MAX_SITES,
        )
    if weights.N > MC_MAX_ATOMS:
        raise RefusalError(
            f"POVM Monte Carlo limited to N <= {MC_MAX_ATOMS}, got N={weights.N}",
            required=weights.N,
            cap=MC_MAX_ATOMS,
        )
    if samples < MC_MIN_SAMPLES:
        raise InputError(f"need at least {MC_MIN_SAMPLES} samples, got {samples}", field="samples")


def povm_mc_oracle(
    state: State,
    ctx: Optional[ExpansionContext],
    observable: Observable,
    samples: int = 100_000,
    seed: int = 0,
    x: Optional[float] = None,
    r: Optional[float] = None,
    N: Optional[int] = None,
    batches: int = 20,
    chunk: int = 1024,
) -> OracleEstimate:
    """
    POVM average of an observable for a Fock or coherent initial state.

    Args:
        state: FockConfig, or CoherentSpec for rho = |xi',phi';N><xi',phi';N|
        ctx: expansion context (unused for the identity observable)
        observable: density at `x`, integrated pair correlation at `r`, or identity
        samples: number of coherent-state samples
        seed: seed of the sampling stream
        N: atom number for a coherent reference state
        batches: batch count for the pair-correlation ratio's standard error

    Returns:
        OracleEstimate with the mean and its standard error

    Raises:
        RefusalError: for M > 3 or N > 12
    """
    observable = Observable(observable)
    weights = _StateWeights(state, N)
    _check_instance(weights, samples)
    if observable != Observable.IDENTITY and (ctx is None or ctx.M != weights.M):
        raise InputError("an expansion context matching the state's site count is required", field="ctx")
    rng = np.random.default_rng(np.random.SeedSequence(seed))

    if observable == Observable.PAIR_CORRELATION:
        if r is None:
            raise InputError("pair correlation needs the separation r", field="r")
        estimate, stderr = _pair_correlation(weights, ctx, float(r), samples, rng, batches, chunk)
    else:
        if observable == Observable.DENSITY and x is None:
            raise InputError("density needs the position x", field="x")
        estimate, stderr = _pointwise(weights, ctx, observable, x, samples, rng, chunk)

    get_metrics().record_samples(observable.value, samples)
    logger.debug("povm oracle finished", observable=observable.value, estimate=estimate, stderr=stderr)
    return OracleEstimate(
        estimate=estimate, stderr=stderr, samples=samples, seed=seed, observable=observable.value
    )


def _pointwise(
    weights: _StateWeights,
    ctx: Optional[ExpansionContext],
    observable: Observable,
    x: Optional[float],
    samples: int,
    rng: np.random.Generator,
    chunk: int,
) -> Tuple[float, float]:
    w_x = wannier_matrix(ctx, np.array([x]))[:, 0] if observable == Observable.DENSITY else None
    total = 0.0
    total_sq = 0.0
    for size in _chunks(samples, chunk):
        xi, phi = sample_coherent_parameters(rng, size, weights.M)
        values = weights(xi, phi)
        if w_x is not None:
            amplitude = (np.sqrt(xi) * np.exp(1j * phi)) @ w_x
            values = values * weights.N * np.abs(amplitude) ** 2
        total += float(values.sum())
        total_sq += float(np.dot(values, values))
    mean = total / samples
    variance = max(total_sq / samples - mean**2, 0.0) * samples / (samples - 1)
    return mean, math.sqrt(variance / samples)


def _pair_correlation(
    weights: _StateWeights,
    ctx: ExpansionContext,
    r: float,
    samples: int,
    rng: np.random.Generator,
    batches: int,
    chunk: int,
) -> Tuple[float, float]:
    """Ratio of POVM averages; its standard error comes from batch means."""
    N = weights.N
    R = barycenter_grid(ctx, fringe_order=weights.M - 1)
    w_left = wannier_matrix(ctx, R - r / 2.0)
    w_right = wannier_matrix(ctx, R + r / 2.0)

    pair_sums = np.zeros(batches)
    left_sums = np.zeros((batches, R.size))
    right_sums = np.zeros((batches, R.size))
    sizes = [len(part) for part in np.array_split(np.arange(samples), batches)]

    for b, batch_size in enumerate(sizes):
        for size in _chunks(batch_size, chunk):
            xi, phi = sample_coherent_parameters(rng, size, weights.M)
            weight = weights(xi, phi)
            amplitudes = np.sqrt(xi) * np.exp(1j * phi)
            left = np.abs(amplitudes @ w_left) ** 2
            right = np.abs(amplitudes @ w_right) ** 2
            pair_sums[b] += N * (N - 1) * float(weight @ trapezoid(left * right, R, axis=1))
            left_sums[b] += N * (weight @ left)
            right_sums[b] += N * (weight @ right)

    def ratio(pair: float, left: np.ndarray, right: np.ndarray, count: int) -> float:
        return (pair / count) / trapezoid((left / count) * (right / count), R)

    estimate = ratio(pair_sums.sum(), left_sums.sum(axis=0), right_sums.sum(axis=0), samples)
    per_batch = np.array([ratio(pair_sums[b], left_sums[b], right_sums[b], sizes[b]) for b in range(batches)])
    stderr = float(per_batch.std(ddof=1) / math.sqrt(batches))
    return float(estimate), stderr


def pool_estimates(estimates: Sequence[OracleEstimate]) -> OracleEstimate:
    """Inverse-variance weighted combination of independent streams."""
    if not estimates:
        raise InputError("nothing to pool", field="estimates")
    observables = {e.observable for e in estimates}
    if len(observables) != 1:
        raise InputError(f"cannot pool different observables: {sorted(observables)}", field="estimates")
    total = sum(e.samples for e in estimates)
    if any(e.stderr == 0 for e in estimates):
        mean = sum(e.estimate * e.samples for e in estimates) / total
        return OracleEstimate(estimate=mean, stderr=0.0, samples=total, seed=estimates[0].seed, observable=observables.pop())
    precision = np.array([1.0 / e.stderr**2 for e in estimates])
    values = np.array([e.estimate for e in estimates])
    return OracleEstimate(
        estimate=float(precision @ values / precision.sum()),
        stderr=float(1.0 / math.sqrt(precision.sum())),
        samples=total,
        seed=estimates[0].seed,
        observable=observables.pop(),
    )


def run_streams(
    state: State,
    ctx: Optional[ExpansionContext],
    observable: Observable,
    seeds: List[int],
    **kwargs,
) -> OracleEstimate:
    """Run one oracle stream per seed and pool them."""
    return pool_estimates([povm_mc_oracle(state, ctx, observable, seed=seed, **kwargs) for seed in seeds])
