"""
Self-verification: run the brute-force and Monte Carlo oracles against the
closed forms and report every check with its measured deviation.
"""
import time
from enum import Enum
from functools import partial
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import Field

from ..annealing import anneal, enumerate_ground_state
from ..core import iter_compositions
from ..correlations import (
    Observable,
    completeness_residual,
    corr_closed_povm,
    corr_closed_trace,
    integrated_oracle_trace,
    povm_mc_oracle,
)
from ..expansion import density_fock_povm, fringe_wavevector
from ..logging import get_logger
from ..metrics import get_metrics
from ..models import AnnealSchedule, BaseModel, ExpansionContext, FockConfig, LatticeSpec

logger = get_logger(__name__)

ClosedForm = Callable[[np.ndarray, float], float]


class VerificationLevel(str, Enum):
    FAST = "fast"
    FULL = "full"


class LevelBounds(BaseModel):
    """Instance sizes and sample counts of one verification level."""

    max_sites: int
    max_atoms: int
    anneal_instances: int
    anneal_max_sites: int
    anneal_max_atoms: int
    samples: int
    mc_state: Tuple[int, ...]
    oracle_states: Tuple[Tuple[int, ...], ...]


LEVELS = {
    VerificationLevel.FAST: LevelBounds(
        max_sites=3,
        max_atoms=4,
        anneal_instances=10,
        anneal_max_sites=3,
        anneal_max_atoms=4,
        samples=10_000,
        mc_state=(1, 1, 2),
        oracle_states=((2, 1),),
    ),
    VerificationLevel.FULL: LevelBounds(
        max_sites=4,
        max_atoms=6,
        anneal_instances=100,
        anneal_max_sites=6,
        anneal_max_atoms=8,
        samples=100_000,
        mc_state=(1, 2, 2),
        oracle_states=((2, 1), (1, 1, 2)),
    ),
}


class CheckResult(BaseModel):
    name: str
    passed: bool
    deviation: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: deviation={self.deviation:.3g} tolerance={self.tolerance:.3g}"
        return f"{text} ({self.detail})" if self.detail else text


class VerificationReport(BaseModel):
    level: VerificationLevel
    checks: List[CheckResult] = Field(default_factory=list)
    duration: float = 0.0

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed_checks(self) -> List[str]:
        return [check.name for check in self.checks if not check.passed]

    def lines(self) -> List[str]:
        summary = "verification passed" if self.passed else f"verification FAILED: {', '.join(self.failed_checks)}"
        return [check.line() for check in self.checks] + [f"{summary} ({self.level.value}, {self.duration:.1f}s)"]


def check_completeness(max_sites: int, max_atoms: int) -> CheckResult:
    """Every Fock state with M <= max_sites, N <= max_atoms resolves to 1."""
    worst = 0.0
    count = 0
    for M in range(1, max_sites + 1):
        for N in range(max_atoms + 1):
            for k in iter_compositions(N, M):
                worst = max(worst, abs(completeness_residual(k)))
                count += 1
    return CheckResult(
        name="completeness",
        passed=worst <= 1e-12,
        deviation=worst,
        tolerance=1e-12,
        detail=f"{count} states",
    )


def check_annealer(
    instances: int,
    max_sites: int,
    max_atoms: int,
    seed: int = 0,
    min_hit_rate: float = 0.95,
) -> CheckResult:
    """Annealing with 8 restarts against the exhaustive minimum on random instances."""
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    hits = 0
    worst_undercut = 0.0
    for index in range(instances):
        spec = LatticeSpec(
            M=int(rng.integers(2, max_sites + 1)),
            U=float(rng.uniform(0.0, 10.0)),
            V2=float(rng.uniform(0.0, 10.0)),
        )
        N = int(rng.integers(1, max_atoms + 1))
        sched = AnnealSchedule(stages=200, sweeps_per_stage=10, restarts=8, seed=seed + index)
        found = anneal(spec, N, sched).energy
        exact = enumerate_ground_state(spec, N).energy
        tol = 1e-9 * max(1.0, abs(exact))
        if abs(found - exact) <= tol:
            hits += 1
        worst_undercut = max(worst_undercut, exact - tol - found)
    rate = hits / instances
    return CheckResult(
        name="annealer_vs_exhaustive",
        passed=rate >= min_hit_rate and worst_undercut <= 0.0,
        deviation=1.0 - rate,
        tolerance=1.0 - min_hit_rate,
        detail=f"{hits}/{instances} optimal, undercut={max(worst_undercut, 0.0):.3g}",
    )


def _context(M: int, sigma_factor: float, template: Optional[ExpansionContext]) -> ExpansionContext:
    """Context for an M-site state with sigma = sigma_factor*M*d, other fields from `template`."""
    if template is None:
        return ExpansionContext(sigma=sigma_factor * M, M=M)
    return template.model_copy(update={'M': M, 'sigma': sigma_factor * M * template.d})


def check_integrated_oracle(
    occupations: Sequence[int],
    sigma_factor: float = 20.0,
    points: int = 9,
    tolerance: float = 1e-2,
    template: Optional[ExpansionContext] = None,
) -> CheckResult:
    """Quadrature of the brute-force two-point function against the trace closed form."""
    k = FockConfig.of(occupations)
    ctx = _context(k.M, sigma_factor, template)
    Q = fringe_wavevector(ctx)
    r = np.linspace(0.0, 4.0 * np.pi / Q, points)
    numeric = np.asarray(integrated_oracle_trace(k, ctx, r))
    closed = np.asarray(corr_closed_trace(k, Q * r))
    deviation = float(np.max(np.abs(numeric - closed) / np.abs(closed)))
    return CheckResult(
        name=f"integrated_oracle{tuple(occupations)}",
        passed=deviation <= tolerance,
        deviation=deviation,
        tolerance=tolerance,
        detail=f"{points} separations",
    )


def check_povm_density(
    occupations: Sequence[int],
    samples: int,
    seed: int = 0,
    sigmas: float = 3.0,
    template: Optional[ExpansionContext] = None,
) -> CheckResult:
    # sigma = 5*M*d for both the sampled and the closed-form density
    k = FockConfig.of(occupations)
    ctx = _context(k.M, 5.0, template)
    x = ctx.center + 0.3 * ctx.sigma
    estimate = povm_mc_oracle(k, ctx, Observable.DENSITY, samples=samples, seed=seed, x=x)
    reference = float(density_fock_povm(k, ctx, np.array([x]))[0])
    return CheckResult(
        name="povm_density_mc",
        passed=estimate.agrees_with(reference, sigmas),
        deviation=estimate.z_score(reference),
        tolerance=sigmas,
        detail=f"estimate={estimate.estimate:.6g} closed={reference:.6g}",
    )


def check_povm_correlation(
    occupations: Sequence[int],
    samples: int,
    seed: int = 0,
    sigmas: float = 3.0,
    closed_form: Optional[ClosedForm] = None,
    phases: Sequence[float] = (np.pi, 2.0 * np.pi),
    template: Optional[ExpansionContext] = None,
) -> CheckResult:
    """
    Monte Carlo POVM pair correlation against a closed form at the given u values.

    `closed_form(k, u)` defaults to corr_closed_povm with the measure normalization.
    """
    closed_form = closed_form or corr_closed_povm
    k = FockConfig.of(occupations)
    ctx = _context(k.M, 5.0, template)
    Q = fringe_wavevector(ctx)
    worst = 0.0
    details = []
    for offset, u in enumerate(phases):
        estimate = povm_mc_oracle(
            k, ctx, Observable.PAIR_CORRELATION, samples=samples, seed=seed + offset, r=u / Q
        )
        reference = float(closed_form(k.array, u))
        worst = max(worst, estimate.z_score(reference))
        details.append(f"u={u:.4g}: {estimate.estimate:.5g} vs {reference:.5g}")
    return CheckResult(
        name="povm_correlation_mc",
        passed=worst <= sigmas,
        deviation=worst,
        tolerance=sigmas,
        detail="; ".join(details),
    )


def check_identity(occupations: Sequence[int], samples: int, seed: int = 0, sigmas: float = 3.0) -> CheckResult:
    k = FockConfig.of(occupations)
    estimate = povm_mc_oracle(k, None, Observable.IDENTITY, samples=samples, seed=seed)
    return CheckResult(
        name="completeness_mc",
        passed=estimate.agrees_with(1.0, sigmas),
        deviation=estimate.z_score(1.0),
        tolerance=sigmas,
        detail=f"estimate={estimate.estimate:.6g}",
    )


def _run_check(name: str, check: Callable[[], CheckResult]) -> CheckResult:
    try:
        return check()
    except Exception as exc:
        logger.exception("verification check crashed", check=name)
        return CheckResult(
            name=name,
            passed=False,
            deviation=float('inf'),
            tolerance=0.0,
            detail=f"{type(exc).__name__}: {exc}",
        )


def verify(
    level: VerificationLevel = VerificationLevel.FAST,
    seed: int = 0,
    samples: Optional[int] = None,
    template: Optional[ExpansionContext] = None,
    sigma_factor: float = 20.0,
) -> VerificationReport:
    """
    Run every oracle suite of a level; failures are reported, never raised.

    `samples` overrides the level's Monte Carlo sample count. `template`
    supplies mass, t, hbar, d and the envelope model of every expansion
    context; each check sets its own M and sigma.
    """
    level = VerificationLevel(level)
    bounds = LEVELS[level]
    samples = samples or bounds.samples
    started = time.perf_counter()
    suites: List[Tuple[str, Callable[[], CheckResult]]] = [
        ("completeness", partial(check_completeness, bounds.max_sites, bounds.max_atoms)),
        (
            "annealer_vs_exhaustive",
            partial(check_annealer, bounds.anneal_instances, bounds.anneal_max_sites, bounds.anneal_max_atoms, seed),
        ),
        *[
            (
                f"integrated_oracle{state}",
                partial(check_integrated_oracle, state, sigma_factor=sigma_factor, template=template),
            )
            for state in bounds.oracle_states
        ],
        ("completeness_mc", partial(check_identity, bounds.mc_state, samples, seed)),
        ("povm_density_mc", partial(check_povm_density, bounds.mc_state, samples, seed + 1, template=template)),
        (
            "povm_correlation_mc",
            partial(check_povm_correlation, bounds.mc_state, samples, seed + 2, template=template),
        ),
    ]
    checks = [_run_check(name, check) for name, check in suites]
    metrics = get_metrics()
    for check in checks:
        metrics.record_check(check.passed)
        log = logger.info if check.passed else logger.error
        log("verification check", check=check.name, passed=check.passed, deviation=check.deviation)
    report = VerificationReport(level=level, checks=checks, duration=time.perf_counter() - started)
    logger.info("verification finished", level=level.value, passed=report.passed, duration=report.duration)
    return report
