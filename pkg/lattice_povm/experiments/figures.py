"""
Correlation experiments on annealed ground states: one (V2, N) point with
both prescriptions, and a sweep of the secondary-lattice strength.
"""
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import ValidationError

from ..annealing import ground_state
from ..core import fock_energy, site_energies
from ..correlations import correlation_curve, default_u_grid
from ..exceptions import InputError, LatticePovmError
from ..logging import get_logger
from ..metrics import get_metrics
from ..models import (
    AnnealResult,
    AnnealSchedule,
    BaseModel,
    CorrelationCurve,
    FockConfig,
    LatticeSpec,
    PeakReport,
    PovmNormalization,
    Prescription,
    SweepRow,
)
from ..utils import write_table_csv
from .peaks import DEFAULT_THRESHOLD, find_peaks

logger = get_logger(__name__)

FIGURE1_N = 170
FIGURE1_M = 130
FIGURE1_V2 = 9.9
DEFAULT_V2_LADDER = (0.0, 2.0, 5.0, 9.9, 15.0)


class CorrelationResult(BaseModel):
    """Both prescriptions' curves and peaks for one Fock state."""

    ground_state: AnnealResult
    trace: CorrelationCurve
    povm: CorrelationCurve
    trace_peaks: PeakReport
    povm_peaks: PeakReport

    def write(self, out_dir: Union[str, Path], stem: str = "figure1") -> List[Path]:
        out_dir = Path(out_dir)
        return [
            self.trace.to_csv(out_dir / f"{stem}_trace.csv"),
            self.povm.to_csv(out_dir / f"{stem}_povm.csv"),
        ]


def figure1_spec(U: float = 1.0, V2: float = FIGURE1_V2, M: int = FIGURE1_M) -> LatticeSpec:
    return LatticeSpec(M=M, U=U, V2=V2)


def _curve_parameters(spec: LatticeSpec, result: AnnealResult) -> Dict[str, Any]:
    return {
        'U': spec.U,
        'V2': spec.V2,
        'kappa_ratio': spec.kappa_ratio,
        'method': result.method,
        'seed': result.seed if result.seed is not None else 'none',
        'energy': result.energy,
    }


def correlate_state(
    state: AnnealResult,
    spec: LatticeSpec,
    u_grid: Optional[np.ndarray] = None,
    threshold: float = DEFAULT_THRESHOLD,
    normalization: PovmNormalization = PovmNormalization.MEASURE,
) -> CorrelationResult:
    """Evaluate both closed forms on the u grid and detect their peaks."""
    u = default_u_grid() if u_grid is None else np.asarray(u_grid, dtype=float)
    params = _curve_parameters(spec, state)
    trace = correlation_curve(state.config, u, Prescription.TRACE)
    povm = correlation_curve(state.config, u, Prescription.POVM, normalization)
    trace = trace.model_copy(update={'parameters': params})
    povm = povm.model_copy(update={'parameters': params})
    return CorrelationResult(
        ground_state=state,
        trace=trace,
        povm=povm,
        trace_peaks=find_peaks(trace, threshold),
        povm_peaks=find_peaks(povm, threshold),
    )


def run_figure1(
    spec: Optional[LatticeSpec] = None,
    N: int = FIGURE1_N,
    sched: Optional[AnnealSchedule] = None,
    u_grid: Optional[np.ndarray] = None,
    threshold: float = DEFAULT_THRESHOLD,
    method: str = "anneal",
    normalization: PovmNormalization = PovmNormalization.MEASURE,
) -> CorrelationResult:
    """Anneal one ground state and compare the trace and POVM correlation curves."""
    spec = spec or figure1_spec()
    sched = sched or AnnealSchedule()
    state = ground_state(spec, N, sched, method)
    result = correlate_state(state, spec, u_grid, threshold, normalization)
    logger.info(
        "correlation curves ready",
        M=spec.M,
        N=N,
        V2=spec.V2,
        main_peaks=len(result.trace_peaks.main_peaks),
        secondary_trace=result.trace_peaks.secondary_height,
        secondary_povm=result.povm_peaks.secondary_height,
    )
    return result


def correlate_occupations(
    occupations: Sequence[int],
    spec: LatticeSpec,
    u_grid: Optional[np.ndarray] = None,
    threshold: float = DEFAULT_THRESHOLD,
    normalization: PovmNormalization = PovmNormalization.MEASURE,
) -> CorrelationResult:
    """Same as run_figure1 for a given occupation vector, skipping preparation."""
    config = FockConfig.of(occupations)
    if config.M != spec.M:
        raise InputError(f"occupations have {config.M} sites, lattice has {spec.M}", field="occupations")
    state = AnnealResult(
        config=config,
        energy=fock_energy(config.array, site_energies(spec), spec.U),
        method="given",
    )
    return correlate_state(state, spec, u_grid, threshold, normalization)


def row_seed(base_seed: int, index: int) -> int:
    """Seed of sweep row `index`; 32-bit so it survives float CSV columns exactly."""
    sequence = np.random.SeedSequence(entropy=base_seed, spawn_key=(index,))
    return int(sequence.generate_state(1, dtype=np.uint32)[0])


_RowTask = Tuple[LatticeSpec, float, int, AnnealSchedule, np.ndarray, float, str, PovmNormalization]


def _sweep_row(task: _RowTask) -> SweepRow:
    template, v2, N, sched, u, threshold, method, normalization = task
    try:
        spec = LatticeSpec(**{**template.model_dump(), "V2": v2})
        result = correlate_state(ground_state(spec, N, sched, method), spec, u, threshold, normalization)
    except (LatticePovmError, ValidationError) as exc:
        logger.warning("sweep row failed", V2=v2, seed=sched.seed, error=str(exc))
        return SweepRow(V2=v2, seed=sched.seed, status="failed", error=str(exc))
    except Exception as exc:
        logger.exception("sweep row crashed", V2=v2, seed=sched.seed)
        return SweepRow(V2=v2, seed=sched.seed, status="failed", error=f"{type(exc).__name__}: {exc}")
    return SweepRow(
        V2=spec.V2,
        secondary_trace=result.trace_peaks.secondary_height,
        secondary_povm=result.povm_peaks.secondary_height,
        energy=result.ground_state.energy,
        seed=sched.seed,
    )


def sweep_v2(
    template: LatticeSpec,
    v2_list: Sequence[float] = DEFAULT_V2_LADDER,
    N: int = FIGURE1_N,
    sched: Optional[AnnealSchedule] = None,
    u_grid: Optional[np.ndarray] = None,
    base_seed: int = 0,
    threshold: float = DEFAULT_THRESHOLD,
    method: str = "anneal",
    workers: int = 1,
    normalization: PovmNormalization = PovmNormalization.MEASURE,
) -> List[SweepRow]:
    """
    Secondary-peak heights of both prescriptions as V2 increases.

    Row i anneals with seed row_seed(base_seed, i). Rows run in up to
    `workers` processes; the result keeps the order of `v2_list`, and a row
    whose preparation fails is marked failed without stopping the sweep.

    Raises:
        InputError: if v2_list is empty or not ascending
    """
    v2_values = [float(v) for v in v2_list]
    if not v2_values:
        raise InputError("v2_list must not be empty", field="v2_list")
    if any(b < a for a, b in zip(v2_values, v2_values[1:])):
        raise InputError("v2_list must be ascending", field="v2_list")
    if workers < 1:
        raise InputError("workers must be at least 1", field="workers")

    sched = sched or AnnealSchedule()
    u = default_u_grid() if u_grid is None else np.asarray(u_grid, dtype=float)
    tasks: List[_RowTask] = []
    for index, v2 in enumerate(v2_values):
        row_sched = sched.model_copy(update={'seed': row_seed(base_seed, index)})
        tasks.append((template, v2, N, row_sched, u, threshold, method, normalization))

    logger.info("sweep started", rows=len(tasks), workers=workers, base_seed=base_seed)
    if workers == 1 or len(tasks) == 1:
        rows = [_sweep_row(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as executor:
            rows = list(executor.map(_sweep_row, tasks))

    metrics = get_metrics()
    for row in rows:
        metrics.record_sweep_row(row.status)
    logger.info("sweep finished", rows=len(rows), failed=sum(not row.ok for row in rows))
    return rows


def write_sweep_csv(rows: Sequence[SweepRow], path: Union[str, Path], meta: Dict[str, Any]) -> Path:
    """One line per row in input order; failed rows carry nan and ok=0."""

    def column(name: str) -> np.ndarray:
        return np.array([np.nan if getattr(row, name) is None else getattr(row, name) for row in rows], dtype=float)

    return write_table_csv(
        path,
        ['V2', 'secondary_trace', 'secondary_povm', 'energy', 'seed', 'ok'],
        [
            column('V2'),
            column('secondary_trace'),
            column('secondary_povm'),
            column('energy'),
            column('seed'),
            np.array([1.0 if row.ok else 0.0 for row in rows]),
        ],
        {'rows': len(rows), **meta},
    )
