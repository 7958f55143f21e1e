"""
Command-line entry point.

    lattice-povm ground-state --config run.cfg --seed 7
    lattice-povm correlate --occupations 2,1,0,3 --out runs/small
    lattice-povm figure1 --out runs/fig1
    lattice-povm sweep --workers 4 --out runs/fig2
    lattice-povm verify --level full

Exit codes: 0 success, 1 verification failure, 2 input or configuration error.
"""
import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from . import __version__
from .annealing import ground_state
from .config import SimulationSettings, resolve_settings
from .exceptions import InputError, LatticePovmError, VerificationError
from .experiments import (
    CorrelationResult,
    correlate_occupations,
    correlate_state,
    run_figure1,
    sweep_v2,
    verify,
    write_manifest,
    write_sweep_csv,
)
from .logging import get_logger, set_run_id, setup_logging
from .metrics import get_metrics
from .models import AnnealResult, PeakReport
from .utils import write_key_values

logger = get_logger(__name__)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="Flat 'key = value' configuration file")
    common.add_argument("--seed", type=int, help="Base seed (unsigned 64-bit)")
    common.add_argument("--out", type=Path, help="Output directory for CSVs, manifest and metrics")
    common.add_argument("--workers", type=int, help="Worker processes for sweeps")
    common.add_argument("--grid-points", type=int, help="Points of the (0, u_max] grid")
    common.add_argument("--threshold", type=float, help="Peak detection threshold above 1")
    common.add_argument("--method", choices=["anneal", "insertion", "enumeration"], help="Ground-state preparation")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    common.add_argument("--log-format", choices=["console", "json"])
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattice-povm",
        description="Fock-state ground states and trace vs POVM density correlations after time of flight.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_options()

    sub.add_parser("ground-state", parents=[common], help="Prepare a ground state and print k and E")
    correlate = sub.add_parser("correlate", parents=[common], help="Both correlation curves for one state")
    correlate.add_argument("--occupations", help="Comma-separated occupation vector; skips preparation")
    sub.add_parser("figure1", parents=[common], help="Correlation curves of the reference ground state")
    sub.add_parser("sweep", parents=[common], help="Secondary-peak heights across the V2 ladder")
    check = sub.add_parser("verify", parents=[common], help="Run the oracle suites")
    check.add_argument("--level", choices=["fast", "full"])
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        "seed": args.seed,
        "workers": args.workers,
        "grid_points": args.grid_points,
        "threshold": args.threshold,
        "method": args.method,
        "log_level": args.log_level,
        "log_format": args.log_format,
        "level": getattr(args, "level", None),
    }


def parse_occupations(raw: str) -> List[int]:
    try:
        return [int(part) for part in raw.split(",") if part.strip()]
    except ValueError as exc:
        raise InputError(f"occupations must be comma-separated integers, got {raw!r}", field="occupations") from exc


def _parameters(settings: SimulationSettings) -> Dict[str, Any]:
    return settings.model_dump(exclude={"log_level", "log_format"})


def _peak_summary(prefix: str, peaks: PeakReport) -> Dict[str, Any]:
    return {
        f"{prefix}.main_peaks": len(peaks.main_peaks),
        f"{prefix}.main_positions": [u for u, _ in peaks.main_peaks] or "none",
        f"{prefix}.main_height": peaks.main_height,
        f"{prefix}.secondary_peaks": len(peaks.secondary_peaks),
        f"{prefix}.secondary_height": peaks.secondary_height,
    }


def _state_summary(state: AnnealResult) -> Dict[str, Any]:
    return {
        "occupations": list(state.config.occupations),
        "N": state.config.N,
        "energy": state.energy,
        "method": state.method,
        "seed": state.seed if state.seed is not None else "none",
        "acceptance_rate": state.acceptance_rate,
    }


def _print(values: Dict[str, Any]) -> None:
    for key, value in values.items():
        if isinstance(value, list):
            value = ",".join(format(v, ".6g") if isinstance(v, float) else str(v) for v in value)
        elif isinstance(value, float):
            value = format(value, ".10g")
        print(f"{key} = {value}")


def _emit_correlation(result: CorrelationResult, out: Optional[Path], stem: str) -> Dict[str, Path]:
    summary = {
        **_state_summary(result.ground_state),
        **_peak_summary("trace", result.trace_peaks),
        **_peak_summary("povm", result.povm_peaks),
    }
    _print(summary)
    if out is None:
        return {}
    trace_path, povm_path = result.write(out, stem)
    peaks_path = write_key_values(out / f"{stem}_peaks.txt", summary)
    return {"trace": trace_path, "povm": povm_path, "peaks": peaks_path}


def cmd_ground_state(settings: SimulationSettings, args: argparse.Namespace) -> Dict[str, Path]:
    state = ground_state(settings.lattice_spec(), settings.N, settings.anneal_schedule(), settings.method)
    summary = _state_summary(state)
    _print(summary)
    if args.out is None:
        return {}
    return {"ground_state": write_key_values(args.out / "ground_state.txt", summary)}


def cmd_correlate(settings: SimulationSettings, args: argparse.Namespace) -> Dict[str, Path]:
    spec = settings.lattice_spec()
    if args.occupations:
        result = correlate_occupations(
            parse_occupations(args.occupations), spec, settings.u_grid(), settings.threshold, settings.normalization
        )
    else:
        state = ground_state(spec, settings.N, settings.anneal_schedule(), settings.method)
        result = correlate_state(state, spec, settings.u_grid(), settings.threshold, settings.normalization)
    return _emit_correlation(result, args.out, "correlate")


def cmd_figure1(settings: SimulationSettings, args: argparse.Namespace) -> Dict[str, Path]:
    result = run_figure1(
        settings.lattice_spec(),
        settings.N,
        settings.anneal_schedule(),
        settings.u_grid(),
        settings.threshold,
        settings.method,
        settings.normalization,
    )
    return _emit_correlation(result, args.out, "figure1")


def cmd_sweep(settings: SimulationSettings, args: argparse.Namespace) -> Dict[str, Path]:
    rows = sweep_v2(
        settings.lattice_spec(),
        settings.v2_list,
        settings.N,
        settings.anneal_schedule(),
        settings.u_grid(),
        base_seed=settings.seed,
        threshold=settings.threshold,
        method=settings.method,
        workers=settings.workers,
        normalization=settings.normalization,
    )
    print("V2,secondary_trace,secondary_povm,energy,seed,status")
    for row in rows:
        cells = [row.V2, row.secondary_trace, row.secondary_povm, row.energy]
        text = ",".join("nan" if c is None else format(c, ".10g") for c in cells)
        print(f"{text},{row.seed},{row.status}")
    if args.out is None:
        return {}
    meta = {"M": settings.M, "N": settings.N, "U": settings.U, "method": settings.method, "base_seed": settings.seed}
    return {"sweep": write_sweep_csv(rows, args.out / "sweep.csv", meta)}


def cmd_verify(settings: SimulationSettings, args: argparse.Namespace) -> Dict[str, Path]:
    report = verify(
        settings.level,
        seed=settings.seed,
        samples=settings.mc_samples,
        template=settings.expansion_context(),
        sigma_factor=settings.sigma_factor,
    )
    for line in report.lines():
        print(line)
    if not report.passed:
        raise VerificationError(failed_checks=report.failed_checks)
    return {}


COMMANDS = {
    "ground-state": cmd_ground_state,
    "correlate": cmd_correlate,
    "figure1": cmd_figure1,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def _finish(settings: SimulationSettings, args: argparse.Namespace, artifacts: Dict[str, Path]) -> None:
    if args.out is None:
        return
    write_manifest(args.out, args.command, _parameters(settings), artifacts)
    get_metrics().write(args.out / "metrics.prom")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level or "INFO", args.log_format or "console")
    set_run_id()
    settings: Optional[SimulationSettings] = None
    try:
        settings = resolve_settings(args.config, _overrides(args))
        setup_logging(settings.log_level, settings.log_format)
        logger.info("command started", command=args.command, seed=settings.seed)
        artifacts = COMMANDS[args.command](settings, args)
        _finish(settings, args, artifacts)
    except LatticePovmError as exc:
        if settings is not None and isinstance(exc, VerificationError):
            _finish(settings, args, {})
        logger.error("command failed", **exc.to_dict())
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.exit_code
    except ValidationError as exc:
        logger.error("invalid input", errors=exc.error_count())
        print(f"error: {exc.errors()[0].get('msg')}", file=sys.stderr)
        return 2
    logger.info("command finished", command=args.command)
    return 0


if __name__ == "__main__":
    sys.exit(main())
