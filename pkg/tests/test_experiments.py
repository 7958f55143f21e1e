"""
Tests for correlation runs, V2 sweeps, verification and run manifests
"""
import importlib

import numpy as np
import pytest

from lattice_povm.correlations import default_u_grid
from lattice_povm.exceptions import InputError
from lattice_povm.experiments import (
    DEFAULT_V2_LADDER,
    LEVELS,
    MANIFEST_NAME,
    CheckResult,
    VerificationLevel,
    VerificationReport,
    check_completeness,
    check_integrated_oracle,
    correlate_occupations,
    figure1_spec,
    row_seed,
    run_figure1,
    sweep_v2,
    verify,
    write_manifest,
    write_sweep_csv,
)
from lattice_povm.logging import set_run_id
from lattice_povm.metrics import get_metrics
from lattice_povm.models import AnnealSchedule, ExpansionContext, LatticeSpec, PovmNormalization
from lattice_povm.utils import read_table_csv

FAST = AnnealSchedule(stages=150, sweeps_per_stage=10, restarts=4, seed=1)
SMALL_GRID = default_u_grid(512)


def test_balanced_ground_state_has_no_secondary_peaks():
    result = run_figure1(figure1_spec(U=1.0, V2=0.0, M=10), N=20, sched=FAST)
    assert result.ground_state.config.occupations == (2,) * 10
    assert result.trace_peaks.secondary_peaks == []
    assert result.povm_peaks.secondary_peaks == []
    assert len(result.trace_peaks.main_peaks) == 2


def test_correlate_occupations(tmp_path):
    spec = LatticeSpec(M=4, U=1.0, V2=3.5)
    result = correlate_occupations((2, 1, 0, 3), spec, SMALL_GRID, normalization=PovmNormalization.PRINTED)
    assert result.ground_state.method == "given"
    assert result.povm.normalization == PovmNormalization.PRINTED
    trace_path, povm_path = result.write(tmp_path, "small")
    assert trace_path.name == "small_trace.csv"
    meta, columns = read_table_csv(povm_path)
    assert meta["V2"] == "3.5"
    assert meta["method"] == "given"
    assert meta["seed"] == "none"
    np.testing.assert_array_equal(columns["u"], SMALL_GRID)


def test_correlate_occupations_site_mismatch():
    with pytest.raises(InputError):
        correlate_occupations((1, 1, 1), LatticeSpec(M=4), SMALL_GRID)


def test_row_seed():
    seeds = [row_seed(7, i) for i in range(5)]
    assert len(set(seeds)) == 5
    assert all(0 <= s < 2**32 for s in seeds)
    assert seeds == [row_seed(7, i) for i in range(5)]
    assert row_seed(8, 0) != seeds[0]


def test_sweep_keeps_order_and_seeds():
    template = LatticeSpec(M=6, U=1.0)
    rows = sweep_v2(template, [0.0, 1.0, 3.0], N=9, sched=FAST, u_grid=SMALL_GRID, base_seed=5)
    assert [row.V2 for row in rows] == [0.0, 1.0, 3.0]
    assert [row.seed for row in rows] == [row_seed(5, i) for i in range(3)]
    assert all(row.ok for row in rows)
    assert all(row.secondary_trace >= 0 and row.secondary_povm >= 0 for row in rows)


def test_sweep_parallel_matches_serial():
    template = LatticeSpec(M=6, U=1.0)
    kwargs = dict(N=9, sched=FAST, u_grid=SMALL_GRID, base_seed=5)
    serial = sweep_v2(template, [0.0, 1.0, 3.0], workers=1, **kwargs)
    parallel = sweep_v2(template, [0.0, 1.0, 3.0], workers=2, **kwargs)
    assert parallel == serial


def test_sweep_marks_refused_rows_failed():
    template = LatticeSpec(M=130, U=1.0)
    before = get_metrics().value("lattice_povm_sweep_rows_total", status="failed")
    rows = sweep_v2(template, [0.0, 2.0], N=170, u_grid=SMALL_GRID, method="enumeration")
    assert [row.status for row in rows] == ["failed", "failed"]
    assert all("raise the cap" in row.error for row in rows)
    assert rows[0].secondary_trace is None
    assert get_metrics().value("lattice_povm_sweep_rows_total", status="failed") - before == 2


def test_sweep_marks_crashing_rows_failed(monkeypatch):
    figures = importlib.import_module("lattice_povm.experiments.figures")
    real_ground_state = figures.ground_state

    def flaky(spec, N, sched, method):
        if spec.V2 == 1.0:
            raise RuntimeError("solver exploded")
        return real_ground_state(spec, N, sched, method)

    monkeypatch.setattr(figures, "ground_state", flaky)
    rows = sweep_v2(LatticeSpec(M=6, U=1.0), [0.0, 1.0, 3.0], N=9, sched=FAST, u_grid=SMALL_GRID)
    assert [row.status for row in rows] == ["ok", "failed", "ok"]
    assert rows[1].error == "RuntimeError: solver exploded"


def test_sweep_survives_zero_temperature():
    sched = AnnealSchedule(cooling=0.01, stages=400, sweeps_per_stage=2, restarts=1)
    rows = sweep_v2(LatticeSpec(M=4, U=1.0), [0.0, 3.0], N=6, sched=sched, u_grid=SMALL_GRID)
    assert all(row.ok for row in rows)


@pytest.mark.parametrize("v2_list", [[], [2.0, 1.0]])
def test_sweep_rejects_bad_ladders(v2_list):
    with pytest.raises(InputError):
        sweep_v2(LatticeSpec(M=4), v2_list, N=4, sched=FAST, u_grid=SMALL_GRID)


def test_sweep_rejects_zero_workers():
    with pytest.raises(InputError):
        sweep_v2(LatticeSpec(M=4), [0.0], N=4, sched=FAST, u_grid=SMALL_GRID, workers=0)


def test_sweep_csv_is_deterministic(tmp_path):
    template = LatticeSpec(M=5, U=1.0)
    meta = {"M": 5, "N": 7, "base_seed": 3}
    paths = []
    for name in ("first.csv", "second.csv"):
        rows = sweep_v2(template, [0.0, 2.0], N=7, sched=FAST, u_grid=SMALL_GRID, base_seed=3)
        paths.append(write_sweep_csv(rows, tmp_path / name, meta))
    assert paths[0].read_bytes() == paths[1].read_bytes()
    file_meta, columns = read_table_csv(paths[0])
    assert file_meta["rows"] == "2"
    np.testing.assert_array_equal(columns["seed"], [row_seed(3, 0), row_seed(3, 1)])
    np.testing.assert_array_equal(columns["ok"], [1.0, 1.0])


def test_sweep_csv_failed_rows_are_nan(tmp_path):
    rows = sweep_v2(LatticeSpec(M=130), [1.0], N=170, u_grid=SMALL_GRID, method="enumeration")
    _, columns = read_table_csv(write_sweep_csv(rows, tmp_path / "sweep.csv", {}))
    assert np.isnan(columns["secondary_trace"][0])
    assert columns["ok"][0] == 0.0


def test_check_completeness_counts_states():
    result = check_completeness(2, 2)
    assert result.passed
    assert result.detail == "9 states"


def test_check_integrated_oracle():
    assert check_integrated_oracle((2, 1)).passed


def test_report_lines():
    report = VerificationReport(
        level=VerificationLevel.FAST,
        checks=[
            CheckResult(name="a", passed=True, deviation=0.0, tolerance=1.0),
            CheckResult(name="b", passed=False, deviation=5.0, tolerance=3.0, detail="off"),
        ],
    )
    assert not report.passed
    assert report.failed_checks == ["b"]
    lines = report.lines()
    assert lines[0].startswith("PASS a")
    assert lines[1] == "FAIL b: deviation=5 tolerance=3 (off)"
    assert "verification FAILED: b" in lines[-1]


def test_levels():
    fast, full = LEVELS[VerificationLevel.FAST], LEVELS[VerificationLevel.FULL]
    assert fast.samples >= 10_000
    assert full.samples >= fast.samples
    assert (full.max_sites, full.max_atoms) == (4, 6)


def test_verify_fast_passes():
    before = get_metrics().value("lattice_povm_verification_checks_total", outcome="passed")
    report = verify("fast", seed=0)
    assert report.passed, "\n".join(report.lines())
    assert len(report.checks) == 6
    after = get_metrics().value("lattice_povm_verification_checks_total", outcome="passed")
    assert after - before == 6


@pytest.fixture
def stub_checks(monkeypatch):
    """Replace every check with a recorder that passes; returns the recorded calls."""
    module = importlib.import_module("lattice_povm.experiments.verify")
    calls = {}

    def recorder(name):
        def check(*args, **kwargs):
            calls[name] = (args, kwargs)
            return CheckResult(name=name, passed=True, deviation=0.0, tolerance=1.0)

        return check

    for name in (
        "check_completeness",
        "check_annealer",
        "check_integrated_oracle",
        "check_identity",
        "check_povm_density",
        "check_povm_correlation",
    ):
        monkeypatch.setattr(module, name, recorder(name))
    return module, calls


def test_verify_reports_crashing_check(stub_checks, monkeypatch):
    module, _ = stub_checks

    def crash(*args, **kwargs):
        raise ZeroDivisionError("float division by zero")

    monkeypatch.setattr(module, "check_annealer", crash)
    report = verify("fast", seed=0)
    assert not report.passed
    assert report.failed_checks == ["annealer_vs_exhaustive"]
    failed = report.checks[1]
    assert failed.deviation == float("inf")
    assert failed.detail == "ZeroDivisionError: float division by zero"
    assert len(report.checks) == 6


def test_verify_uses_samples_and_template(stub_checks):
    _, calls = stub_checks
    template = ExpansionContext(mass=2.0, t=3.0, sigma=40.0, M=2, envelope="site_centered")
    assert verify("fast", seed=5, samples=50_000, template=template, sigma_factor=12.0).passed
    assert calls["check_identity"][0][1] == 50_000
    assert calls["check_povm_density"][0][1] == 50_000
    assert calls["check_povm_correlation"][1]["template"] is template
    assert calls["check_integrated_oracle"][1] == {"sigma_factor": 12.0, "template": template}


def test_verify_defaults_to_level_samples(stub_checks):
    _, calls = stub_checks
    verify("fast", seed=0)
    assert calls["check_identity"][0][1] == LEVELS[VerificationLevel.FAST].samples


def test_integrated_oracle_takes_template_fields():
    template = ExpansionContext(mass=1.5, t=1.0, sigma=40.0, M=2)
    assert check_integrated_oracle((2, 1), template=template).passed


def test_manifest(tmp_path):
    set_run_id("abc123def456")
    path = write_manifest(
        tmp_path,
        "sweep",
        {"M": 4, "seed": None, "v2_list": [0.0, 1.5]},
        {"sweep": tmp_path / "sweep.csv"},
    )
    assert path.name == MANIFEST_NAME
    lines = path.read_text().splitlines()
    assert lines[0] == "command = sweep"
    assert "version = 0.1.0" in lines
    assert "run_id = abc123def456" in lines
    assert "param.M = 4" in lines
    assert "param.v2_list = 0,1.5" in lines
    assert "artifact.sweep = sweep.csv" in lines
    assert not any(line.startswith("param.seed") for line in lines)


@pytest.mark.slow
def test_reference_run_properties():
    """Reference lattice: main peaks at 2*pi*p, curves near 1 elsewhere, POVM satellites lower."""
    result = run_figure1()
    assert result.ground_state.config.N == 170
    for curve, peaks in ((result.trace, result.trace_peaks), (result.povm, result.povm_peaks)):
        positions = [u for u, _ in peaks.main_peaks]
        for p in (1, 2):
            assert any(abs(u - 2 * np.pi * p) <= curve.step for u in positions)
        assert np.mean(np.abs(curve.values - 1.0) < 0.05) >= 0.9
    assert result.trace_peaks.secondary_height > 0
    assert result.povm_peaks.secondary_height < result.trace_peaks.secondary_height


@pytest.mark.slow
def test_secondary_peak_trend_across_v2():
    rows = sweep_v2(figure1_spec(), DEFAULT_V2_LADDER, base_seed=0, workers=2)
    assert all(row.ok for row in rows)
    trace = [row.secondary_trace for row in rows]
    for lower, higher in zip(trace, trace[1:]):
        assert higher >= 0.9 * lower
    for row in rows:
        assert row.secondary_povm <= row.secondary_trace
