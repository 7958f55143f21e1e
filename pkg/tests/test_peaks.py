"""
Tests for main/secondary peak detection
"""
import numpy as np
import pytest

from lattice_povm.correlations import correlation_curve, default_u_grid
from lattice_povm.exceptions import InputError
from lattice_povm.experiments import check_uniform, classify_peak, find_peaks
from lattice_povm.models import CorrelationCurve, Prescription


def _curve(u: np.ndarray, values: np.ndarray, M: int = 4) -> CorrelationCurve:
    return CorrelationCurve(u_grid=u, values=values, prescription=Prescription.TRACE, M=M, N=8)


def test_flat_curve_has_no_peaks():
    u = default_u_grid(1024)
    report = find_peaks(_curve(u, np.ones_like(u)))
    assert report.main_peaks == []
    assert report.secondary_peaks == []
    assert report.secondary_height == 0.0
    assert report.grid_points == 1024


def test_classify_peak():
    assert classify_peak(2 * np.pi + 0.1, 10)
    assert classify_peak(4 * np.pi - 0.3, 10)
    assert not classify_peak(2 * np.pi + 0.4, 10)
    assert not classify_peak(0.1, 10)
    assert not classify_peak(np.pi, 2)


def test_synthetic_curve():
    u = np.linspace(0.01, 4 * np.pi, 4000)
    values = (
        1.0
        + np.exp(-((u - 2 * np.pi) ** 2) / 0.01)
        + 0.1 * np.exp(-((u - np.pi) ** 2) / 0.01)
        + 5e-4 * np.exp(-((u - 3 * np.pi) ** 2) / 0.01)
    )
    report = find_peaks(_curve(u, values), threshold=1e-3)
    assert len(report.main_peaks) == 1
    assert len(report.secondary_peaks) == 1
    main_u, main_h = report.main_peaks[0]
    secondary_u, secondary_h = report.secondary_peaks[0]
    step = u[1] - u[0]
    assert abs(main_u - 2 * np.pi) <= step
    assert main_h == pytest.approx(1.0, abs=1e-3)
    assert abs(secondary_u - np.pi) <= step
    assert report.secondary_height == pytest.approx(0.1, abs=1e-3)


def test_threshold_filters_small_bumps():
    u = np.linspace(0.01, 4 * np.pi, 4000)
    values = 1.0 + 5e-4 * np.exp(-((u - np.pi) ** 2) / 0.01)
    assert find_peaks(_curve(u, values), threshold=1e-3).secondary_peaks == []
    assert len(find_peaks(_curve(u, values), threshold=1e-4).secondary_peaks) == 1


def test_plateau_is_not_a_strict_maximum():
    u = np.linspace(0.1, 2.0, 20)
    values = np.ones(20)
    values[8:11] = 1.5
    assert find_peaks(_curve(u, values)).secondary_peaks == []


def test_endpoints_are_never_peaks():
    u = np.linspace(0.1, 2.0, 20)
    values = np.linspace(2.0, 1.0, 20)
    assert find_peaks(_curve(u, values)).secondary_peaks == []


def test_balanced_filling_has_only_main_peaks():
    u = default_u_grid(4096)
    curve = correlation_curve(np.full(10, 2), u, Prescription.TRACE)
    report = find_peaks(curve)
    assert report.secondary_peaks == []
    assert len(report.main_peaks) == 2
    for p, (position, _) in enumerate(report.main_peaks, start=1):
        assert abs(position - 2 * np.pi * p) <= curve.step


def test_rejects_non_uniform_grid():
    u = np.sort(np.random.default_rng(1).uniform(0.1, 10.0, 200))
    with pytest.raises(InputError):
        find_peaks(_curve(u, np.ones_like(u)))
    with pytest.raises(InputError):
        check_uniform(np.array([0.1, 0.2]))


def test_rejects_negative_threshold():
    u = default_u_grid(64)
    with pytest.raises(InputError):
        find_peaks(_curve(u, np.ones_like(u)), threshold=-1e-3)


def test_check_uniform_returns_step():
    assert check_uniform(np.linspace(0.0, 1.0, 11)) == pytest.approx(0.1)
