"""
Main and secondary maxima of correlation curves.

Heights are reported above the uncorrelated baseline 1. A maximum within
pi/M of u = 2*pi*p (p >= 1) is a main peak, every other one is secondary.
"""
from typing import List, Tuple

import numpy as np
from scipy.signal import find_peaks as _local_maxima

from ..exceptions import InputError
from ..models import CorrelationCurve, PeakReport

DEFAULT_THRESHOLD = 1e-3
_GRID_RTOL = 1e-9


def check_uniform(u: np.ndarray) -> float:
    """Grid step of a uniform grid.

    Raises:
        InputError: if the spacing varies or the grid has fewer than 3 points
    """
    u = np.asarray(u, dtype=float)
    if u.size < 3:
        raise InputError("peak detection needs at least 3 grid points", field="u_grid")
    steps = np.diff(u)
    step = float(steps.mean())
    if step <= 0 or not np.allclose(steps, step, rtol=_GRID_RTOL, atol=_GRID_RTOL * abs(u[-1])):
        raise InputError("peak detection needs a uniform ascending u grid", field="u_grid")
    return step


def classify_peak(u: float, M: int) -> bool:
    """True for a main peak: |u - 2*pi*p| < pi/M with p >= 1."""
    p = round(u / (2.0 * np.pi))
    return p >= 1 and abs(u - 2.0 * np.pi * p) < np.pi / M


def find_peaks(curve: CorrelationCurve, threshold: float = DEFAULT_THRESHOLD) -> PeakReport:
    """
    Interior grid points strictly above both neighbours with value - 1 > threshold.

    Raises:
        InputError: for a non-uniform grid or a negative threshold
    """
    if threshold < 0:
        raise InputError("threshold must be non-negative", field="threshold")
    check_uniform(curve.u_grid)
    values = np.asarray(curve.values, dtype=float)
    # scipy reports the middle of flat plateaus; those are not strict maxima
    candidates, _ = _local_maxima(values, height=1.0 + threshold)

    main: List[Tuple[float, float]] = []
    secondary: List[Tuple[float, float]] = []
    for i in candidates:
        if not (values[i] > values[i - 1] and values[i] > values[i + 1]):
            continue
        height = float(values[i] - 1.0)
        if height <= threshold:
            continue
        u = float(curve.u_grid[i])
        (main if classify_peak(u, curve.M) else secondary).append((u, height))

    return PeakReport(
        main_peaks=main,
        secondary_peaks=secondary,
        threshold=threshold,
        grid_points=len(curve.u_grid),
    )
