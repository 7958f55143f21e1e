"""
Shared fixtures for the lattice-povm test suite.
"""
from typing import Callable

import numpy as np
import pytest

from lattice_povm.correlations import cross_sum
from lattice_povm.metrics import SimulationMetrics
from lattice_povm.models import ExpansionContext, FockConfig


@pytest.fixture
def make_ctx() -> Callable[..., ExpansionContext]:
    """Expansion context with unit mass, time and spacing (Q = 1) for M sites."""

    def _make(M: int, sigma_factor: float = 20.0, envelope: str = "common") -> ExpansionContext:
        return ExpansionContext(sigma=sigma_factor * M, M=M, envelope=envelope)

    return _make


@pytest.fixture
def mutated_povm() -> Callable[[np.ndarray, float], float]:
    """POVM closed form with the cross-sum renormalized by N(N-1) instead of (N+M)(N+M+1)."""

    def _closed_form(k: np.ndarray, u: float) -> float:
        occ = np.asarray(k, dtype=np.int64)
        N = int(occ.sum())
        return float((N - 1) / N * (1.0 + cross_sum(occ + 1, u)[0] / (N * (N - 1))))

    return _closed_form


@pytest.fixture
def metrics() -> SimulationMetrics:
    """Fresh metrics registry, independent of the process-wide instance."""
    return SimulationMetrics()


@pytest.fixture
def fock() -> Callable[..., FockConfig]:
    def _fock(*occupations: int) -> FockConfig:
        return FockConfig.of(occupations)

    return _fock
