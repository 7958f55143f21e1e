"""
Prometheus metrics for simulation runs.

Batch runs have no scrape endpoint, so the registry is private and written
out in text exposition format next to the run outputs.
"""
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from prometheus_client import CollectorRegistry, Counter, Histogram, write_to_textfile

from ..logging import get_logger

logger = get_logger(__name__)

DURATION_BUCKETS = (0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 10.0, 30.0, 60.0, 300.0)


class SimulationMetrics:
    """Registry of the counters and histograms a run updates."""

    def __init__(self, registry: Optional[CollectorRegistry] = None):
        self.registry = registry or CollectorRegistry()
        self._metrics: Dict[str, Any] = {}

        self.anneal_runs = self.create_counter(
            "lattice_povm_anneal_runs_total",
            "Ground-state searches completed",
            ["method"],
        )
        self.anneal_moves = self.create_counter(
            "lattice_povm_anneal_moves_total",
            "Metropolis moves by outcome",
            ["outcome"],
        )
        self.anneal_duration = self.create_histogram(
            "lattice_povm_anneal_duration_seconds",
            "Wall time of one ground-state search",
            ["method"],
        )
        self.mc_samples = self.create_counter(
            "lattice_povm_mc_samples_total",
            "Coherent-state samples drawn by the POVM oracle",
            ["observable"],
        )
        self.sweep_rows = self.create_counter(
            "lattice_povm_sweep_rows_total",
            "Sweep rows by status",
            ["status"],
        )
        self.checks = self.create_counter(
            "lattice_povm_verification_checks_total",
            "Verification checks by outcome",
            ["outcome"],
        )

    def create_counter(self, name: str, description: str, labels: Optional[List[str]] = None) -> Counter:
        """Create or get existing counter metric."""
        if name not in self._metrics:
            self._metrics[name] = Counter(
                name, description, labelnames=labels or [], registry=self.registry
            )
        return self._metrics[name]

    def create_histogram(self, name: str, description: str, labels: Optional[List[str]] = None) -> Histogram:
        """Create or get existing histogram metric."""
        if name not in self._metrics:
            self._metrics[name] = Histogram(
                name,
                description,
                labelnames=labels or [],
                buckets=DURATION_BUCKETS,
                registry=self.registry,
            )
        return self._metrics[name]

    def record_anneal(self, method: str, accepted: int, proposed: int, duration: float) -> None:
        self.anneal_runs.labels(method=method).inc()
        self.anneal_moves.labels(outcome="accepted").inc(accepted)
        self.anneal_moves.labels(outcome="rejected").inc(proposed - accepted)
        self.anneal_duration.labels(method=method).observe(duration)

    def record_samples(self, observable: str, samples: int) -> None:
        self.mc_samples.labels(observable=observable).inc(samples)

    def record_sweep_row(self, status: str) -> None:
        self.sweep_rows.labels(status=status).inc()

    def record_check(self, passed: bool) -> None:
        self.checks.labels(outcome="passed" if passed else "failed").inc()

    def value(self, name: str, **labels: str) -> float:
        """Current sample value, 0 when absent."""
        result = self.registry.get_sample_value(name, labels or None)
        return float(result) if result is not None else 0.0

    def write(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        write_to_textfile(str(path), self.registry)
        logger.debug("metrics written", path=str(path))
        return path


@lru_cache()
def get_metrics() -> SimulationMetrics:
    """Process-wide metrics instance."""
    return SimulationMetrics()
