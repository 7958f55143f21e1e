"""
Prometheus metrics for lattice-povm runs.
"""
from .core import SimulationMetrics, get_metrics

__all__ = [
    "SimulationMetrics",
    "get_metrics",
]
