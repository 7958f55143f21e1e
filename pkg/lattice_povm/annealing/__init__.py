"""
Fixed-N ground-state preparation: simulated annealing plus exact cross-checks.
"""
from .annealer import (
    DEFAULT_ENUMERATION_CAP,
    anneal,
    apply_move,
    energy_delta,
    enumerate_ground_state,
    ground_state,
    initial_configuration,
    insert_ground_state,
    propose_move,
    rng_for_run,
)

__all__ = [
    'DEFAULT_ENUMERATION_CAP',
    'anneal',
    'apply_move',
    'energy_delta',
    'enumerate_ground_state',
    'ground_state',
    'initial_configuration',
    'insert_ground_state',
    'propose_move',
    'rng_for_run',
]
