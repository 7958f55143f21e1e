"""
Core lattice model: on-site energies, Fock-state energies and state overlaps.
"""
from .energies import as_occupations, fock_energy, site_energies
from .fock_space import composition_batches, composition_count, iter_compositions
from .overlaps import (
    coherent_overlap,
    coherent_state_weight,
    fock_coherent_overlap,
    log_multinomial,
    log_povm_weight_array,
    povm_weight,
)

__all__ = [
    'as_occupations',
    'fock_energy',
    'site_energies',
    'composition_batches',
    'composition_count',
    'iter_compositions',
    'coherent_overlap',
    'coherent_state_weight',
    'fock_coherent_overlap',
    'log_multinomial',
    'log_povm_weight_array',
    'povm_weight',
]
