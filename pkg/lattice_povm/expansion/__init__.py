"""
Time-of-flight expansion: evolved Wannier functions and density profiles.
"""
from .wannier import (
    dynamical_phase,
    envelope_densities,
    fringe_wavevector,
    relative_phases,
    wannier_evolved,
    wannier_matrix,
)
from .density import (
    coherent_amplitude,
    density_coherent,
    density_coherent_cosine,
    density_fock_povm,
    density_fock_trace,
    density_profile,
)

__all__ = [
    'dynamical_phase',
    'envelope_densities',
    'fringe_wavevector',
    'relative_phases',
    'wannier_evolved',
    'wannier_matrix',
    'coherent_amplitude',
    'density_coherent',
    'density_coherent_cosine',
    'density_fock_povm',
    'density_fock_trace',
    'density_profile',
]
