"""
lattice-povm

Fock-state ground states of a bichromatic optical lattice and the density
correlations of the expanded cloud, computed with the standard trace
average and with the coherent-state POVM.
"""

__version__ = "0.1.0"

from .annealing import anneal, ground_state
from .config import SimulationSettings, get_settings
from .correlations import corr_closed_povm, corr_closed_trace, povm_mc_oracle
from .models import AnnealSchedule, CoherentSpec, ExpansionContext, FockConfig, LatticeSpec

__all__ = [
    "anneal",
    "ground_state",
    "SimulationSettings",
    "get_settings",
    "corr_closed_povm",
    "corr_closed_trace",
    "povm_mc_oracle",
    "AnnealSchedule",
    "CoherentSpec",
    "ExpansionContext",
    "FockConfig",
    "LatticeSpec",
]
