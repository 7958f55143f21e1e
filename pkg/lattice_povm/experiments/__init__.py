"""
Experiments: peak detection, correlation runs and V2 sweeps on annealed
ground states, self-verification and run manifests.
"""
from .peaks import DEFAULT_THRESHOLD, check_uniform, classify_peak, find_peaks
from .figures import (
    DEFAULT_V2_LADDER,
    FIGURE1_M,
    FIGURE1_N,
    FIGURE1_V2,
    CorrelationResult,
    correlate_occupations,
    correlate_state,
    figure1_spec,
    row_seed,
    run_figure1,
    sweep_v2,
    write_sweep_csv,
)
from .verify import (
    LEVELS,
    CheckResult,
    LevelBounds,
    VerificationLevel,
    VerificationReport,
    check_annealer,
    check_completeness,
    check_identity,
    check_integrated_oracle,
    check_povm_correlation,
    check_povm_density,
    verify,
)
from .artifacts import MANIFEST_NAME, write_manifest

__all__ = [
    'DEFAULT_THRESHOLD',
    'check_uniform',
    'classify_peak',
    'find_peaks',
    'DEFAULT_V2_LADDER',
    'FIGURE1_M',
    'FIGURE1_N',
    'FIGURE1_V2',
    'CorrelationResult',
    'correlate_occupations',
    'correlate_state',
    'figure1_spec',
    'row_seed',
    'run_figure1',
    'sweep_v2',
    'write_sweep_csv',
    'LEVELS',
    'CheckResult',
    'LevelBounds',
    'VerificationLevel',
    'VerificationReport',
    'check_annealer',
    'check_completeness',
    'check_identity',
    'check_integrated_oracle',
    'check_povm_correlation',
    'check_povm_density',
    'verify',
    'MANIFEST_NAME',
    'write_manifest',
]
