"""
Integrated density-density correlations: closed forms, brute-force oracles
and the Monte Carlo POVM estimator.
"""
from .closed_form import (
    corr_balanced,
    corr_closed_povm,
    corr_closed_trace,
    correlation_curve,
    cross_sum,
    cross_sum_fft,
    cross_sum_pairwise,
    default_u_grid,
    main_peak_value,
    povm_denominator,
    sine_ratio,
)
from .oracles import (
    ORACLE_MAX_ATOMS,
    ORACLE_MAX_SITES,
    annihilate,
    barycenter_grid,
    completeness_residual,
    dirichlet_log_integral,
    integrated_oracle_trace,
    one_point_fock_oracle,
    two_point_fock_oracle,
)
from .montecarlo import (
    MC_MAX_ATOMS,
    MC_MAX_SITES,
    MC_MIN_SAMPLES,
    Observable,
    pool_estimates,
    povm_mc_oracle,
    run_streams,
    sample_coherent_parameters,
)

__all__ = [
    'corr_balanced',
    'corr_closed_povm',
    'corr_closed_trace',
    'correlation_curve',
    'cross_sum',
    'cross_sum_fft',
    'cross_sum_pairwise',
    'default_u_grid',
    'main_peak_value',
    'povm_denominator',
    'sine_ratio',
    'ORACLE_MAX_ATOMS',
    'ORACLE_MAX_SITES',
    'annihilate',
    'barycenter_grid',
    'completeness_residual',
    'dirichlet_log_integral',
    'integrated_oracle_trace',
    'one_point_fock_oracle',
    'two_point_fock_oracle',
    'MC_MAX_ATOMS',
    'MC_MAX_SITES',
    'MC_MIN_SAMPLES',
    'Observable',
    'pool_estimates',
    'povm_mc_oracle',
    'run_streams',
    'sample_coherent_parameters',
]
