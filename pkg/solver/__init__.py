from .decision import SAT, UNSAT_DECLARED, Decision, verify_witness, wp_decide
from .residual import ResidualResult, residual_optimize, simplify, split_components
from .warning_propagation import (SCHEDULES, WpOutcome, WpParams, WpState, default_cutoff,
                                  local_fields, partial_from_fields, wp_init, wp_run, wp_sweep)

__all__ = [
    'WpParams', 'WpState', 'WpOutcome', 'SCHEDULES', 'default_cutoff',
    'wp_init', 'wp_sweep', 'wp_run', 'local_fields', 'partial_from_fields',
    'ResidualResult', 'residual_optimize', 'simplify', 'split_components',
    'Decision', 'SAT', 'UNSAT_DECLARED', 'wp_decide', 'verify_witness',
]
