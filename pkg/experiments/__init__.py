from .harness import (VALIDATION_ALPHAS, BiasStats, DegreeStats, FieldStats, PsatRate,
                      SweepConfig, SweepRecord, ValidationReport, aggregate, bias_statistics,
                      degree_statistics, field_statistics, finite_energy_sweep, instance_seed,
                      oracle_validation, psat_rate, run_trial)

__all__ = [
    'SweepConfig', 'SweepRecord', 'instance_seed', 'run_trial', 'aggregate', 'finite_energy_sweep',
    'FieldStats', 'field_statistics', 'BiasStats', 'bias_statistics',
    'DegreeStats', 'degree_statistics', 'PsatRate', 'psat_rate',
    'VALIDATION_ALPHAS', 'ValidationReport', 'oracle_validation',
]
