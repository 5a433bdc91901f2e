from .bessel import (DEFAULT_CONTROL, Z_MAX, BigI, SeriesControl, SeriesValue, bessel_i, big_i,
                     big_i_direct, big_i_dz, log_bessel_i, log_bessel_i_orders)
from .rs_theory import (Bias, EnergyShiftLaw, FieldWeights, FiniteNuSolution, GroundStateEnergy,
                        MessageLaw, NonintegerCheck, OccurrenceGF, Omega0, RelativeEntropy, Rho0,
                        TheoryPoint, b_coefficient, bias_theory, big_gamma, cavity_message_dist,
                        energy_shift_dist, envelope_residual, field_weights_inf, free_energy,
                        free_energy_at_z, gamma_large_alpha, gs_energy, noninteger_check,
                        noninteger_lhs, occurrence_gf, omega0, planted_field_dist,
                        relative_entropy_per_var, rho0_residual, rho1_correction, solve_finite_nu,
                        solve_rho0, theory_grid, theory_point, tv_distance)

__all__ = [
    'SeriesControl', 'SeriesValue', 'DEFAULT_CONTROL', 'Z_MAX', 'BigI',
    'log_bessel_i', 'log_bessel_i_orders', 'bessel_i', 'big_i', 'big_i_dz', 'big_i_direct',
    'Rho0', 'FieldWeights', 'FiniteNuSolution', 'GroundStateEnergy', 'Omega0', 'RelativeEntropy',
    'Bias', 'OccurrenceGF', 'MessageLaw', 'EnergyShiftLaw', 'NonintegerCheck', 'TheoryPoint',
    'gamma_large_alpha', 'big_gamma', 'rho0_residual', 'solve_rho0', 'field_weights_inf',
    'planted_field_dist', 'tv_distance', 'b_coefficient', 'solve_finite_nu', 'free_energy',
    'free_energy_at_z', 'envelope_residual', 'gs_energy', 'omega0', 'relative_entropy_per_var',
    'bias_theory', 'occurrence_gf', 'cavity_message_dist', 'energy_shift_dist',
    'rho1_correction', 'noninteger_lhs', 'noninteger_check', 'theory_point', 'theory_grid',
]
