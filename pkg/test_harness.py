#!/usr/bin/env python3
"""
Experiment harness tests. The quick tests run reduced ensembles; the
full-size runs are marked slow.
"""

import math

import pytest

from formula import energy
from generators import GenConfig, derive_seed, gen_planted, gen_uniform
from experiments import (SweepConfig, aggregate, bias_statistics, degree_statistics,
                         field_statistics, finite_energy_sweep, instance_seed, oracle_validation,
                         psat_rate, run_trial)
from solver import WpParams, verify_witness, wp_decide
from theory import omega0, solve_rho0


def fake_run(converged, iterations=5, unassigned=2, agree=1.0, final_energy=0, verdict="SAT"):
    return {"converged": converged, "iterations": iterations, "unassigned": unassigned,
            "agree_with_root": agree, "final_energy": final_energy, "verdict": verdict}


# ---------------------------------------------------------------------------
# finite-energy sweep
# ---------------------------------------------------------------------------

def test_sweep_config_needs_trials():
    with pytest.raises(ValueError):
        SweepConfig(trials=0)
    assert SweepConfig().to_dict()["e_list"] == [0, 5, 10, 15, 20, 30, 50, 60]


def test_aggregate_means_over_converged_runs():
    runs = [fake_run(True, iterations=4, final_energy=3, verdict="UNSAT_DECLARED"),
            fake_run(True, iterations=6, final_energy=7, verdict="UNSAT_DECLARED"),
            fake_run(False, iterations=11, final_energy=9, verdict="UNSAT_DECLARED")]
    record = aggregate(5, runs)
    assert record.trials == 3 and record.n_converged == 2
    assert record.convergence_rate == pytest.approx(2 / 3)
    assert record.mean_iterations == pytest.approx(5.0)
    assert record.mean_final_energy_gap == pytest.approx(2.0)
    assert record.sat_rate == 0.0


def test_aggregate_without_convergence_reports_empty_means():
    record = aggregate(60, [fake_run(False), fake_run(False)])
    assert record.convergence_rate == 0.0
    assert math.isnan(record.mean_iterations)
    row = record.to_row()
    assert row["mean_iterations"] is None
    assert "runs" not in row


def test_instance_seed_depends_on_energy_and_trial():
    seeds = {instance_seed(1, e, t) for e in (0, 5, 10) for t in range(20)}
    assert len(seeds) == 60
    assert instance_seed(1, 5, 3) == derive_seed(derive_seed(1, 5), 3)


def test_run_trial_record():
    cfg = SweepConfig(n_vars=50, alpha=6.0, e_list=(2,), trials=1)
    record = run_trial(cfg, 2, 0)
    assert record["E"] == 2 and record["trial"] == 0
    assert record["instance_seed"] == instance_seed(cfg.master_seed, 2, 0)
    assert record["final_energy"] >= 0


def test_sweep_is_independent_of_jobs():
    cfg = SweepConfig(n_vars=60, alpha=8.0, e_list=(0, 5), trials=4, master_seed=7)
    serial = [r.to_row() for r in finite_energy_sweep(cfg, jobs=1)]
    parallel = [r.to_row() for r in finite_energy_sweep(cfg, jobs=2)]
    assert serial == parallel
    assert [r["E"] for r in serial] == [0, 5]


@pytest.mark.slow
def test_planted_zero_energy_sweep():
    cfg = SweepConfig(n_vars=200, alpha=10.0, e_list=(0, 5), trials=100, master_seed=1)
    zero, five = finite_energy_sweep(cfg)
    for record in (zero, five):
        assert record.convergence_rate >= 0.9
        assert 3 <= record.mean_iterations <= 10
        assert 0 <= record.mean_unassigned <= 8
        assert record.mean_agree_with_root >= 0.97
    converged = [r for r in zero.runs if r["converged"]]
    assert all(r["final_energy"] == 0 for r in converged)


@pytest.mark.slow
def test_planted_finite_energy_sweep():
    cfg = SweepConfig(n_vars=200, alpha=10.0, e_list=(20, 60), trials=100, master_seed=1)
    twenty, sixty = finite_energy_sweep(cfg)
    assert twenty.mean_final_energy_gap <= 5
    assert sixty.convergence_rate <= 0.2


# ---------------------------------------------------------------------------
# instance statistics
# ---------------------------------------------------------------------------

def test_field_statistics_shape():
    stats = field_statistics(3, 10.0, 300, 2, seed=4)
    assert stats.n_samples == 600
    assert sum(stats.histogram.values()) == pytest.approx(1.0)
    assert 0.0 <= stats.zero_fraction <= 1.0
    assert stats.expected_zero_fraction == pytest.approx(math.exp(-30 / 7))
    assert set(stats.to_dict()["histogram"]) == {str(n) for n in stats.histogram}


@pytest.mark.slow
def test_planted_field_histogram_matches_law():
    stats = field_statistics(3, 10.0, 2000, 20, seed=1)
    assert stats.tv_distance <= 0.05
    assert abs(stats.zero_fraction - stats.expected_zero_fraction) <= 3 * stats.zero_fraction_se


def test_bias_statistics_sign():
    stats = bias_statistics(3, 10.0, 500, 2, seed=2)
    assert stats.true_mean > 0 > stats.false_mean
    assert stats.theory == pytest.approx(1 / 7)
    assert stats.n_true + stats.n_false <= 1000


@pytest.mark.slow
def test_planted_occurrence_bias():
    stats = bias_statistics(3, 10.0, 2000, 20, seed=1)
    assert stats.true_mean == pytest.approx(1 / 7, abs=0.02)
    assert stats.false_mean == pytest.approx(-1 / 7, abs=0.02)


def test_degree_law_is_binomial():
    stats = degree_statistics(3, 4.0, 1000, 10, seed=3)
    assert stats.n_samples == 10_000
    assert stats.mean_degree == pytest.approx(stats.expected_mean, rel=1e-9)
    assert stats.tv_distance <= 0.05


def test_psat_rate_below_threshold():
    rate = psat_rate(3, 2.0, 10, 200, seed=5, chunk=50)
    assert rate.draws == 200
    assert rate.rate > 0.9
    assert rate.log_rate_per_var == pytest.approx(math.log(rate.rate) / 10)
    assert rate.omega0 == pytest.approx(omega0(3, 2.0).exact)
    again = psat_rate(3, 2.0, 10, 200, seed=5, jobs=2, chunk=50)
    assert again.accepted == rate.accepted


@pytest.mark.slow
def test_psat_rate_tracks_omega0():
    rate = psat_rate(3, 10.0, 12, 200_000, seed=1)
    assert rate.accepted > 0
    assert abs(rate.log_rate_per_var - rate.omega0) <= 0.15


# ---------------------------------------------------------------------------
# constructiveness and oracle agreement
# ---------------------------------------------------------------------------

def test_oracle_validation_small():
    report = oracle_validation(seed=3, n_instances=12, sat_samples=2)
    assert report.ok, report.failures
    assert report.n_instances == 12
    assert report.constructiveness_violations == 0
    assert report.sat_samples <= 2
    assert report.sat_zero_theory == pytest.approx(solve_rho0(3, 10.0).rho0)
    assert 0 < report.sat_zero_theory < 0.05


def test_sat_verdicts_are_constructive():
    params = WpParams(restarts=1)
    for i in range(60):
        seed = derive_seed(2024, i)
        n = 10 + (i * 7) % 90
        alpha = 2.0 + (i % 11)
        cfg = GenConfig(n, 3, alpha=alpha, seed=seed)
        f = gen_planted(cfg).formula if i % 2 else gen_uniform(cfg)
        decision = wp_decide(f, seed, params)
        assert verify_witness(f, decision)
        if decision.is_sat:
            assert energy(f, decision.witness) == 0


@pytest.mark.slow
def test_sat_verdicts_are_constructive_at_scale():
    for i in range(10_000):
        seed = derive_seed(99, i)
        n = 10 + seed % 191
        alpha = 2.0 + (seed >> 8) % 1001 / 100.0
        cfg = GenConfig(n, 3, alpha=alpha, seed=seed)
        f = gen_planted(cfg).formula if i % 2 else gen_uniform(cfg)
        decision = wp_decide(f, seed)
        assert verify_witness(f, decision)


@pytest.mark.slow
def test_oracle_validation_full():
    report = oracle_validation(seed=1, n_instances=500, sat_samples=20)
    assert report.ok, report.failures[:5]
    assert report.energy_violations == 0 and report.equality_violations == 0
    # satisfiable formulas at alpha = 10 are nearly frozen
    assert report.sat_zero_fraction is None or report.sat_zero_fraction < 0.1
