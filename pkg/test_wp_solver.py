#!/usr/bin/env python3
"""
Warning Propagation, residual completion and decision tests.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from formula import FALSE, TRUE, UNSET, Assignment, ContractError, Formula, energy
from generators import GenConfig, derive_seed, gen_planted, gen_uniform
from oracle import enumerate_ground_truth
from solver import (SAT, UNSAT_DECLARED, WpParams, default_cutoff, local_fields,
                    partial_from_fields, residual_optimize, simplify, split_components,
                    verify_witness, wp_decide, wp_init, wp_run, wp_sweep)
from theory import gamma_large_alpha


# ---------------------------------------------------------------------------
# parameters
# ---------------------------------------------------------------------------

def test_default_cutoff():
    assert default_cutoff(1) == 10
    assert default_cutoff(200) == 11
    assert default_cutoff(1000) == 14
    assert WpParams().cutoff(1000) == 14
    assert WpParams(max_iters=3).cutoff(1000) == 3


def test_params_validation():
    with pytest.raises(ContractError):
        WpParams(schedule="lazy")
    with pytest.raises(ContractError):
        WpParams(max_iters=0)
    with pytest.raises(ContractError):
        WpParams(restarts=-1)


def test_params_from_dict_ignores_unknown_keys():
    params = WpParams.from_dict({"restarts": 2, "schedule": "random-async", "color": "blue"})
    assert params.restarts == 2 and params.schedule == "random-async"


# ---------------------------------------------------------------------------
# warning propagation
# ---------------------------------------------------------------------------

def test_unit_clauses_always_warn():
    f = Formula.from_signed(3, [[1], [-2]], k=1)
    out = wp_run(f, seed=5)
    assert out.converged
    assert out.iterations <= 2
    assert out.partial.values.tolist() == [TRUE, FALSE, UNSET]
    assert out.local_fields.tolist() == [1, -1, 0]


def test_single_clause_sends_no_warning():
    f = Formula.from_signed(3, [[1, 2, 3]])
    out = wp_run(f, seed=1)
    assert out.converged
    assert out.state.warnings.tolist() == [[0, 0, 0]]
    assert out.n_unassigned == 3


def test_empty_formula_converges_without_sweeps():
    out = wp_run(Formula.empty(4, 3), seed=0)
    assert out.converged and out.iterations == 0
    assert out.n_assigned == 0


def test_wp_run_is_deterministic():
    f = gen_uniform(GenConfig(80, 3, alpha=4.0, seed=12))
    for schedule in ("sync", "random-async"):
        a = wp_run(f, 99, schedule=schedule)
        b = wp_run(f, 99, schedule=schedule)
        assert a.iterations == b.iterations
        assert np.array_equal(a.state.warnings, b.state.warnings)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**63), schedule=st.sampled_from(["sync", "random-async"]))
def test_converged_warnings_are_a_fixed_point(seed, schedule):
    inst = gen_planted(GenConfig(60, 3, alpha=8.0, seed=seed, distribution="planted"))
    out = wp_run(inst.formula, seed, max_iters=50, schedule=schedule)
    assert out.iterations <= 50
    if out.converged:
        again = wp_sweep(inst.formula, out.state, "sync")
        assert again.changed == 0
    else:
        assert out.iterations == 50
    assert np.array_equal(out.local_fields, local_fields(inst.formula, out.state.warnings))
    assert out.partial == partial_from_fields(out.local_fields)


def test_cutoff_bounds_iterations():
    f = gen_uniform(GenConfig(100, 3, alpha=4.2, seed=3))
    out = wp_run(f, seed=7, max_iters=1)
    assert out.iterations == 1


def test_sweep_checks_inputs():
    f = gen_uniform(GenConfig(10, 3, n_clauses=5, seed=0))
    state = wp_init(f, 0)
    with pytest.raises(ContractError):
        wp_sweep(f, state, "random-async", rng=None)
    other = gen_uniform(GenConfig(10, 3, n_clauses=6, seed=0))
    with pytest.raises(ContractError):
        wp_sweep(other, state)


def test_planted_fields_follow_the_root(make_planted):
    inst = make_planted(300, 10.0, seed=4)
    out = wp_run(inst.formula, seed=1)
    assigned = out.partial.assigned_mask
    assert assigned.mean() > 0.8
    agree = (out.partial.values[assigned] == inst.root.values[assigned]).mean()
    assert agree > 0.95


def test_planted_local_fields_scale_with_gamma(make_planted):
    gamma = gamma_large_alpha(3, 10.0)
    magnitudes, agreement = [], []
    for i in range(50):
        inst = make_planted(200, 10.0, seed=derive_seed(77, i))
        out = wp_run(inst.formula, seed=i)
        if not out.converged:
            continue
        assigned = out.partial.assigned_mask
        magnitudes.append(np.abs(out.local_fields[assigned]))
        agreement.append(out.partial.values[assigned] == inst.root.values[assigned])
    assert len(magnitudes) >= 40
    mean_abs = np.concatenate(magnitudes).mean()
    assert gamma / 2 <= mean_abs <= 2 * gamma
    assert np.concatenate(agreement).mean() >= 0.97


# ---------------------------------------------------------------------------
# residual completion
# ---------------------------------------------------------------------------

@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**63), n=st.integers(3, 12), alpha=st.floats(0.5, 8.0))
def test_unassigned_completion_reaches_ground_energy(seed, n, alpha):
    f = gen_uniform(GenConfig(n, 3, alpha=alpha, seed=seed))
    result = residual_optimize(f, Assignment.unset(n), seed=seed)
    assert result.energy == enumerate_ground_truth(f, optima_cap=0).e0
    assert result.assignment.is_total


def test_completion_keeps_assigned_values():
    f = gen_uniform(GenConfig(20, 3, alpha=3.0, seed=8))
    values = np.full(20, UNSET, dtype=np.int8)
    values[:5] = [1, 0, 1, 1, 0]
    result = residual_optimize(f, Assignment(values), seed=0)
    assert result.assignment.values[:5].tolist() == [1, 0, 1, 1, 0]
    assert result.energy == energy(f, result.assignment)


def test_simplify_drops_satisfied_clauses():
    f = Formula.from_signed(5, [[1, 2, 3], [-1, 4, 5], [-1, -2, 3]])
    partial = Assignment([TRUE, TRUE, UNSET, UNSET, UNSET])
    rows, free_slots, free_vars, n_violated = simplify(f, partial)
    assert rows.tolist() == [1, 2]
    assert free_slots.tolist() == [[False, True, True], [False, False, True]]
    assert free_vars.tolist() == [2, 3, 4]
    assert n_violated == 0
    comps = split_components(f, rows, free_slots, free_vars)
    assert sorted(c.variables.tolist() for c in comps) == [[2], [3, 4]]


def test_simplify_counts_clauses_violated_by_the_partial():
    f = Formula.from_signed(3, [[1, 2, 3], [-1, 2, 3]])
    _, _, _, n_violated = simplify(f, Assignment([FALSE, FALSE, FALSE]))
    assert n_violated == 1


def test_unconstrained_variables_default_to_false():
    f = Formula.from_signed(5, [[1, 2, 3]])
    result = residual_optimize(f, Assignment([TRUE, UNSET, UNSET, UNSET, UNSET]))
    assert result.residual_size == 0
    assert result.assignment.values.tolist() == [1, 0, 0, 0, 0]


def test_greedy_descent_on_large_component():
    f = gen_uniform(GenConfig(40, 3, alpha=2.0, seed=6))
    result = residual_optimize(f, Assignment.unset(40), seed=3, cap=0)
    assert result.residual_size > 0
    assert result.energy == energy(f, result.assignment)
    # far below threshold greedy descent finds a solution
    assert result.energy == 0


def test_greedy_with_no_flip_budget_keeps_a_random_start():
    f = gen_uniform(GenConfig(40, 3, alpha=4.0, seed=6))
    result = residual_optimize(f, Assignment.unset(40), seed=3, cap=0, steps_factor=0,
                               restarts=3)
    assert result.assignment.is_total
    assert result.energy == energy(f, result.assignment)


def test_completion_rejects_wrong_length():
    f = Formula.from_signed(3, [[1, 2, 3]])
    with pytest.raises(ContractError):
        residual_optimize(f, Assignment.unset(4))


# ---------------------------------------------------------------------------
# decision
# ---------------------------------------------------------------------------

def test_sat_verdict_carries_a_zero_energy_witness(make_planted):
    for i in range(5):
        inst = make_planted(200, 10.0, seed=derive_seed(31, i))
        decision = wp_decide(inst.formula, seed=i, params=WpParams(restarts=2))
        assert verify_witness(inst.formula, decision)
        assert decision.is_sat
        assert decision.final_energy == 0
        assert energy(inst.formula, decision.witness) == 0


def test_unsatisfiable_formula_is_declared_unsat():
    f = Formula.from_signed(2, [[1, 2], [1, -2], [-1, 2], [-1, -2]])
    decision = wp_decide(f, seed=0, params=WpParams(restarts=2))
    assert decision.verdict == UNSAT_DECLARED
    assert decision.witness is None
    assert decision.final_energy == 1
    assert decision.attempts == 3
    assert verify_witness(f, decision)


def test_decision_record_fields(make_planted):
    inst = make_planted(50, 6.0, seed=2)
    decision = wp_decide(inst.formula, seed=4)
    record = decision.to_record(inst.root)
    for key in ("seed", "converged", "iterations", "assigned", "unassigned", "agree_with_root",
                "final_energy", "verdict", "wall_time_ms", "residual_size", "attempts"):
        assert key in record
    assert record["assigned"] + record["unassigned"] == 50
    assert ("witness" in record) == (record["verdict"] == SAT)
    if record["assigned"]:
        assert 0.0 <= record["agree_with_root"] <= 1.0
    else:
        assert record["agree_with_root"] is None


def test_decision_is_reproducible():
    f = gen_uniform(GenConfig(60, 3, alpha=4.0, seed=10))
    a = wp_decide(f, seed=3, params=WpParams(restarts=1))
    b = wp_decide(f, seed=3, params=WpParams(restarts=1))
    assert a.verdict == b.verdict and a.final_energy == b.final_energy
    assert a.assignment == b.assignment


def test_final_energy_never_below_ground_energy():
    for i in range(10):
        f = gen_uniform(GenConfig(14, 3, alpha=6.0, seed=derive_seed(5, i)))
        decision = wp_decide(f, seed=i)
        e0 = enumerate_ground_truth(f, optima_cap=0).e0
        assert decision.final_energy >= e0
        if decision.is_sat:
            assert e0 == 0
