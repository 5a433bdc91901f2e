#!/usr/bin/env python3
"""
Results database tests: run history and sweep aggregates.
"""

import pytest

from database import SWEEP_COLUMNS, ResultsDatabase


@pytest.fixture
def db(tmp_path):
    return ResultsDatabase(str(tmp_path / "runs.db"))


def sweep_row(e, rate=1.0):
    row = {col: 0.0 for col in SWEEP_COLUMNS}
    row.update(E=e, trials=10, convergence_rate=rate, n_converged=int(10 * rate))
    return row


def test_save_run_returns_id(db):
    ok, run_id = db.save_run("validate", {"seed": 1}, {"ok": True})
    assert ok and isinstance(run_id, int)
    ok2, run_id2 = db.save_run("validate", {"seed": 2})
    assert ok2 and run_id2 > run_id


def test_history_is_most_recent_first(db):
    db.save_run("fields", {"seed": 1}, {"tv_distance": 0.01})
    db.save_run("bias", {"seed": 2}, {"true_mean": 0.14})
    db.save_run("fields", {"seed": 3}, None)
    history = db.get_run_history()
    assert [h["config"]["seed"] for h in history] == [3, 2, 1]
    assert history[0]["summary"] is None
    fields = db.get_run_history(kind="fields")
    assert [h["kind"] for h in fields] == ["fields", "fields"]
    assert len(db.get_run_history(limit=1)) == 1


def test_sweep_records_round_trip(db):
    ok, run_id = db.save_run("finite-energy", {"n_vars": 200})
    rows = [sweep_row(20, 0.5), sweep_row(0), sweep_row(5, 0.9)]
    ok, message = db.save_sweep_records(run_id, rows)
    assert ok and "3" in message
    stored = db.get_sweep_records(run_id)
    assert [r["E"] for r in stored] == [0, 5, 20]
    assert stored[2]["convergence_rate"] == 0.5
    assert set(stored[0]) == set(SWEEP_COLUMNS)


def test_missing_values_are_stored_as_null(db):
    ok, run_id = db.save_run("finite-energy", {})
    row = sweep_row(60, 0.0)
    row["mean_iterations"] = None
    db.save_sweep_records(run_id, [row])
    assert db.get_sweep_records(run_id)[0]["mean_iterations"] is None


def test_failures_return_false(tmp_path):
    db = ResultsDatabase(str(tmp_path / "runs.db"))
    ok, message = db.save_sweep_records(1, [{"E": None}])
    assert not ok
    assert "failed" in message
    assert db.get_sweep_records(1) == []
