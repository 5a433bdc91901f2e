"""SAT / UNSAT_DECLARED decision: WP, then residual optimization, with optional restarts."""

import logging
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from formula import Assignment, Formula, energy
from generators import derive_seed

from .residual import residual_optimize
from .warning_propagation import WpParams, wp_run

logger = logging.getLogger(__name__)

SAT = "SAT"
UNSAT_DECLARED = "UNSAT_DECLARED"


@dataclass(frozen=True)
class Decision:
    verdict: str
    witness: Optional[Assignment]
    final_energy: int
    iterations: int
    residual_size: int
    converged: bool
    n_assigned: int
    partial: Assignment
    assignment: Assignment
    seed: int
    attempts: int = 1
    wall_time_ms: float = 0.0

    @property
    def is_sat(self) -> bool:
        return self.verdict == SAT

    @property
    def n_unassigned(self) -> int:
        return self.partial.n_vars - self.n_assigned

    def agree_with_root(self, root: Assignment) -> Optional[float]:
        """Fraction of WP-assigned variables that carry the root's value."""
        mask = self.partial.assigned_mask
        if not mask.any():
            return None
        return float((self.partial.values[mask] == root.values[mask]).mean())

    def to_record(self, root: Optional[Assignment] = None) -> dict:
        record = {
            "seed": self.seed,
            "converged": self.converged,
            "iterations": self.iterations,
            "assigned": self.n_assigned,
            "unassigned": self.n_unassigned,
            "agree_with_root": self.agree_with_root(root) if root is not None else None,
            "final_energy": self.final_energy,
            "verdict": self.verdict,
            "wall_time_ms": round(self.wall_time_ms, 3),
            "residual_size": self.residual_size,
            "attempts": self.attempts,
        }
        if self.witness is not None:
            record["witness"] = self.witness.to_bitstring()
        return record


def wp_decide(f: Formula, seed: int, params: Optional[WpParams] = None) -> Decision:
    """Run WP and complete its partial assignment; declare SAT only on a verified witness.

    Attempt 0 uses ``seed``; restart r uses derive_seed(seed, r). The best
    attempt by completed energy is reported, the earliest one on ties.
    """
    params = params or WpParams()
    start = time.perf_counter()
    best = None
    attempts = 0
    for attempt in range(params.restarts + 1):
        attempts += 1
        run_seed = seed if attempt == 0 else derive_seed(seed, attempt)
        outcome = wp_run(f, run_seed, params.cutoff(f.n_vars), params.schedule)
        completed = residual_optimize(f, outcome.partial, run_seed, params.residual_cap,
                                      params.greedy_steps_factor, params.greedy_restarts)
        if best is None or completed.energy < best[1].energy:
            best = (outcome, completed)
        if completed.energy == 0:
            break

    outcome, completed = best
    final_energy = energy(f, completed.assignment)
    witness = completed.assignment if final_energy == 0 else None
    decision = Decision(
        verdict=SAT if witness is not None else UNSAT_DECLARED,
        witness=witness,
        final_energy=final_energy,
        iterations=outcome.iterations,
        residual_size=completed.residual_size,
        converged=outcome.converged,
        n_assigned=outcome.n_assigned,
        partial=outcome.partial,
        assignment=completed.assignment,
        seed=int(seed),
        attempts=attempts,
        wall_time_ms=(time.perf_counter() - start) * 1000.0,
    )
    logger.debug("%s %s: energy %d after %d attempt(s)", "✅" if decision.is_sat else "⚠",
                 decision.verdict, final_energy, attempts)
    return decision


def verify_witness(f: Formula, decision: Decision) -> bool:
    """True unless a SAT verdict carries a witness of nonzero energy."""
    if not decision.is_sat:
        return True
    return decision.witness is not None and energy(f, decision.witness) == 0 and bool(
        np.array_equal(decision.witness.values, decision.assignment.values))
