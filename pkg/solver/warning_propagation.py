"""
Warning Propagation (WP) on the clause/variable factor graph.

Warnings live on edges, one bit u[a, j] per literal slot of clause a. With
s[a, j] the literal sign and H_i = sum over edges of i of s * u, the cavity
field of variable j seen from clause a is h = H_j - s[a, j] * u[a, j]. A
clause warns variable i iff every other variable j of the clause has
s[a, j] * h < 0, i.e. is pushed towards falsifying its literal in a.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from formula import FALSE, TRUE, UNSET, Assignment, ContractError, Formula
from generators import derive_seed, make_rng

logger = logging.getLogger(__name__)

SCHEDULES = ("sync", "random-async")


@dataclass(frozen=True)
class WpParams:
    """Solver knobs.

    Args:
        max_iters: sweep cutoff; None means max(10, ceil(2 ln N))
        restarts: extra WP runs with fresh seeds when the first run fails
        schedule: 'sync' (double-buffered) or 'random-async'
        residual_cap: largest residual component solved exhaustively
        greedy_steps_factor: greedy flips per restart = factor * component size
        greedy_restarts: greedy descent restarts per large component
    """
    max_iters: Optional[int] = None
    restarts: int = 0
    schedule: str = "sync"
    residual_cap: int = 24
    greedy_steps_factor: int = 100
    greedy_restarts: int = 10

    def __post_init__(self):
        if self.schedule not in SCHEDULES:
            raise ContractError(f"unknown schedule '{self.schedule}', expected one of {SCHEDULES}")
        if self.max_iters is not None and self.max_iters < 1:
            raise ContractError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.restarts < 0:
            raise ContractError(f"restarts must be >= 0, got {self.restarts}")

    def cutoff(self, n_vars: int) -> int:
        if self.max_iters is not None:
            return self.max_iters
        return default_cutoff(n_vars)

    @classmethod
    def from_dict(cls, values: dict) -> "WpParams":
        known = {k: v for k, v in values.items() if k in cls.__dataclass_fields__}
        return cls(**known)


def default_cutoff(n_vars: int) -> int:
    if n_vars <= 1:
        return 10
    return max(10, math.ceil(2 * math.log(n_vars)))


@dataclass(frozen=True)
class WpState:
    warnings: np.ndarray
    iteration: int = 0
    changed: int = -1

    @property
    def converged(self) -> bool:
        return self.changed == 0


@dataclass(frozen=True)
class WpOutcome:
    converged: bool
    iterations: int
    local_fields: np.ndarray
    partial: Assignment
    state: WpState

    @property
    def n_assigned(self) -> int:
        return self.partial.n_assigned()

    @property
    def n_unassigned(self) -> int:
        return self.partial.n_vars - self.n_assigned


def wp_init(f: Formula, seed: int) -> WpState:
    warnings = make_rng(seed).integers(0, 2, size=(f.n_clauses, f.k)).astype(np.int8)
    return WpState(warnings=warnings, iteration=0, changed=0 if f.n_clauses == 0 else -1)


def local_fields(f: Formula, warnings: np.ndarray) -> np.ndarray:
    """H_i = sum over clauses a containing i of s[a, i] * u[a -> i]."""
    if f.n_clauses == 0:
        return np.zeros(f.n_vars, dtype=np.int64)
    su = (f.signs * warnings).reshape(-1)
    return np.bincount(f.variables.reshape(-1), weights=su, minlength=f.n_vars).astype(np.int64)


def _sync_update(f: Formula, warnings: np.ndarray) -> np.ndarray:
    su = f.signs.astype(np.int64) * warnings
    fields = local_fields(f, warnings)
    cavity = fields[f.variables] - su
    against = (f.signs * cavity) < 0
    n_against = against.sum(axis=1, keepdims=True)
    return ((n_against - against) == f.k - 1).astype(np.int8)


def _async_update(f: Formula, warnings: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    u = warnings.copy()
    fields = local_fields(f, u)
    for a in rng.permutation(f.n_clauses):
        vs, ss = f.variables[a], f.signs[a]
        cavity = fields[vs] - ss * u[a]
        against = (ss * cavity) < 0
        new = ((against.sum() - against) == f.k - 1).astype(np.int8)
        # variables of a clause are distinct, so fancy-index update is exact
        fields[vs] += ss * (new - u[a])
        u[a] = new
    return u


def wp_sweep(f: Formula, state: WpState, schedule: str = "sync",
             rng: Optional[np.random.Generator] = None) -> WpState:
    """One sweep; returns the new state with the number of edges that changed."""
    if state.warnings.shape != (f.n_clauses, f.k):
        raise ContractError(f"state shape {state.warnings.shape} does not match formula "
                            f"({f.n_clauses}, {f.k})")
    if f.n_clauses == 0:
        return replace(state, iteration=state.iteration + 1, changed=0)
    if schedule == "sync":
        new = _sync_update(f, state.warnings)
    elif schedule == "random-async":
        if rng is None:
            raise ContractError("random-async schedule needs a generator for the clause order")
        new = _async_update(f, state.warnings, rng)
    else:
        raise ContractError(f"unknown schedule '{schedule}'")
    changed = int((new != state.warnings).sum())
    return WpState(warnings=new, iteration=state.iteration + 1, changed=changed)


def partial_from_fields(fields: np.ndarray) -> Assignment:
    return Assignment(np.where(fields > 0, TRUE, np.where(fields < 0, FALSE, UNSET)))


def wp_run(f: Formula, seed: int, max_iters: Optional[int] = None,
           schedule: str = "sync") -> WpOutcome:
    """Sweep until no edge changes or the cutoff is reached.

    ``iterations`` counts sweeps, the final zero-change sweep included. Local
    fields and the partial assignment come from the last iterate whether or
    not the run converged.
    """
    max_iters = default_cutoff(f.n_vars) if max_iters is None else max_iters
    if max_iters < 1:
        raise ContractError(f"max_iters must be >= 1, got {max_iters}")
    state = wp_init(f, seed)
    if f.n_clauses == 0:
        fields = np.zeros(f.n_vars, dtype=np.int64)
        return WpOutcome(True, 0, fields, Assignment.unset(f.n_vars), state)

    order_rng = make_rng(derive_seed(seed, 1)) if schedule == "random-async" else None
    while state.iteration < max_iters:
        state = wp_sweep(f, state, schedule, order_rng)
        if state.changed == 0:
            break

    fields = local_fields(f, state.warnings)
    outcome = WpOutcome(state.converged, state.iteration, fields, partial_from_fields(fields), state)
    logger.debug("🔄 WP %s after %d sweeps, %d/%d assigned",
                 "converged" if outcome.converged else "stopped", outcome.iterations,
                 outcome.n_assigned, f.n_vars)
    return outcome
