"""
Completion of a WP partial assignment.

Assigned variables are fixed, satisfied clauses are dropped and the others
lose their literals on assigned variables. The residual formula splits into
connected components; small ones are solved by exhaustive search, large
ones by greedy descent with restarts.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from formula import FALSE, TRUE, UNSET, Assignment, ContractError, Formula, energy
from generators import derive_seed, make_rng

logger = logging.getLogger(__name__)

PAD = -1


@dataclass(frozen=True)
class ResidualResult:
    assignment: Assignment
    energy: int
    residual_size: int
    n_components: int


@dataclass(frozen=True)
class Component:
    """Residual clauses over ``variables`` (global indices).

    ``lits`` holds local variable indices padded with PAD; padded slots are
    false literals.
    """
    variables: np.ndarray
    lits: np.ndarray
    signs: np.ndarray

    @property
    def size(self) -> int:
        return int(self.variables.size)


def simplify(f: Formula, partial: Assignment) -> Tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    """Residual clause rows and the number of clauses already violated.

    Returns (rows, free_slots, free_vars, n_violated): ``rows`` indexes the
    open clauses, ``free_slots`` marks their literals on unassigned
    variables, ``free_vars`` lists unassigned variables that occur in them.
    """
    values = partial.values
    assigned = values[f.variables] != UNSET
    lit_true = assigned & ((values[f.variables] == TRUE) == (f.signs > 0))
    satisfied = lit_true.any(axis=1)
    free = ~assigned
    open_rows = np.flatnonzero(~satisfied & free.any(axis=1))
    n_violated = int((~satisfied & ~free.any(axis=1)).sum())
    free_slots = free[open_rows]
    free_vars = np.unique(f.variables[open_rows][free_slots])
    return open_rows, free_slots, free_vars, n_violated


def split_components(f: Formula, rows: np.ndarray, free_slots: np.ndarray,
                     free_vars: np.ndarray) -> List[Component]:
    n_v, n_c = free_vars.size, rows.size
    if n_v == 0:
        return []
    local = np.searchsorted(free_vars, f.variables[rows])
    clause_idx, slot_idx = np.nonzero(free_slots)
    var_nodes = local[clause_idx, slot_idx]
    # bipartite graph: variable nodes [0, n_v), clause nodes [n_v, n_v + n_c)
    graph = coo_matrix((np.ones(var_nodes.size), (var_nodes, n_v + clause_idx)),
                       shape=(n_v + n_c, n_v + n_c))
    n_comp, labels = connected_components(graph, directed=False)

    padded = np.where(free_slots, local, PAD)
    signs = f.signs[rows]
    components = []
    for c in range(n_comp):
        comp_vars = np.flatnonzero(labels[:n_v] == c)
        comp_rows = np.flatnonzero(labels[n_v:] == c)
        remap = np.full(n_v, PAD, dtype=np.int64)
        remap[comp_vars] = np.arange(comp_vars.size)
        lits = padded[comp_rows]
        lits = np.where(lits == PAD, PAD, remap[np.maximum(lits, 0)])
        components.append(Component(free_vars[comp_vars], lits, signs[comp_rows]))
    return components


def _exhaustive(comp: Component) -> np.ndarray:
    n = comp.size
    states = np.arange(1 << n, dtype=np.int64)
    violated = np.zeros(states.size, dtype=np.int32)
    for lits, ss in zip(comp.lits, comp.signs):
        real = lits != PAD
        mask = int(np.left_shift(1, lits[real]).sum())
        falsifying = int(np.left_shift(1, lits[real & (ss < 0)]).sum())
        violated += (states & mask) == falsifying
    best = int(np.argmin(violated))
    return ((best >> np.arange(n)) & 1).astype(bool)


def _clause_truth(comp: Component, x: np.ndarray) -> np.ndarray:
    real = comp.lits != PAD
    values = x[np.maximum(comp.lits, 0)]
    return real & (values == (comp.signs > 0))


def _greedy(comp: Component, rng: np.random.Generator, steps: int, restarts: int) -> np.ndarray:
    """GSAT-style descent: flip the variable with the best break - make score."""
    n = comp.size
    best_x, best_e = None, None
    for _ in range(max(restarts, 1)):
        x = rng.integers(0, 2, size=n).astype(bool)
        if best_e is None:
            best_x, best_e = x.copy(), int((~_clause_truth(comp, x).any(axis=1)).sum())
        for _ in range(steps):
            truth = _clause_truth(comp, x)
            n_true = truth.sum(axis=1)
            e = int((n_true == 0).sum())
            if e < best_e:
                best_x, best_e = x.copy(), e
            if e == 0:
                return best_x
            unsat = (n_true == 0)[:, None] & (comp.lits != PAD)
            make = np.bincount(comp.lits[unsat], minlength=n)
            critical = (n_true == 1)[:, None] & truth
            brk = np.bincount(comp.lits[critical], minlength=n)
            delta = brk - make
            candidates = np.flatnonzero(delta == delta.min())
            x[rng.choice(candidates)] ^= True
        truth = _clause_truth(comp, x)
        e = int((~truth.any(axis=1)).sum())
        if e < best_e:
            best_x, best_e = x.copy(), e
    return best_x


def residual_optimize(f: Formula, partial: Assignment, seed: int = 0, cap: int = 24,
                      steps_factor: int = 100, restarts: int = 10) -> ResidualResult:
    """Complete ``partial`` to a total assignment minimizing energy over its UNSET variables."""
    if partial.n_vars != f.n_vars:
        raise ContractError(f"partial has {partial.n_vars} variables, formula has {f.n_vars}")
    rows, free_slots, free_vars, n_violated = simplify(f, partial)
    components = split_components(f, rows, free_slots, free_vars)

    values = partial.values.copy()
    # unassigned variables outside every open clause are unconstrained
    values[values == UNSET] = FALSE
    rng = make_rng(derive_seed(seed, 2))
    for comp in components:
        if comp.size <= cap:
            x = _exhaustive(comp)
        else:
            logger.debug("🔄 greedy descent on a residual component of %d variables", comp.size)
            x = _greedy(comp, rng, steps_factor * comp.size, restarts)
        values[comp.variables] = np.where(x, TRUE, FALSE)

    assignment = Assignment(values)
    result = ResidualResult(assignment, energy(f, assignment), int(free_vars.size), len(components))
    logger.debug("📊 residual: %d variables in %d components, %d clauses violated by the partial",
                 result.residual_size, result.n_components, n_violated)
    return result
