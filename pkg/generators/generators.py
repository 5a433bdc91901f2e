"""
Seeded samplers for the uniform, planted and energy-planted K-SAT ensembles,
plus rejection sampling of the SAT-conditioned ensemble at small N.
"""

import logging
import math
from itertools import combinations
from dataclasses import dataclass, replace
from typing import Dict, List, Optional

import numpy as np
from joblib import Parallel, delayed

from formula import Assignment, ContractError, Formula, energy
from oracle import ORACLE_CAP, is_satisfiable

from .seeding import RNG_NAME, derive_seed, make_rng

logger = logging.getLogger(__name__)

DISTRIBUTIONS = ("uniform", "planted", "planted_energy")


@dataclass(frozen=True)
class GenConfig:
    """Parameters of one instance draw.

    Args:
        n_vars: number of variables N
        k: clause width K
        n_clauses: M; if None, M = round(alpha * N)
        alpha: clause-to-variable ratio, used when n_clauses is None
        seed: 64-bit instance seed
        distribution: 'uniform', 'planted' or 'planted_energy'
        planted_energy: E, the number of root-violated clauses
    """
    n_vars: int
    k: int = 3
    n_clauses: Optional[int] = None
    alpha: Optional[float] = None
    seed: int = 0
    distribution: str = "uniform"
    planted_energy: int = 0

    def __post_init__(self):
        if self.distribution not in DISTRIBUTIONS:
            raise ContractError(f"unknown distribution '{self.distribution}'")
        if self.n_clauses is None and self.alpha is None:
            raise ContractError("either n_clauses or alpha is required")
        if self.k < 2:
            raise ContractError(f"K must be >= 2, got {self.k}")
        if self.k > self.n_vars:
            raise ContractError(f"K={self.k} exceeds N={self.n_vars}")
        if self.alpha is not None and self.alpha < 0:
            raise ContractError(f"alpha must be >= 0, got {self.alpha}")
        if self.planted_energy < 0 or self.planted_energy > self.m:
            raise ContractError(f"planted energy E={self.planted_energy} outside [0, M={self.m}]")

    @property
    def m(self) -> int:
        if self.n_clauses is not None:
            return int(self.n_clauses)
        return int(math.floor(self.alpha * self.n_vars + 0.5))

    def with_seed(self, seed: int) -> "GenConfig":
        return replace(self, seed=int(seed))


@dataclass(frozen=True)
class PlantedInstance:
    formula: Formula
    root: Assignment
    planted_energy: int
    seed: Optional[int] = None

    def __post_init__(self):
        actual = energy(self.formula, self.root)
        if actual != self.planted_energy:
            raise ContractError(f"root has energy {actual}, expected {self.planted_energy}")

    @property
    def meta(self) -> Dict:
        return {"seed": self.seed, "root": self.root, "planted_energy": self.planted_energy,
                "rng": RNG_NAME}


@dataclass(frozen=True)
class RejectionResult:
    formula: Optional[Formula]
    attempts: int

    @property
    def exhausted(self) -> bool:
        return self.formula is None


def _variable_sets(rng: np.random.Generator, n: int, k: int, m: int) -> np.ndarray:
    """(m, k) rows of distinct indices, each row a uniform K-subset in random order."""
    rows = rng.integers(0, n, size=(m, k))
    while True:
        ordered = np.sort(rows, axis=1)
        bad = np.flatnonzero((np.diff(ordered, axis=1) == 0).any(axis=1))
        if bad.size == 0:
            return rows
        rows[bad] = rng.integers(0, n, size=(bad.size, k))


def _pattern_signs(patterns: np.ndarray, k: int) -> np.ndarray:
    """Bit j of a pattern set means literal j is unnegated."""
    bits = (patterns[:, None] >> np.arange(k)) & 1
    return np.where(bits == 1, 1, -1).astype(np.int8)


def _violating_patterns(variables: np.ndarray, root: np.ndarray) -> np.ndarray:
    # literal j is false under the root iff it is unnegated on a FALSE variable
    # or negated on a TRUE one
    false_bits = (root[variables] == 0).astype(np.int64)
    return (false_bits << np.arange(variables.shape[1])).sum(axis=1)


def gen_uniform(cfg: GenConfig) -> Formula:
    rng = make_rng(cfg.seed)
    m = cfg.m
    variables = _variable_sets(rng, cfg.n_vars, cfg.k, m)
    patterns = rng.integers(0, 1 << cfg.k, size=m)
    return Formula(cfg.n_vars, cfg.k, variables, _pattern_signs(patterns, cfg.k))


def gen_planted_energy(cfg: GenConfig) -> PlantedInstance:
    """Planted instance whose first E clauses are violated by the root."""
    rng = make_rng(cfg.seed)
    m, k, e = cfg.m, cfg.k, cfg.planted_energy
    root = rng.integers(0, 2, size=cfg.n_vars).astype(np.int8)
    variables = _variable_sets(rng, cfg.n_vars, k, m)
    violating = _violating_patterns(variables, root)
    draws = rng.integers(0, (1 << k) - 1, size=m)
    patterns = draws + (draws >= violating)
    patterns[:e] = violating[:e]
    formula = Formula(cfg.n_vars, k, variables, _pattern_signs(patterns, k))
    return PlantedInstance(formula, Assignment(root), e, seed=cfg.seed)


def gen_planted(cfg: GenConfig) -> PlantedInstance:
    return gen_planted_energy(replace(cfg, planted_energy=0, distribution="planted"))


def generate(cfg: GenConfig):
    """Dispatch on ``cfg.distribution``; uniform draws return a bare Formula."""
    if cfg.distribution == "uniform":
        return gen_uniform(cfg)
    if cfg.distribution == "planted":
        return gen_planted(cfg)
    return gen_planted_energy(cfg)


def gen_batch(cfg: GenConfig, count: int, jobs: int = 1) -> List:
    """``count`` instances, instance i seeded with derive_seed(cfg.seed, i)."""
    configs = [cfg.with_seed(derive_seed(cfg.seed, i)) for i in range(count)]
    if jobs == 1:
        return [generate(c) for c in configs]
    return Parallel(n_jobs=jobs)(delayed(generate)(c) for c in configs)


def sample_psat_rejection(cfg: GenConfig, max_attempts: int) -> RejectionResult:
    """First satisfiable uniform draw; attempt i uses derive_seed(cfg.seed, i)."""
    if cfg.n_vars > ORACLE_CAP:
        raise ContractError(f"rejection sampling needs N <= {ORACLE_CAP}, got {cfg.n_vars}")
    for attempt in range(max_attempts):
        formula = gen_uniform(cfg.with_seed(derive_seed(cfg.seed, attempt)))
        if is_satisfiable(formula):
            logger.debug("✅ satisfiable draw after %d attempts", attempt + 1)
            return RejectionResult(formula, attempt + 1)
    logger.info("⚠ rejection sampling exhausted after %d attempts", max_attempts)
    return RejectionResult(None, max_attempts)


def _clause_types(n: int, k: int):
    subsets = np.array(list(combinations(range(n), k)), dtype=np.int64)
    patterns = np.arange(1 << k)
    variables = np.repeat(subsets, patterns.size, axis=0)
    signs = _pattern_signs(np.tile(patterns, len(subsets)), k)
    return variables, signs


def _popcount(words: np.ndarray) -> np.ndarray:
    as_bytes = words.astype(">u8").view(np.uint8).reshape(-1, 8)
    return np.unpackbits(as_bytes, axis=1).sum(axis=1)


def planted_measure_exact(n: int, k: int, m: int, max_formulas: int = 1 << 22) -> Dict[str, Dict[int, float]]:
    """Exact laws of the number of solutions N_s under P_unif and P_plant.

    Every ordered M-tuple of clause types is enumerated; P_plant weighs a
    formula by N_s / (2^N * N_f) with N_f = (C(N,K) (2^K - 1))^M.
    """
    if n > 6:
        raise ContractError(f"exact planted measure needs N <= 6, got {n}")
    variables, signs = _clause_types(n, k)
    n_types = len(variables)
    if n_types ** m > max_formulas:
        raise ContractError(f"{n_types}^{m} formulas exceed the enumeration budget")
    states = np.arange(1 << n, dtype=np.uint64)
    bits = (states[:, None] >> np.arange(n, dtype=np.uint64)) & np.uint64(1)
    truth = (bits[:, variables] == 1) == (signs[None] > 0)
    satisfied = truth.any(axis=2).astype(np.uint64)
    # bit s of a mask is set iff state s satisfies the clause type
    masks = np.bitwise_or.reduce(satisfied << states[:, None], axis=0)

    combined = masks
    for _ in range(m - 1):
        combined = (combined[:, None] & masks[None, :]).reshape(-1)
    counts = np.bincount(_popcount(combined), minlength=(1 << n) + 1)
    n_f = (math.comb(n, k) * ((1 << k) - 1)) ** m
    total = combined.size
    uniform = {s: counts[s] / total for s in range(counts.size) if counts[s]}
    planted = {s: s * counts[s] / ((1 << n) * n_f) for s in range(1, counts.size) if counts[s]}
    return {"uniform": uniform, "planted": planted}
