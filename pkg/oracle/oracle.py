"""
Brute-force ground truth for small formulas.

The whole 2^N energy table is materialized: state index s encodes variable i
in bit i (TRUE = 1). Each clause is violated on a subcube with its K bits
fixed, so the table is filled by adding 1 to that subcube through a
(2,)*N view, M * 2^(N-K) additions in total.
"""

import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from formula import Assignment, Formula, OracleCapError

logger = logging.getLogger(__name__)

ORACLE_CAP = 24
DEFAULT_OPTIMA_CAP = 64


@dataclass(frozen=True)
class GroundTruth:
    e0: int
    g0: int
    optima: List[Assignment] = field(default_factory=list)
    truncated: bool = False

    def to_dict(self) -> dict:
        return {"e0": self.e0, "g0": self.g0, "truncated": self.truncated,
                "optima": [x.to_bitstring() for x in self.optima]}


@dataclass(frozen=True)
class ExactFields:
    z: np.ndarray
    zero_fraction: float
    e0: int

    @property
    def n_vars(self) -> int:
        return int(self.z.size)


def _check_cap(f: Formula, cap: int):
    if f.n_vars > cap:
        raise OracleCapError(f"exhaustive search refuses N={f.n_vars} > {cap}")


def energy_table(f: Formula, cap: int = ORACLE_CAP) -> np.ndarray:
    """E[s] for every state s in [0, 2^N)."""
    _check_cap(f, cap)
    n = f.n_vars
    # uint16 would wrap above 65535 clauses
    dtype = np.uint16 if f.n_clauses <= np.iinfo(np.uint16).max else np.uint32
    table = np.zeros(1 << n, dtype=dtype)
    if n == 0:
        table[0] = f.n_clauses
        return table
    cube = table.reshape((2,) * n)
    for vs, ss in zip(f.variables, f.signs):
        index = [slice(None)] * n
        for v, s in zip(vs, ss):
            # axis 0 is the most significant bit; the literal is false on
            # value 0 when unnegated and on value 1 when negated
            index[n - 1 - int(v)] = 0 if s > 0 else 1
        cube[tuple(index)] += 1
    return table


def enumerate_ground_truth(f: Formula, optima_cap: int = DEFAULT_OPTIMA_CAP,
                           cap: int = ORACLE_CAP) -> GroundTruth:
    """Minimal energy, number of optimal assignments and up to ``optima_cap`` of them."""
    table = energy_table(f, cap)
    e0 = int(table.min())
    best = np.flatnonzero(table == e0)
    optima = [Assignment.from_index(int(s), f.n_vars) for s in best[:optima_cap]]
    logger.debug("📊 N=%d M=%d: e0=%d g0=%d", f.n_vars, f.n_clauses, e0, best.size)
    return GroundTruth(e0=e0, g0=int(best.size), optima=optima, truncated=best.size > optima_cap)


def exact_fields(f: Formula, cap: int = ORACLE_CAP) -> ExactFields:
    """z_i = min E(x_i = FALSE) - min E(x_i = TRUE) for every variable."""
    table = energy_table(f, cap).astype(np.int64)
    n = f.n_vars
    z = np.zeros(n, dtype=np.int64)
    for i in range(n):
        split = table.reshape(1 << (n - 1 - i), 2, 1 << i)
        z[i] = split[:, 0, :].min() - split[:, 1, :].min()
    zero_fraction = float((z == 0).mean()) if n else 0.0
    return ExactFields(z=z, zero_fraction=zero_fraction, e0=int(table.min()))


def is_satisfiable(f: Formula, cap: int = ORACLE_CAP) -> bool:
    """Filter the set of surviving states clause by clause; stop once it is empty."""
    _check_cap(f, cap)
    alive = np.arange(1 << f.n_vars, dtype=np.int64)
    for vs, ss in zip(f.variables, f.signs):
        mask = int(np.bitwise_or.reduce(np.left_shift(1, vs)))
        falsifying = int(np.left_shift(1, vs[ss < 0]).sum())
        alive = alive[(alive & mask) != falsifying]
        if alive.size == 0:
            return False
    return True
