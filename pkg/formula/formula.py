"""
Formula and assignment representations for random K-SAT.

A formula keeps its clauses as two (M, K) arrays, ``variables`` and
``signs``, in generation order. The variable -> (clause, sign) adjacency is
built eagerly as CSR arrays so that edge-local work (flip fields, warning
updates) never scans the whole formula.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ContractError

TRUE = 1
FALSE = 0
UNSET = -1


@dataclass(frozen=True)
class Literal:
    var: int
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ContractError(f"literal sign must be +1 or -1, got {self.sign}")
        if self.var < 0:
            raise ContractError(f"literal variable must be >= 0, got {self.var}")

    def to_dimacs(self) -> int:
        return self.sign * (self.var + 1)

    @classmethod
    def from_dimacs(cls, value: int) -> "Literal":
        return cls(abs(value) - 1, 1 if value > 0 else -1)


@dataclass(frozen=True)
class FieldSample:
    var: int
    z: int
    ell_plus: int
    ell_minus: int

    @property
    def degree(self) -> int:
        return self.ell_plus + self.ell_minus


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class Assignment:
    """Truth values over N variables, each TRUE (1), FALSE (0) or UNSET (-1)."""

    __slots__ = ("_values",)

    def __init__(self, values: Iterable[int]):
        arr = np.array(values, dtype=np.int8).reshape(-1)
        if arr.size and not np.isin(arr, (TRUE, FALSE, UNSET)).all():
            raise ContractError("assignment values must be TRUE, FALSE or UNSET")
        self._values = _frozen(arr)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "Assignment":
        return cls(np.asarray(bits, dtype=np.int8))

    @classmethod
    def from_bitstring(cls, text: str) -> "Assignment":
        if any(ch not in "01" for ch in text):
            raise ContractError(f"bitstring may only contain 0 and 1: {text!r}")
        return cls([int(ch) for ch in text])

    @classmethod
    def from_index(cls, index: int, n_vars: int) -> "Assignment":
        """Decode an enumeration index, bit i of ``index`` being variable i."""
        return cls([(int(index) >> i) & 1 for i in range(n_vars)])

    @classmethod
    def unset(cls, n_vars: int) -> "Assignment":
        return cls(np.full(n_vars, UNSET, dtype=np.int8))

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def n_vars(self) -> int:
        return int(self._values.size)

    @property
    def is_total(self) -> bool:
        return not bool((self._values == UNSET).any())

    @property
    def assigned_mask(self) -> np.ndarray:
        return self._values != UNSET

    def n_assigned(self) -> int:
        return int(self.assigned_mask.sum())

    def with_value(self, i: int, value: int) -> "Assignment":
        arr = self._values.copy()
        arr[i] = value
        return Assignment(arr)

    def to_bitstring(self) -> str:
        if not self.is_total:
            raise ContractError("only total assignments have a bitstring form")
        return "".join("1" if v == TRUE else "0" for v in self._values)

    def to_index(self) -> int:
        return int(sum(int(v) << i for i, v in enumerate(self._values)))

    def __len__(self):
        return self.n_vars

    def __getitem__(self, i):
        return int(self._values[i])

    def __eq__(self, other):
        if not isinstance(other, Assignment):
            return NotImplemented
        return np.array_equal(self._values, other._values)

    def __hash__(self):
        return hash(self._values.tobytes())

    def __repr__(self):
        return f"Assignment({''.join({1: '1', 0: '0', -1: '.'}[int(v)] for v in self._values)})"


class Formula:
    """A K-SAT formula over ``n_vars`` variables with clauses of width ``k``.

    Args:
        n_vars: number of variables N
        k: clause width K
        variables: (M, K) integer array of 0-based variable indices
        signs: (M, K) array of +1 (unnegated) / -1 (negated)
    """

    def __init__(self, n_vars: int, k: int, variables, signs):
        if n_vars < 0:
            raise ContractError(f"n_vars must be >= 0, got {n_vars}")
        if k < 1:
            raise ContractError(f"clause width must be >= 1, got {k}")
        variables = np.asarray(variables, dtype=np.int64).reshape(-1, k)
        signs = np.asarray(signs, dtype=np.int8).reshape(-1, k)
        if variables.shape != signs.shape:
            raise ContractError("variables and signs must have the same shape")
        if variables.size:
            if variables.min() < 0 or variables.max() >= n_vars:
                raise ContractError(f"variable index out of range [0, {n_vars})")
            if not np.isin(signs, (1, -1)).all():
                raise ContractError("signs must be +1 or -1")
            ordered = np.sort(variables, axis=1)
            if (np.diff(ordered, axis=1) == 0).any():
                bad = int(np.flatnonzero((np.diff(ordered, axis=1) == 0).any(axis=1))[0])
                raise ContractError(f"clause {bad} repeats a variable")

        self.n_vars = int(n_vars)
        self.k = int(k)
        self.variables = _frozen(variables.copy())
        self.signs = _frozen(signs.copy())

        # CSR adjacency: edges of variable i are var_edges[var_ptr[i]:var_ptr[i+1]],
        # an edge being the flat index a*K + j into variables/signs.
        flat_vars = self.variables.reshape(-1)
        order = np.argsort(flat_vars, kind="stable")
        counts = np.bincount(flat_vars, minlength=self.n_vars)
        self.var_ptr = _frozen(np.concatenate(([0], np.cumsum(counts))).astype(np.int64))
        self.var_edges = _frozen(order.astype(np.int64))
        self._adjacency: Optional[List[List[Tuple[int, int]]]] = None

    # construction helpers -------------------------------------------------

    @classmethod
    def from_clauses(cls, n_vars: int, clauses: Sequence[Sequence], k: Optional[int] = None) -> "Formula":
        """Build from clauses of ``Literal`` or ``(var, sign)`` pairs."""
        rows_v, rows_s = [], []
        for clause in clauses:
            lits = [lit if isinstance(lit, Literal) else Literal(*lit) for lit in clause]
            rows_v.append([lit.var for lit in lits])
            rows_s.append([lit.sign for lit in lits])
        if k is None:
            if not rows_v:
                raise ContractError("clause width cannot be inferred from an empty formula")
            k = len(rows_v[0])
        if any(len(row) != k for row in rows_v):
            raise ContractError(f"every clause must have exactly {k} literals")
        return cls(n_vars, k, np.array(rows_v, dtype=np.int64).reshape(-1, k),
                   np.array(rows_s, dtype=np.int8).reshape(-1, k))

    @classmethod
    def from_signed(cls, n_vars: int, clauses: Sequence[Sequence[int]], k: Optional[int] = None) -> "Formula":
        """Build from DIMACS-style signed 1-based integers, e.g. ``[[1, -2, 3]]``."""
        return cls.from_clauses(n_vars, [[Literal.from_dimacs(v) for v in c] for c in clauses], k=k)

    @classmethod
    def empty(cls, n_vars: int, k: int) -> "Formula":
        return cls(n_vars, k, np.zeros((0, k), dtype=np.int64), np.zeros((0, k), dtype=np.int8))

    # views ----------------------------------------------------------------

    @property
    def n_clauses(self) -> int:
        return int(self.variables.shape[0])

    @property
    def alpha(self) -> float:
        return self.n_clauses / self.n_vars if self.n_vars else 0.0

    @property
    def clauses(self) -> List[Tuple[Literal, ...]]:
        return [tuple(Literal(int(v), int(s)) for v, s in zip(vs, ss))
                for vs, ss in zip(self.variables, self.signs)]

    @property
    def adjacency(self) -> List[List[Tuple[int, int]]]:
        """For each variable, the (clause index, sign) pairs containing it."""
        if self._adjacency is None:
            flat_s = self.signs.reshape(-1)
            adj = []
            for i in range(self.n_vars):
                edges = self.var_edges[self.var_ptr[i]:self.var_ptr[i + 1]]
                adj.append([(int(e // self.k), int(flat_s[e])) for e in edges])
            self._adjacency = adj
        return self._adjacency

    def edges_of(self, i: int) -> np.ndarray:
        _check_var(self, i)
        return self.var_edges[self.var_ptr[i]:self.var_ptr[i + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.var_ptr)

    def __eq__(self, other):
        if not isinstance(other, Formula):
            return NotImplemented
        return (self.n_vars == other.n_vars and self.k == other.k
                and np.array_equal(self.variables, other.variables)
                and np.array_equal(self.signs, other.signs))

    def __hash__(self):
        return hash((self.n_vars, self.k, self.variables.tobytes(), self.signs.tobytes()))

    def __repr__(self):
        return f"Formula(n_vars={self.n_vars}, k={self.k}, n_clauses={self.n_clauses})"


def _check_var(f: Formula, i: int):
    if not 0 <= i < f.n_vars:
        raise ContractError(f"variable index {i} out of range [0, {f.n_vars})")


def _total_values(f: Formula, x) -> np.ndarray:
    values = x.values if isinstance(x, Assignment) else np.asarray(x, dtype=np.int8)
    if values.shape != (f.n_vars,):
        raise ContractError(f"assignment has length {values.size}, formula has {f.n_vars} variables")
    if (values == UNSET).any():
        raise ContractError("energy is only defined for total assignments")
    return values


def literal_truth(f: Formula, values: np.ndarray) -> np.ndarray:
    """(M, K) boolean array: literal j of clause a is true under ``values``."""
    return (values[f.variables] == TRUE) == (f.signs > 0)


def energy(f: Formula, x) -> int:
    """Number of clauses whose K literals are all false under total ``x``."""
    values = _total_values(f, x)
    if f.n_clauses == 0:
        return 0
    return int((~literal_truth(f, values).any(axis=1)).sum())


def flip_field(f: Formula, x, i: int) -> int:
    """z_i = E(x_i = FALSE) - E(x_i = TRUE); positive when TRUE is favored."""
    values = _total_values(f, x)
    _check_var(f, i)
    edges = f.edges_of(i)
    if edges.size == 0:
        return 0
    clause_idx = edges // f.k
    truth = literal_truth(f, values)[clause_idx]
    own = truth[np.arange(edges.size), edges % f.k]
    others_true = truth.sum(axis=1) - own
    sign = f.signs.reshape(-1)[edges]
    # a clause whose other literals are all false is violated exactly when
    # i takes the value that falsifies its own literal
    return int(sign[others_true == 0].sum())


def flip_fields(f: Formula, x) -> np.ndarray:
    """Vectorized ``flip_field`` for every variable."""
    values = _total_values(f, x)
    if f.n_clauses == 0:
        return np.zeros(f.n_vars, dtype=np.int64)
    truth = literal_truth(f, values)
    others_true = truth.sum(axis=1, keepdims=True) - truth
    contrib = np.where(others_true == 0, f.signs, 0).reshape(-1)
    return np.bincount(f.variables.reshape(-1), weights=contrib,
                       minlength=f.n_vars).astype(np.int64)


def occurrences(f: Formula, i: int) -> Tuple[int, int]:
    """(ell_plus, ell_minus): clauses containing x_i and its negation."""
    _check_var(f, i)
    sign = f.signs.reshape(-1)[f.edges_of(i)]
    return int((sign > 0).sum()), int((sign < 0).sum())


def occurrence_counts(f: Formula) -> Tuple[np.ndarray, np.ndarray]:
    """Per-variable (ell_plus, ell_minus) arrays."""
    flat_v = f.variables.reshape(-1)
    positive = (f.signs.reshape(-1) > 0).astype(np.int64)
    ell_plus = np.bincount(flat_v, weights=positive, minlength=f.n_vars).astype(np.int64)
    ell_minus = np.bincount(flat_v, weights=1 - positive, minlength=f.n_vars).astype(np.int64)
    return ell_plus, ell_minus


def degree_histogram(f: Formula) -> np.ndarray:
    """counts[d] = number of variables with degree d."""
    return np.bincount(f.degrees(), minlength=1)


def field_samples(f: Formula, x) -> List[FieldSample]:
    z = flip_fields(f, x)
    ell_plus, ell_minus = occurrence_counts(f)
    return [FieldSample(i, int(z[i]), int(ell_plus[i]), int(ell_minus[i])) for i in range(f.n_vars)]
