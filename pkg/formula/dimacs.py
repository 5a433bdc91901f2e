"""
DIMACS CNF reading and writing, with the warpsat metadata comments:

    c k <K>
    c seed <u64>
    c root <bitstring, '1' = TRUE>
    c planted_energy <E>
    c rng <generator name>

Metadata comments come before the ``p cnf`` header. Other comments are
kept in ``DimacsDocument.comments`` and otherwise ignored.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from .errors import (ClauseCountError, ClauseWidthError, DimacsError, DuplicateVariableError,
                     HeaderError, LiteralRangeError)
from .formula import Assignment, Formula

DEFAULT_K = 3
META_KEYS = ("k", "seed", "root", "planted_energy", "rng")


@dataclass
class DimacsDocument:
    formula: Formula
    root: Optional[Assignment] = None
    planted_energy: Optional[int] = None
    seed: Optional[int] = None
    rng: Optional[str] = None
    comments: List[str] = field(default_factory=list)

    @property
    def meta(self) -> Dict[str, Any]:
        return {"seed": self.seed, "root": self.root, "planted_energy": self.planted_energy,
                "rng": self.rng}


def _parse_meta(line: str, line_no: int, meta: Dict[str, Any]) -> bool:
    fields = line[1:].split()
    if len(fields) != 2 or fields[0] not in META_KEYS:
        return False
    key, raw = fields
    if key == "rng":
        meta[key] = raw
        return True
    if key == "root":
        if any(ch not in "01" for ch in raw):
            raise HeaderError(f"bad root bitstring '{raw}'", line_no)
        meta[key] = raw
        return True
    try:
        meta[key] = int(raw)
    except ValueError:
        raise HeaderError(f"bad '{key}' comment '{line}'", line_no)
    return True


def read_dimacs(text: str) -> DimacsDocument:
    """Parse DIMACS text into a formula plus optional root and planted energy."""
    meta: Dict[str, Any] = {}
    comments: List[str] = []
    n_vars = n_clauses = None
    clauses: List[List[int]] = []
    clause_lines: List[int] = []
    current: List[int] = []
    current_line = 0

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if line[0] == "c":
            if n_vars is not None or not _parse_meta(line, line_no, meta):
                comments.append(line)
            continue
        if line[0] == "p":
            if n_vars is not None:
                raise HeaderError("second header line", line_no)
            fields = line[1:].split()
            if len(fields) != 3 or fields[0] != "cnf":
                raise HeaderError(f"bad header line '{line}'", line_no)
            try:
                n_vars, n_clauses = int(fields[1]), int(fields[2])
            except ValueError:
                raise HeaderError(f"bad header line '{line}'. Invalid number of variables or clauses",
                                  line_no)
            if n_vars < 0 or n_clauses < 0:
                raise HeaderError(f"negative counts in header '{line}'", line_no)
            continue
        if n_vars is None:
            raise HeaderError("clause before 'p cnf' header", line_no)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise LiteralRangeError(f"non-integer literal '{token}'", line_no)
            if not current:
                current_line = line_no
            if lit == 0:
                clauses.append(current)
                clause_lines.append(current_line)
                current = []
                continue
            if abs(lit) > n_vars:
                raise LiteralRangeError(f"literal {lit} outside 1..{n_vars}", line_no)
            current.append(lit)

    if n_vars is None:
        raise HeaderError("missing 'p cnf' header")
    if current:
        raise ClauseWidthError("last clause is not terminated by 0", current_line)
    if len(clauses) != n_clauses:
        raise ClauseCountError(f"header declares {n_clauses} clauses, found {len(clauses)}")

    k = meta.get("k", len(clauses[0]) if clauses else DEFAULT_K)
    for clause, line_no in zip(clauses, clause_lines):
        if len(clause) != k:
            raise ClauseWidthError(f"clause has {len(clause)} literals, expected {k}", line_no)
        if len({abs(v) for v in clause}) != k:
            raise DuplicateVariableError(f"clause {' '.join(map(str, clause))} repeats a variable",
                                         line_no)

    arr = np.array(clauses, dtype=np.int64).reshape(-1, k)
    formula = Formula(n_vars, k, np.abs(arr) - 1, np.sign(arr).astype(np.int8))

    root = None
    if "root" in meta:
        if len(meta["root"]) != n_vars:
            raise HeaderError(f"root has length {len(meta['root'])}, expected {n_vars}")
        root = Assignment.from_bitstring(meta["root"])
    return DimacsDocument(formula=formula, root=root, planted_energy=meta.get("planted_energy"),
                          seed=meta.get("seed"), rng=meta.get("rng"), comments=comments)


def write_dimacs(f: Formula, meta: Optional[Dict[str, Any]] = None) -> str:
    """Serialize ``f`` with metadata comments; ``read_dimacs`` inverts it exactly."""
    meta = meta or {}
    lines = [f"c k {f.k}"]
    if meta.get("seed") is not None:
        lines.append(f"c seed {int(meta['seed'])}")
    root = meta.get("root")
    if root is not None:
        bits = root.to_bitstring() if isinstance(root, Assignment) else str(root)
        if len(bits) != f.n_vars:
            raise DimacsError(f"root has length {len(bits)}, expected {f.n_vars}")
        lines.append(f"c root {bits}")
    if meta.get("planted_energy") is not None:
        lines.append(f"c planted_energy {int(meta['planted_energy'])}")
    if meta.get("rng"):
        lines.append(f"c rng {meta['rng']}")
    lines.append(f"p cnf {f.n_vars} {f.n_clauses}")
    lits = (f.variables + 1) * f.signs
    lines.extend(" ".join(str(int(v)) for v in row) + " 0" for row in lits)
    return "\n".join(lines) + "\n"
