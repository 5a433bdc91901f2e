#!/usr/bin/env python3
"""
DIMACS reader/writer tests, including the metadata comments and the
line-numbered parse errors.
"""

import pytest

from formula import (Assignment, ClauseCountError, ClauseWidthError, DimacsError,
                     DuplicateVariableError, Formula, HeaderError, LiteralRangeError, read_dimacs,
                     write_dimacs)
from generators import GenConfig, gen_planted_energy, gen_uniform

SAMPLE = """c a hand-written instance
c k 3
c seed 42
c root 1011
c planted_energy 0
p cnf 4 2
1 -2 3 0
-1 2
4 0
"""


def test_read_sample_with_metadata():
    doc = read_dimacs(SAMPLE)
    assert doc.formula.n_vars == 4
    assert doc.formula.k == 3
    assert doc.formula.n_clauses == 2
    assert doc.seed == 42
    assert doc.root == Assignment.from_bitstring("1011")
    assert doc.planted_energy == 0
    assert doc.comments == ["c a hand-written instance"]
    # clauses may span lines
    assert doc.formula == Formula.from_signed(4, [[1, -2, 3], [-1, 2, 4]])


def test_planted_instance_survives_write_and_read():
    inst = gen_planted_energy(GenConfig(30, 3, alpha=4.0, seed=9, distribution="planted_energy",
                                        planted_energy=3))
    doc = read_dimacs(write_dimacs(inst.formula, inst.meta))
    assert doc.formula == inst.formula
    assert doc.root == inst.root
    assert doc.planted_energy == 3
    assert doc.seed == 9
    assert doc.rng == inst.meta["rng"]


def test_uniform_without_metadata():
    f = gen_uniform(GenConfig(10, 4, n_clauses=12, seed=1))
    text = write_dimacs(f)
    assert text.splitlines()[0] == "c k 4"
    doc = read_dimacs(text)
    assert doc.formula == f
    assert doc.root is None


def test_zero_clause_file_uses_k_comment():
    doc = read_dimacs("c k 5\np cnf 7 0\n")
    assert doc.formula.n_clauses == 0
    assert doc.formula.k == 5
    assert doc.formula.n_vars == 7


def test_missing_header():
    with pytest.raises(HeaderError):
        read_dimacs("1 2 3 0\n")
    with pytest.raises(HeaderError):
        read_dimacs("c only comments\n")


def test_bad_header_reports_line():
    with pytest.raises(HeaderError) as info:
        read_dimacs("c hello\np cnf x 2\n")
    assert info.value.line == 2
    assert "Line 2" in str(info.value)


def test_literal_out_of_range():
    with pytest.raises(LiteralRangeError) as info:
        read_dimacs("p cnf 3 1\n1 2 4 0\n")
    assert info.value.line == 2


def test_non_integer_literal():
    with pytest.raises(LiteralRangeError):
        read_dimacs("p cnf 3 1\n1 a 3 0\n")


def test_mixed_clause_widths():
    with pytest.raises(ClauseWidthError) as info:
        read_dimacs("p cnf 4 2\n1 2 3 0\n1 2 0\n")
    assert info.value.line == 3


def test_unterminated_clause():
    with pytest.raises(ClauseWidthError):
        read_dimacs("p cnf 3 1\n1 2 3\n")


def test_repeated_variable_in_clause():
    with pytest.raises(DuplicateVariableError):
        read_dimacs("p cnf 3 1\n1 -1 2 0\n")


def test_clause_count_mismatch():
    with pytest.raises(ClauseCountError):
        read_dimacs("p cnf 3 2\n1 2 3 0\n")


def test_root_length_must_match():
    with pytest.raises(HeaderError):
        read_dimacs("c root 10\np cnf 3 1\n1 2 3 0\n")


def test_dimacs_errors_share_a_base_class():
    for cls in (HeaderError, LiteralRangeError, ClauseWidthError, DuplicateVariableError,
                ClauseCountError):
        assert issubclass(cls, DimacsError)
