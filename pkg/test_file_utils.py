#!/usr/bin/env python3
"""
Output writer tests.
"""

import json

import pandas as pd
import pytest

from formula import read_dimacs
from generators import GenConfig, gen_planted
from utils.file_utils import read_text, write_output


def test_cnf_output_keeps_metadata(tmp_path):
    inst = gen_planted(GenConfig(20, 3, alpha=4.0, seed=3, distribution="planted"))
    path = tmp_path / "inst.cnf"
    write_output(str(path), (inst.formula, inst.meta))
    doc = read_dimacs(read_text(str(path)))
    assert doc.formula == inst.formula and doc.root == inst.root


def test_cnf_output_needs_a_formula(tmp_path):
    with pytest.raises(ValueError):
        write_output(str(tmp_path / "x.cnf"), {"not": "a formula"})


def test_json_output(tmp_path):
    path = tmp_path / "out.json"
    write_output(str(path), {"rate": 0.5, "rows": [1, 2]})
    assert json.loads(path.read_text()) == {"rate": 0.5, "rows": [1, 2]}


def test_csv_append_writes_header_once(tmp_path):
    path = tmp_path / "rows.csv"
    rows = [{"k": 3, "alpha": 10.0}, {"k": 3, "alpha": 12.0}]
    write_output(str(path), rows, append=True)
    write_output(str(path), rows[:1], append=True)
    frame = pd.read_csv(path)
    assert frame["alpha"].tolist() == [10.0, 12.0, 10.0]


def test_csv_overwrite_without_append(tmp_path):
    path = tmp_path / "rows.csv"
    write_output(str(path), [{"a": 1}])
    write_output(str(path), [{"a": 2}])
    assert pd.read_csv(path)["a"].tolist() == [2]


def test_unknown_extension(tmp_path):
    with pytest.raises(ValueError):
        write_output(str(tmp_path / "out.txt"), {})
