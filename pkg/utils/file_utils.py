import json
import os

import pandas as pd

from formula import Formula, write_dimacs


def read_text(file_path):
    with open(file_path, "r", encoding="utf-8") as f:
        return f.read()


def write_cnf(file_path, payload):
    """``payload`` is a Formula or a (Formula, meta) pair"""
    formula, meta = payload if isinstance(payload, tuple) else (payload, None)
    if not isinstance(formula, Formula):
        raise ValueError(".cnf output needs a Formula")
    with open(file_path, "w", encoding="utf-8") as f:
        f.write(write_dimacs(formula, meta))


def write_json(file_path, payload):
    with open(file_path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, default=str)
        f.write("\n")


def write_csv(file_path, payload, append=False):
    """Rows (list of dicts or a DataFrame); ``append`` adds rows to an existing file"""
    frame = payload if isinstance(payload, pd.DataFrame) else pd.DataFrame(list(payload))
    exists = os.path.exists(file_path) and os.path.getsize(file_path) > 0
    if append and exists:
        frame.to_csv(file_path, mode="a", header=False, index=False)
    else:
        frame.to_csv(file_path, index=False)


def write_output(file_path, payload, append=False):
    ext = os.path.splitext(file_path)[1].lower()
    if ext == ".cnf":
        return write_cnf(file_path, payload)
    elif ext == ".json":
        return write_json(file_path, payload)
    elif ext == ".csv":
        return write_csv(file_path, payload, append=append)
    else:
        raise ValueError("Unsupported file type: Only .cnf, .json, .csv are allowed")
