"""Tunable defaults: in-code values, overlaid by config/warpsat_config.json and WARPSAT_JOBS."""

import copy
import json
import logging
import os

logger = logging.getLogger(__name__)

CONFIG_PATH = os.path.join(os.path.dirname(__file__), "warpsat_config.json")
JOBS_ENV = "WARPSAT_JOBS"

DEFAULT_CONFIG = {
    "wp": {
        "max_iters": None,
        "restarts": 0,
        "schedule": "sync",
        "residual_cap": 24,
        "greedy_steps_factor": 100,
        "greedy_restarts": 10,
    },
    "series": {
        "rel_tol": 1e-14,
        "max_terms": 500,
        "fixed_point_tol": 1e-12,
        "max_fp_iters": 10000,
    },
    "sweep": {
        "n_vars": 200,
        "k": 3,
        "alpha": 10.0,
        "e_list": [0, 5, 10, 15, 20, 30, 50, 60],
        "trials": 100,
        "master_seed": 1,
    },
    "jobs": 1,
    "database": {
        "path": "warpsat_runs.db",
    },
}


def deep_merge(base, override):
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path=None):
    """Defaults merged with the JSON file (if present) and the WARPSAT_JOBS override"""
    config_path = path or CONFIG_PATH
    config = copy.deepcopy(DEFAULT_CONFIG)
    if os.path.exists(config_path):
        with open(config_path, 'r') as f:
            config = deep_merge(config, json.load(f))
    elif path is not None:
        logger.warning("⚠ Config file %s not found, using defaults", path)

    jobs = os.environ.get(JOBS_ENV)
    if jobs:
        try:
            config["jobs"] = int(jobs)
        except ValueError:
            logger.warning("⚠ Ignoring %s=%r, not an integer", JOBS_ENV, jobs)
    return config


__all__ = ['DEFAULT_CONFIG', 'CONFIG_PATH', 'JOBS_ENV', 'deep_merge', 'load_config']
