import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from formula import Formula  # noqa: E402
from generators import GenConfig, gen_planted  # noqa: E402


@pytest.fixture
def small_formula():
    # (x1 v x2 v x3) & (~x1 v x2 v ~x4) & (~x2 v ~x3 v x4)
    return Formula.from_signed(4, [[1, 2, 3], [-1, 2, -4], [-2, -3, 4]])


@pytest.fixture
def make_planted():
    """Factory for planted instances: make_planted(n_vars, alpha, seed, k=3)."""
    def build(n_vars, alpha, seed, k=3):
        return gen_planted(GenConfig(n_vars, k, alpha=alpha, seed=seed, distribution="planted"))
    return build
