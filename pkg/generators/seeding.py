"""Seed derivation and PRNG construction.

Per-instance seeds come from SplitMix64 mixing of (master seed, index), so a
batch can be generated in any order or on any number of workers and still
produce the same instances.
"""

import numpy as np

MASK64 = (1 << 64) - 1
RNG_NAME = f"numpy-philox/splitmix64/numpy-{np.__version__}"


def splitmix64(x: int) -> int:
    x = (int(x) + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def derive_seed(master: int, index: int) -> int:
    """64-bit child seed of ``master`` for position ``index``."""
    return splitmix64(splitmix64(int(master) & MASK64) ^ (int(index) & MASK64))


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=int(seed) & MASK64))
