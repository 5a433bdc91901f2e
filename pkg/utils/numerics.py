"""Finite-difference helpers shared by the theory checks."""

from typing import Callable


def central_difference(fn: Callable[[float], float], x: float, h: float) -> float:
    return (fn(x + h) - fn(x - h)) / (2.0 * h)


def numeric_derivative(fn: Callable[[float], float], x: float, h: float) -> float:
    """Centered difference with one Richardson step, error O(h^4)."""
    coarse = central_difference(fn, x, h)
    fine = central_difference(fn, x, h / 2.0)
    return (4.0 * fine - coarse) / 3.0


def second_difference(fn: Callable[[float], float], x: float, h: float) -> float:
    return fn(x + h) - 2.0 * fn(x) + fn(x - h)
