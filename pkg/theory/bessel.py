"""
Modified Bessel functions of integer order by power series, and the
two-sided sum

    I(z, nu) = sum_n e^{nu |n| / 2} I_n(z)
             = 2 e^{z cosh(nu/2)} - I_0(z) - 2 sum_{n>=1} e^{-nu n / 2} I_n(z)

with its first derivatives. Everything is accumulated in the log domain and
every value carries a truncation bound.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp

from formula import ContractError, SeriesOverflowError

logger = logging.getLogger(__name__)

Z_MAX = 500.0


@dataclass(frozen=True)
class SeriesControl:
    rel_tol: float = 1e-14
    max_terms: int = 500
    fixed_point_tol: float = 1e-12
    max_fp_iters: int = 10_000

    def __post_init__(self):
        if self.rel_tol <= 0:
            raise ContractError(f"rel_tol must be > 0, got {self.rel_tol}")
        if self.max_terms < 1 or self.max_fp_iters < 1:
            raise ContractError("max_terms and max_fp_iters must be >= 1")
        if self.fixed_point_tol <= 0:
            raise ContractError(f"fixed_point_tol must be > 0, got {self.fixed_point_tol}")

    @classmethod
    def from_dict(cls, values: dict) -> "SeriesControl":
        return cls(**{k: v for k, v in values.items() if k in cls.__dataclass_fields__})


DEFAULT_CONTROL = SeriesControl()


@dataclass(frozen=True)
class SeriesValue:
    """``value`` with relative truncation bound ``error`` after ``terms`` terms."""
    value: float
    error: float
    terms: int


def log_bessel_i(n: int, z: float, control: SeriesControl = DEFAULT_CONTROL) -> SeriesValue:
    """log I_n(z) from sum_m (z/2)^{2m+n} / (m! (m+n)!)."""
    n = abs(int(n))
    if z < 0:
        raise ContractError(f"z must be >= 0, got {z}")
    if z == 0:
        return SeriesValue(0.0 if n == 0 else -math.inf, 0.0, 1)
    if z > Z_MAX:
        raise SeriesOverflowError(f"z={z} is beyond the plain series regime (z <= {Z_MAX}); "
                                  "use an exponentially scaled Bessel evaluation")

    m = np.arange(control.max_terms, dtype=float)
    log_terms = (2 * m + n) * math.log(z / 2) - gammaln(m + 1) - gammaln(m + n + 1)
    running = np.logaddexp.accumulate(log_terms)
    peak = int(np.argmax(log_terms))
    small = np.flatnonzero(log_terms[peak:] < running[peak:] + math.log(control.rel_tol))
    if small.size == 0:
        raise SeriesOverflowError(f"I_{n}({z}) needs more than {control.max_terms} terms")
    stop = peak + int(small[0])

    # past the peak the term ratio is decreasing, so the tail is geometric
    ratio = (z / 2) ** 2 / ((stop + 1) * (stop + n + 1))
    error = math.exp(log_terms[stop] - running[stop]) * ratio / (1 - ratio)
    return SeriesValue(float(running[stop]), error, stop + 1)


def bessel_i(n: int, z: float, control: SeriesControl = DEFAULT_CONTROL) -> float:
    return math.exp(log_bessel_i(n, z, control).value)


def log_bessel_i_orders(n_max: int, z: float, control: SeriesControl = DEFAULT_CONTROL) -> np.ndarray:
    """log I_n(z) for n = 0 .. n_max."""
    return np.array([log_bessel_i(n, z, control).value for n in range(n_max + 1)])


@dataclass(frozen=True)
class BigI:
    """I(z, nu) in log form plus ratios of its derivatives to I.

    r0 = I_0 / I, dz = I_z / I, dnu = I_nu / I, dz_dnu = I_{z nu} / I.
    """
    z: float
    nu: float
    log_value: float
    r0: float
    dz: float
    dnu: float
    dz_dnu: float
    error: float
    terms: int

    @property
    def value(self) -> float:
        return math.exp(self.log_value)


def big_i(z: float, nu: float, control: SeriesControl = DEFAULT_CONTROL) -> BigI:
    if not nu > 0:
        raise ContractError(f"nu must be > 0, got {nu}")
    if z < 0:
        raise ContractError(f"z must be >= 0, got {z}")
    ch, sh = math.cosh(nu / 2), math.sinh(nu / 2)
    zc = z * ch
    log_i0 = log_bessel_i(0, z, control).value

    # S = sum e^{-nu n/2} I_n, T = sum n e^{-nu n/2} I_n, both scaled by e^{-zc}
    s_logs, t_logs = [], []
    n = 0
    bound = 0.0
    while True:
        n += 1
        if n > control.max_terms:
            raise SeriesOverflowError(f"I({z}, {nu}) needs more than {control.max_terms} orders")
        log_term = -nu * n / 2 + log_bessel_i(n, z, control).value - zc
        s_logs.append(log_term)
        t_logs.append(log_term + math.log(n))
        partial = np.logaddexp(log_i0 - zc, math.log(2) + logsumexp(s_logs))
        if log_term < partial + math.log(control.rel_tol):
            q = math.exp(-nu / 2)
            bound = math.exp(log_term - partial) * q / (1 - q)
            break

    scaled_s = math.exp(logsumexp(s_logs))
    scaled_t = math.exp(logsumexp(t_logs))
    scaled_i0 = math.exp(log_i0 - zc)
    rest = 2.0 - scaled_i0 - 2.0 * scaled_s
    log_value = zc + math.log(rest)

    r0 = math.exp(log_i0 - log_value)
    dz = ch + sh * r0
    dnu = z * sh * math.exp(zc - log_value) + scaled_t * math.exp(zc - log_value)
    dz_dnu = sh / 2 + ch * dnu + ch / 2 * r0
    error = bound * (scaled_i0 + 2 * scaled_s) / rest
    return BigI(z=z, nu=nu, log_value=log_value, r0=r0, dz=dz, dnu=dnu, dz_dnu=dz_dnu,
                error=error, terms=n)


def big_i_dz(z: float, nu: float, control: SeriesControl = DEFAULT_CONTROL) -> float:
    """I^{(1,0)}(z, nu), the z-derivative of I."""
    result = big_i(z, nu, control)
    return result.value * result.dz


def big_i_direct(z: float, nu: float, n_max: int = 200,
                 control: SeriesControl = DEFAULT_CONTROL) -> float:
    """log of the symmetric truncation of sum_n e^{nu |n|/2} I_n(z); reference only."""
    logs = log_bessel_i_orders(n_max, z, control)
    n = np.arange(n_max + 1)
    weighted = nu * n / 2 + logs
    return float(np.logaddexp(weighted[0], math.log(2) + logsumexp(weighted[1:])))
