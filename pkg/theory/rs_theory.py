"""
Replica-symmetric cavity predictions for random K-SAT at clause ratio alpha.

Conventions used throughout:

    w      = (1 - rho) / 2                 probability that a neighbour pushes the wrong way
    Gamma  = (alpha K / 2) w^{K-1} / (1 - w^K)
    gamma  = alpha K / (2^K - 1)            large-alpha value of Gamma
    eps    = e^{-nu}

At finite nu the Bessel argument is z = alpha K B with
B = w^{K-1} e^{-nu/2} / D and D = 1 + w^K (eps - 1). Quantities of the form
1 / (2 e^Gamma - 1) are evaluated as e^{-Gamma} / (2 - e^{-Gamma}) so that
large Gamma never overflows.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from joblib import Parallel, delayed
from scipy.special import gammainc, gammaln

from formula import ContractError, ConvergenceError
from utils.numerics import numeric_derivative

from .bessel import DEFAULT_CONTROL, BigI, SeriesControl, big_i, log_bessel_i_orders

logger = logging.getLogger(__name__)

RHO_GRID = 2000


def _check_k_alpha(k: int, alpha: float):
    if k < 2:
        raise ContractError(f"K must be >= 2, got {k}")
    if alpha < 0:
        raise ContractError(f"alpha must be >= 0, got {alpha}")


def gamma_large_alpha(k: int, alpha: float) -> float:
    return alpha * k / (2 ** k - 1)


def big_gamma(k: int, alpha: float, rho) -> np.ndarray:
    w = (1 - np.asarray(rho, dtype=float)) / 2
    return alpha * k / 2 * w ** (k - 1) / (1 - w ** k)


def inv_two_exp_minus_one(g) -> np.ndarray:
    """1 / (2 e^g - 1) without overflow."""
    e = np.exp(-np.asarray(g, dtype=float))
    return e / (2 - e)


# ---------------------------------------------------------------------------
# nu = infinity: zero-field weight and the Poisson field law
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Rho0:
    rho0: float
    gamma_big: float

    @property
    def w(self) -> float:
        return (1 - self.rho0) / 2


def rho0_residual(k: int, alpha: float, rho) -> np.ndarray:
    return np.asarray(rho, dtype=float) - inv_two_exp_minus_one(big_gamma(k, alpha, rho))


def solve_rho0(k: int, alpha: float, control: SeriesControl = DEFAULT_CONTROL) -> Rho0:
    """Smallest root of rho = 1 / (2 e^{Gamma(rho)} - 1) in [0, 1].

    rho = 1 always solves the equation (every variable free); it is returned
    only when the residual stays negative on [0, 1).
    """
    _check_k_alpha(k, alpha)
    grid = np.linspace(0.0, 1.0, RHO_GRID + 1)[:-1]
    g = rho0_residual(k, alpha, grid)
    if g[0] > 0:
        raise AssertionError(f"rho0 residual is positive at rho=0 for k={k}, alpha={alpha}")
    crossings = np.flatnonzero(g >= 0)
    if crossings.size == 0:
        return Rho0(1.0, 0.0)

    hi_index = int(crossings[0])
    lo, hi = grid[hi_index - 1], grid[hi_index]
    while hi - lo > control.fixed_point_tol:
        mid = 0.5 * (lo + hi)
        if rho0_residual(k, alpha, mid) < 0:
            lo = mid
        else:
            hi = mid
    rho0 = 0.5 * (lo + hi)
    return Rho0(float(rho0), float(big_gamma(k, alpha, rho0)))


@dataclass(frozen=True)
class FieldWeights:
    """Weights p(n) for n in ``n`` (symmetric, -n_max..n_max) plus the mass beyond."""
    n: np.ndarray
    weights: np.ndarray
    tail: float = 0.0

    @property
    def n_max(self) -> int:
        return int(self.n.max()) if self.n.size else 0

    @property
    def total(self) -> float:
        return float(self.weights.sum())

    def weight(self, n: int) -> float:
        hit = np.flatnonzero(self.n == n)
        return float(self.weights[hit[0]]) if hit.size else 0.0

    def mean_abs_nonzero(self) -> float:
        nonzero = self.n != 0
        mass = self.weights[nonzero].sum()
        return float((np.abs(self.n[nonzero]) * self.weights[nonzero]).sum() / mass) if mass else 0.0

    def as_dict(self) -> Dict[int, float]:
        return {int(n): float(p) for n, p in zip(self.n, self.weights)}


def default_n_max(g: float) -> int:
    return int(math.ceil(g + 10 * math.sqrt(max(g, 0.0)))) + 10


def _poisson_log_weights(g: float, n_abs: np.ndarray) -> np.ndarray:
    if g == 0:
        return np.where(n_abs == 0, 0.0, -np.inf)
    return n_abs * math.log(g) - gammaln(n_abs + 1)


def field_weights_inf(k: int, alpha: float, n_max: Optional[int] = None,
                      control: SeriesControl = DEFAULT_CONTROL) -> FieldWeights:
    """rho_n = Gamma^|n| / |n|! / (2 e^Gamma - 1)."""
    if n_max is not None and n_max < 0:
        raise ContractError(f"n_max must be >= 0, got {n_max}")
    g = solve_rho0(k, alpha, control).gamma_big
    n_max = default_n_max(g) if n_max is None else n_max
    n = np.arange(-n_max, n_max + 1)
    log_norm = -g - math.log(2 - math.exp(-g))
    weights = np.exp(_poisson_log_weights(g, np.abs(n)) + log_norm)
    tail = 2.0 / (2 - math.exp(-g)) * float(gammainc(n_max + 1, g)) if g > 0 else 0.0
    return FieldWeights(n, weights, tail)


def planted_field_dist(k: int, alpha: float, n_max: Optional[int] = None) -> FieldWeights:
    """rho_plant(0) = e^-gamma, rho_plant(n) = gamma^|n| e^-gamma / (2 |n|!) otherwise."""
    _check_k_alpha(k, alpha)
    g = gamma_large_alpha(k, alpha)
    if n_max is not None and n_max < 0:
        raise ContractError(f"n_max must be >= 0, got {n_max}")
    n_max = default_n_max(g) if n_max is None else n_max
    n = np.arange(-n_max, n_max + 1)
    log_w = _poisson_log_weights(g, np.abs(n)) - g - np.where(n == 0, 0.0, math.log(2))
    tail = float(gammainc(n_max + 1, g)) if g > 0 else 0.0
    return FieldWeights(n, np.exp(log_w), tail)


WeightsLike = Union[FieldWeights, Mapping[int, float]]


def _as_mapping(p: WeightsLike) -> Tuple[Dict[int, float], float]:
    if isinstance(p, FieldWeights):
        return p.as_dict(), p.tail
    return {int(n): float(v) for n, v in p.items()}, 0.0


def tv_distance(p: WeightsLike, q: WeightsLike) -> float:
    """Total variation distance; tail masses are counted as fully disjoint."""
    pm, p_tail = _as_mapping(p)
    qm, q_tail = _as_mapping(q)
    support = set(pm) | set(qm)
    diff = sum(abs(pm.get(n, 0.0) - qm.get(n, 0.0)) for n in support)
    return 0.5 * (diff + p_tail + q_tail)


# ---------------------------------------------------------------------------
# finite nu
# ---------------------------------------------------------------------------

def b_coefficient(k: int, nu: float, r0: float) -> float:
    w = (1 - r0) / 2
    return w ** (k - 1) * math.exp(-nu / 2) / (1 + w ** k * math.expm1(-nu))


@dataclass(frozen=True)
class FiniteNuSolution:
    k: int
    alpha: float
    nu: float
    r0: float
    b: float
    z: float
    weights: FieldWeights
    iterations: int
    bessel: BigI

    @property
    def w(self) -> float:
        return (1 - self.r0) / 2


def finite_nu_weights(nu: float, z: float, log_i: float, n_max: int,
                      control: SeriesControl = DEFAULT_CONTROL) -> FieldWeights:
    """r_n = e^{nu |n|/2} I_n(z) / I(z, nu)."""
    logs = log_bessel_i_orders(n_max, z, control)
    n = np.arange(-n_max, n_max + 1)
    weights = np.exp(nu * np.abs(n) / 2 + logs[np.abs(n)] - log_i)
    return FieldWeights(n, weights, max(0.0, 1.0 - float(weights.sum())))


def solve_finite_nu(k: int, alpha: float, nu: float, n_max: Optional[int] = None,
                    control: SeriesControl = DEFAULT_CONTROL) -> FiniteNuSolution:
    """Damped iteration r0 <- (r0 + I_0(z(r0)) / I(z(r0), nu)) / 2 started from rho0."""
    _check_k_alpha(k, alpha)
    if not nu > 0:
        raise ContractError(f"nu must be > 0, got {nu}")
    r0 = solve_rho0(k, alpha, control).rho0
    for iteration in range(1, control.max_fp_iters + 1):
        z = alpha * k * b_coefficient(k, nu, r0)
        target = big_i(z, nu, control).r0
        new = 0.5 * r0 + 0.5 * target
        if abs(new - r0) < control.fixed_point_tol:
            r0 = new
            break
        r0 = new
    else:
        raise ConvergenceError(f"r0 iteration did not converge in {control.max_fp_iters} steps "
                               f"(k={k}, alpha={alpha}, nu={nu})", last_iterate=r0)

    b = b_coefficient(k, nu, r0)
    z = alpha * k * b
    bessel = big_i(z, nu, control)
    if n_max is None:
        n_max = default_n_max(z * math.exp(nu / 2) / 2)
    weights = finite_nu_weights(nu, z, bessel.log_value, n_max, control)
    return FiniteNuSolution(k, alpha, nu, r0, b, z, weights, iteration, bessel)


def _log_d(k: int, nu: float, w: float) -> float:
    return math.log1p(w ** k * math.expm1(-nu))


def free_energy_at_z(k: int, alpha: float, nu: float, z: float,
                     control: SeriesControl = DEFAULT_CONTROL) -> float:
    """F as a function of the Bessel argument, with r0 = I_0(z) / I(z, nu)."""
    bessel = big_i(z, nu, control)
    w = (1 - bessel.r0) / 2
    return -z * bessel.dz + bessel.log_value + alpha * _log_d(k, nu, w)


def free_energy(k: int, alpha: float, nu: float, control: SeriesControl = DEFAULT_CONTROL) -> float:
    """F(nu); F(inf) is omega(0)."""
    if math.isinf(nu) and nu > 0:
        return omega0(k, alpha, control).exact
    solution = solve_finite_nu(k, alpha, nu, n_max=0, control=control)
    return free_energy_at_z(k, alpha, nu, solution.z, control)


def envelope_residual(k: int, alpha: float, nu: float, rel_step: float = 1e-4,
                      control: SeriesControl = DEFAULT_CONTROL) -> float:
    """dF/dz at the solved fixed point, which vanishes when F is stationary there."""
    z = solve_finite_nu(k, alpha, nu, n_max=0, control=control).z
    if z == 0:
        return 0.0
    return numeric_derivative(lambda t: free_energy_at_z(k, alpha, nu, t, control), z, rel_step * z)


def _partial_nu_free_energy(k: int, alpha: float, nu: float, z: float,
                            control: SeriesControl) -> float:
    """dF/dnu holding z fixed."""
    bessel = big_i(z, nu, control)
    a, b, c, r0 = bessel.dz, bessel.dnu, bessel.dz_dnu, bessel.r0
    w = (1 - r0) / 2
    eps = math.exp(-nu)
    d = 1 + w ** k * (eps - 1)
    dlog_d = (k * w ** (k - 1) * (eps - 1) * r0 * b / 2 - eps * w ** k) / d
    return -z * (c - a * b) + b + alpha * dlog_d


@dataclass(frozen=True)
class GroundStateEnergy:
    """e0(nu) by several routes.

    ``e0`` is minus the total derivative of F (finite differences with
    Richardson extrapolation); ``e0_partial`` is minus the partial derivative
    at fixed Bessel argument, equal to it at the fixed point.
    """
    nu: float
    e0: float
    e0_partial: float
    e0_closed_form: float
    e0_first_order: float
    e0_large_alpha: float


def gs_energy(k: int, alpha: float, nu: float, rel_step: float = 1e-4,
              control: SeriesControl = DEFAULT_CONTROL) -> GroundStateEnergy:
    _check_k_alpha(k, alpha)
    if not nu > 0:
        raise ContractError(f"nu must be > 0, got {nu}")
    e0 = -numeric_derivative(lambda t: free_energy(k, alpha, t, control), nu, rel_step * nu)
    z = solve_finite_nu(k, alpha, nu, n_max=0, control=control).z
    e0_partial = -_partial_nu_free_energy(k, alpha, nu, z, control)

    base = solve_rho0(k, alpha, control)
    rho, g = base.rho0, base.gamma_big
    eps = math.exp(-nu)
    if g > 0:
        closed = eps * g * math.exp(g) * rho * (
            -g ** 2 * rho * (1 - rho) / (alpha * k)
            - (math.exp(-g) - 1 + g)
            + rho * (2 * g * math.exp(g) - g ** 2 - 2 * g)
            + math.exp(-g) / rho * (2 / k - 1) * (1 - rho) / 2)
    else:
        closed = 0.0
    first_order = eps * (g * (1 - rho) / k - g ** 2 * rho)
    large_alpha = gamma_large_alpha(k, alpha) / k * eps
    return GroundStateEnergy(nu, float(e0), float(e0_partial), float(closed),
                             float(first_order), float(large_alpha))


# ---------------------------------------------------------------------------
# entropies and rates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Omega0:
    exact: float
    approx: float

    @property
    def gap(self) -> float:
        return self.exact - self.approx


def omega0(k: int, alpha: float, control: SeriesControl = DEFAULT_CONTROL) -> Omega0:
    """Rate of P(SAT): omega(0) = log(2e^G - 1) - 2 G e^G / (2e^G - 1) + alpha log(1 - w^K)."""
    base = solve_rho0(k, alpha, control)
    g, w = base.gamma_big, base.w
    e = math.exp(-g)
    exact = g + math.log(2 - e) - 2 * g / (2 - e) + alpha * math.log1p(-w ** k)
    gam = gamma_large_alpha(k, alpha)
    approx = math.log(2) + alpha * math.log1p(-2.0 ** -k) + 0.5 * gam * math.exp(-gam)
    return Omega0(float(exact), float(approx))


@dataclass(frozen=True)
class RelativeEntropy:
    lower: float
    upper: float
    leading: float

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower


def relative_entropy_per_var(k: int, alpha: float,
                             control: SeriesControl = DEFAULT_CONTROL) -> RelativeEntropy:
    """Bounds on D(P_plant || P_sat) / N; the solution entropy is at most rho0 log 2."""
    base = solve_rho0(k, alpha, control)
    upper = -omega0(k, alpha, control).exact + alpha * math.log1p(-2.0 ** -k) + math.log(2)
    gam = gamma_large_alpha(k, alpha)
    return RelativeEntropy(upper - base.rho0 * math.log(2), upper, 0.5 * gam * math.exp(-gam))


# ---------------------------------------------------------------------------
# occurrences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Bias:
    value: float
    ell_plus: float
    ell_minus: float
    cavity_value: float
    regime: str
    in_validity: bool = True


def _cavity_occurrences(k: int, alpha: float, control: SeriesControl) -> Tuple[float, float]:
    base = solve_rho0(k, alpha, control)
    w, g = base.w, base.gamma_big
    q = w ** (k - 1)
    alpha_r = alpha / (1 - w ** k)
    scale = alpha_r * k / 2
    if g == 0:
        ratio = 1.0
    else:
        e = math.exp(-g)
        ratio = (1 - (1 - q) * e) / (-math.expm1(-g))
    return scale * ratio, scale * (1 - q)


def bias_theory(k: int, alpha: float, nu: Optional[float] = None, e: Optional[float] = None,
                control: SeriesControl = DEFAULT_CONTROL) -> Bias:
    """(<l+> - <l->) / (<l+> + <l->) over variables with positive field.

    Without ``nu`` or ``e`` the exact cavity value is returned. With ``nu``
    the first-order correction in e^{-nu} is applied, with ``e`` the
    first-order correction in the ground-state energy density.
    """
    _check_k_alpha(k, alpha)
    if nu is not None and e is not None:
        raise ContractError("select at most one of nu and e")
    ell_plus, ell_minus = _cavity_occurrences(k, alpha, control)
    total = ell_plus + ell_minus
    cavity = (ell_plus - ell_minus) / total if total else 0.0
    base = 1.0 / (2 ** k - 1)

    if nu is not None:
        value = base - alpha * k / (2 * (2 ** k - 1) ** 2) * math.exp(-nu)
        return Bias(value, ell_plus, ell_minus, cavity, "nu")
    if e is not None:
        limit = 2.0 ** (-k + 1) / k
        valid = e < limit
        if not valid:
            logger.warning("⚠ e=%.4g is outside the first-order regime e < %.4g", e, limit)
        if alpha == 0:
            raise ContractError("the energy correction is undefined at alpha = 0")
        bracket = 0.5 - 1.0 / (2 ** (k + 1) - 2) - 2 ** k / (alpha * k)
        value = base * (1 - e * k * 2 ** k * bracket)
        return Bias(value, ell_plus, ell_minus, cavity, "energy", valid)
    return Bias(cavity, ell_plus, ell_minus, cavity, "infinite")


@dataclass(frozen=True)
class OccurrenceGF:
    x: np.ndarray
    value: np.ndarray
    poisson: np.ndarray


def occurrence_gf(k: int, alpha: float, x, control: SeriesControl = DEFAULT_CONTROL) -> OccurrenceGF:
    """G(x) = e^{a' K (x-1)(1-q)} (2 e^{a' K x q / 2} - 1) / (2 e^{a' K q / 2} - 1)."""
    x = np.asarray(x, dtype=float)
    if (x < 0).any() or (x > 1.5).any():
        raise ContractError("G(x) is only evaluated for x in [0, 1.5]")
    base = solve_rho0(k, alpha, control)
    w = base.w
    q = w ** (k - 1)
    alpha_r = alpha / (1 - w ** k)
    g = alpha_r * k * q / 2
    # log(2e^{gx} - 1) - log(2e^g - 1), rearranged to avoid overflow
    log_ratio = g * (x - 1) + np.log(2 - np.exp(-g * x)) - math.log(2 - math.exp(-g))
    value = np.exp(alpha_r * k * (x - 1) * (1 - q) + log_ratio)
    return OccurrenceGF(x, value, np.exp(alpha * k * (x - 1)))


# ---------------------------------------------------------------------------
# cavity reading of the field law
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MessageLaw:
    """p_M(m): Poisson law of the warnings arriving from one side, and the field
    law it induces once contradictory configurations are excluded."""
    m: np.ndarray
    p_m: np.ndarray
    mean: float
    field: FieldWeights


def cavity_message_dist(k: int, alpha: float, m_max: Optional[int] = None,
                        control: SeriesControl = DEFAULT_CONTROL) -> MessageLaw:
    g = solve_rho0(k, alpha, control).gamma_big
    m_max = default_n_max(g) if m_max is None else m_max
    m = np.arange(m_max + 1)
    p_m = np.exp(_poisson_log_weights(g, m) - g)
    joint = np.outer(p_m, p_m)
    allowed = (m[:, None] == 0) | (m[None, :] == 0)
    n = np.arange(-m_max, m_max + 1)
    weights = np.zeros(n.size)
    diff = (m[:, None] - m[None, :])[allowed]
    np.add.at(weights, diff + m_max, joint[allowed])
    mass = weights.sum()
    return MessageLaw(m, p_m, g, FieldWeights(n, weights / mass, 0.0))


@dataclass(frozen=True)
class EnergyShiftLaw:
    """P(E, z) for one added variable: E = min(m+, m-), z = m+ - m-.

    ``cavity`` holds r_n proportional to sum_E P(E, n) e^{-nu E}.
    """
    energies: np.ndarray
    fields: np.ndarray
    table: np.ndarray
    cavity: FieldWeights


def energy_shift_dist(k: int, alpha: float, nu: float, m_max: Optional[int] = None,
                      control: SeriesControl = DEFAULT_CONTROL) -> EnergyShiftLaw:
    solution = solve_finite_nu(k, alpha, nu, n_max=0, control=control)
    g = solution.z * math.exp(nu / 2) / 2
    m_max = default_n_max(g) if m_max is None else m_max
    m = np.arange(m_max + 1)
    p_m = np.exp(_poisson_log_weights(g, m) - g)
    joint = np.outer(p_m, p_m)
    e_idx = np.minimum(m[:, None], m[None, :])
    z_idx = m[:, None] - m[None, :] + m_max
    table = np.zeros((m_max + 1, 2 * m_max + 1))
    np.add.at(table, (e_idx.ravel(), z_idx.ravel()), joint.ravel())
    fields = np.arange(-m_max, m_max + 1)
    reweighted = (table * np.exp(-nu * m)[:, None]).sum(axis=0)
    cavity = FieldWeights(fields, reweighted / reweighted.sum(), 0.0)
    return EnergyShiftLaw(m, fields, table, cavity)


def rho1_correction(k: int, alpha: float, control: SeriesControl = DEFAULT_CONTROL) -> float:
    """rho1 in r0 = rho0 + e^{-nu} rho1 + O(e^{-2 nu})."""
    base = solve_rho0(k, alpha, control)
    rho, g = base.rho0, base.gamma_big
    if g == 0:
        return 0.0
    w = base.w
    p = 2 * math.exp(g) - 1
    cost = w ** k / (1 - w ** k)
    x = 2 * g * math.exp(g) - g ** 2 - 2 * g
    f1 = (g ** 2 + (2 * math.exp(g) * g * cost - x) / p) / p

    def f0(r):
        return float(inv_two_exp_minus_one(big_gamma(k, alpha, r)))

    slope = numeric_derivative(f0, rho, 1e-6 * max(rho, 1e-6))
    return f1 / (1 - slope)


# ---------------------------------------------------------------------------
# rational-valued fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NonintegerCheck:
    k: int
    alpha: float
    root_exists: bool
    y_root: Optional[float]
    rhs: float
    alpha_s: Optional[float] = None
    bracket: Optional[Tuple[float, float]] = None


def noninteger_lhs(k: int, y) -> np.ndarray:
    """y / (1 - (1-y)^{K-1}); tends to 1/(K-1) as y -> 0."""
    y = np.minimum(np.asarray(y, dtype=float), 1.0)
    interior = y < 1.0
    # (1-y)^{K-1} vanishes at y = 1
    safe = np.where(interior, y, 0.0)
    denom = np.where(interior, -np.expm1((k - 1) * np.log1p(-safe)), 1.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(y > 0, y / denom, 1.0 / (k - 1))


def _noninteger_root(k: int, alpha: float, control: SeriesControl) -> Tuple[bool, Optional[float], float]:
    base = solve_rho0(k, alpha, control)
    rhs = base.rho0 * base.gamma_big / base.w if base.w > 0 else 0.0
    lo_val, hi_val = 1.0 / (k - 1), 1.0
    if not lo_val < rhs <= hi_val:
        return False, None, rhs
    lo, hi = 0.0, 1.0
    while hi - lo > control.fixed_point_tol:
        mid = 0.5 * (lo + hi)
        if noninteger_lhs(k, mid) < rhs:
            lo = mid
        else:
            hi = mid
    return True, 0.5 * (lo + hi), rhs


def noninteger_check(k: int, alpha: float, alpha_grid: Optional[Sequence[float]] = None,
                     scan: bool = True, control: SeriesControl = DEFAULT_CONTROL) -> NonintegerCheck:
    """Look for y in (0, 1] with y / (1 - (1-y)^{K-1}) = rho0 Gamma / w.

    With ``scan`` the largest alpha of ``alpha_grid`` admitting a root is
    reported as alpha_s, bracketed by the next grid point.
    """
    if k < 3:
        raise ContractError(f"the rational-field check needs K >= 3, got {k}")
    exists, y_root, rhs = _noninteger_root(k, alpha, control)
    alpha_s, bracket = None, None
    if scan:
        grid = np.linspace(1.0, 30.0, 581) if alpha_grid is None else np.asarray(alpha_grid, float)
        flags = [_noninteger_root(k, float(a), control)[0] for a in grid]
        hits = np.flatnonzero(flags)
        if hits.size:
            last = int(hits[-1])
            alpha_s = float(grid[last])
            upper = float(grid[last + 1]) if last + 1 < grid.size else math.inf
            bracket = (alpha_s, upper)
    return NonintegerCheck(k, alpha, exists, y_root, rhs, alpha_s, bracket)


# ---------------------------------------------------------------------------
# aggregate
# ---------------------------------------------------------------------------

@dataclass
class TheoryPoint:
    k: int
    alpha: float
    nu: Optional[float]
    rho0: float
    gamma_big: float
    gamma: float
    b: Optional[float]
    field_weights: Dict[int, float]
    free_energy: float
    gs_energy: Optional[float]
    omega0: float
    omega0_approx: float
    sigma_per_var: Tuple[float, float]
    sigma_leading: float
    bias: float
    extras: Dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        payload = asdict(self)
        payload["nu"] = "inf" if self.nu is None else self.nu
        payload["field_weights"] = {str(n): p for n, p in self.field_weights.items()}
        payload["sigma_per_var"] = list(self.sigma_per_var)
        return payload

    def to_row(self) -> dict:
        return {"k": self.k, "alpha": self.alpha, "nu": "inf" if self.nu is None else self.nu,
                "rho0": self.rho0, "F": self.free_energy, "e0": self.gs_energy,
                "omega0": self.omega0, "sigma_lo": self.sigma_per_var[0],
                "sigma_hi": self.sigma_per_var[1], "bias": self.bias}


def theory_point(k: int, alpha: float, nu: Optional[float] = None,
                 control: SeriesControl = DEFAULT_CONTROL) -> TheoryPoint:
    """Every prediction at (k, alpha, nu); ``nu=None`` (or inf) is the satisfiable limit."""
    if nu is not None and math.isinf(nu):
        nu = None
    base = solve_rho0(k, alpha, control)
    om = omega0(k, alpha, control)
    sigma = relative_entropy_per_var(k, alpha, control)
    extras = {}
    if nu is None:
        weights = field_weights_inf(k, alpha, control=control)
        rho0, b, f_nu, e0 = base.rho0, None, om.exact, None
        bias = bias_theory(k, alpha, control=control).value
    else:
        solution = solve_finite_nu(k, alpha, nu, control=control)
        weights = solution.weights
        rho0, b = solution.r0, solution.b
        f_nu = free_energy_at_z(k, alpha, nu, solution.z, control)
        energies = gs_energy(k, alpha, nu, control=control)
        e0 = energies.e0
        extras = asdict(energies)
        bias = bias_theory(k, alpha, nu=nu, control=control).value
    return TheoryPoint(k=k, alpha=alpha, nu=nu, rho0=rho0, gamma_big=base.gamma_big,
                       gamma=gamma_large_alpha(k, alpha), b=b, field_weights=weights.as_dict(),
                       free_energy=f_nu, gs_energy=e0, omega0=om.exact, omega0_approx=om.approx,
                       sigma_per_var=(sigma.lower, sigma.upper), sigma_leading=sigma.leading,
                       bias=bias, extras=extras)


def theory_grid(k: int, alphas: Sequence[float], nus: Sequence[Optional[float]] = (None,),
                jobs: int = 1, control: SeriesControl = DEFAULT_CONTROL) -> List[dict]:
    """CSV rows for every (alpha, nu) pair, in grid order."""
    pairs = [(float(a), nu) for a in alphas for nu in nus]
    points = Parallel(n_jobs=jobs)(delayed(theory_point)(k, a, nu, control) for a, nu in pairs)
    logger.info("📊 evaluated %d theory points for K=%d", len(points), k)
    return [p.to_row() for p in points]
