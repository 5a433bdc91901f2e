"""
Experiments comparing Warning Propagation runs and measured instance
statistics with the cavity predictions.

Every trial derives its seeds from the master seed and its position, and
joblib returns results in submission order, so aggregates do not depend on
the number of workers.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed
from scipy.stats import binom

from formula import degree_histogram, energy, flip_fields, occurrence_counts
from generators import (GenConfig, derive_seed, gen_planted, gen_planted_energy, gen_uniform,
                        make_rng, sample_psat_rejection)
from oracle import enumerate_ground_truth, exact_fields, is_satisfiable
from solver import WpParams, wp_decide
from theory import gamma_large_alpha, omega0, planted_field_dist, solve_rho0, tv_distance

logger = logging.getLogger(__name__)


def _mean_se(values: Sequence[float]):
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return math.nan, math.nan
    se = values.std(ddof=1) / math.sqrt(values.size) if values.size > 1 else 0.0
    return float(values.mean()), float(se)


def _rate_se(successes: int, trials: int):
    p = successes / trials
    return p, math.sqrt(p * (1 - p) / trials)


def _clean(value):
    return None if isinstance(value, float) and math.isnan(value) else value


# ---------------------------------------------------------------------------
# finite-energy sweep
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepConfig:
    n_vars: int = 200
    k: int = 3
    alpha: float = 10.0
    e_list: Sequence[int] = (0, 5, 10, 15, 20, 30, 50, 60)
    trials: int = 100
    master_seed: int = 1
    wp: WpParams = field(default_factory=WpParams)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")

    def to_dict(self) -> dict:
        payload = asdict(self)
        payload["e_list"] = list(self.e_list)
        return payload


@dataclass
class SweepRecord:
    """Aggregates for one planted energy E.

    Rates run over all trials; the means are over converged runs only and
    are NaN when no run converged.
    """
    E: int
    trials: int
    convergence_rate: float
    convergence_rate_se: float
    mean_iterations: float
    mean_iterations_se: float
    mean_unassigned: float
    mean_unassigned_se: float
    mean_agree_with_root: float
    mean_agree_with_root_se: float
    mean_final_energy_gap: float
    mean_final_energy_gap_se: float
    n_converged: int
    sat_rate: float
    runs: List[dict] = field(default_factory=list, repr=False)

    def to_row(self) -> dict:
        row = {k: _clean(v) for k, v in asdict(self).items() if k != "runs"}
        return row


def instance_seed(master_seed: int, e: int, trial: int) -> int:
    return derive_seed(derive_seed(master_seed, e), trial)


def run_trial(cfg: SweepConfig, e: int, trial: int) -> dict:
    seed = instance_seed(cfg.master_seed, e, trial)
    gen_cfg = GenConfig(cfg.n_vars, cfg.k, alpha=cfg.alpha, seed=seed,
                        distribution="planted_energy", planted_energy=e)
    instance = gen_planted_energy(gen_cfg)
    decision = wp_decide(instance.formula, derive_seed(seed, 1), cfg.wp)
    record = decision.to_record(instance.root)
    record.update({"E": e, "trial": trial, "instance_seed": seed})
    return record


def aggregate(e: int, runs: List[dict]) -> SweepRecord:
    converged = [r for r in runs if r["converged"]]
    rate, rate_se = _rate_se(len(converged), len(runs))
    iters = _mean_se([r["iterations"] for r in converged])
    unassigned = _mean_se([r["unassigned"] for r in converged])
    agree = _mean_se([r["agree_with_root"] for r in converged if r["agree_with_root"] is not None])
    gap = _mean_se([abs(r["final_energy"] - e) for r in converged])
    sat_rate = sum(r["verdict"] == "SAT" for r in runs) / len(runs)
    return SweepRecord(e, len(runs), rate, rate_se, *iters, *unassigned, *agree, *gap,
                       len(converged), sat_rate, runs)


def finite_energy_sweep(cfg: SweepConfig, jobs: int = 1) -> List[SweepRecord]:
    """Planted instances at every E of ``cfg.e_list``, ``cfg.trials`` WP runs each."""
    tasks = [(e, t) for e in cfg.e_list for t in range(cfg.trials)]
    logger.info("🔄 finite-energy sweep: N=%d alpha=%g, %d energies x %d trials",
                cfg.n_vars, cfg.alpha, len(cfg.e_list), cfg.trials)
    runs = Parallel(n_jobs=jobs)(delayed(run_trial)(cfg, e, t) for e, t in tasks)
    records = []
    for e in cfg.e_list:
        record = aggregate(e, [r for r in runs if r["E"] == e])
        logger.info("📊 E=%d: convergence %.2f, iterations %.2f, unassigned %.2f",
                    e, record.convergence_rate, record.mean_iterations, record.mean_unassigned)
        records.append(record)
    return records


# ---------------------------------------------------------------------------
# instance statistics
# ---------------------------------------------------------------------------

@dataclass
class FieldStats:
    histogram: Dict[int, float]
    tv_distance: float
    zero_fraction: float
    zero_fraction_se: float
    expected_zero_fraction: float
    n_samples: int

    def to_dict(self) -> dict:
        payload = asdict(self)
        payload["histogram"] = {str(n): p for n, p in sorted(self.histogram.items())}
        return payload


def _planted_fields(k: int, alpha: float, n_vars: int, seed: int) -> np.ndarray:
    instance = gen_planted(GenConfig(n_vars, k, alpha=alpha, seed=seed, distribution="planted"))
    # at a zero-energy root, z_i carries the sign of the root value
    return flip_fields(instance.formula, instance.root)


def field_statistics(k: int, alpha: float, n_vars: int, instances: int, seed: int,
                     jobs: int = 1) -> FieldStats:
    """Histogram of root flip fields over planted instances against rho_plant."""
    fields = Parallel(n_jobs=jobs)(delayed(_planted_fields)(k, alpha, n_vars, derive_seed(seed, i))
                                   for i in range(instances))
    z = np.concatenate(fields)
    values, counts = np.unique(z, return_counts=True)
    histogram = {int(v): c / z.size for v, c in zip(values, counts)}
    zero, zero_se = _rate_se(int((z == 0).sum()), z.size)
    stats = FieldStats(histogram, tv_distance(histogram, planted_field_dist(k, alpha)), zero,
                       zero_se, math.exp(-gamma_large_alpha(k, alpha)), int(z.size))
    logger.info("📊 field statistics: TV=%.4f, zero fraction %.4f (expected %.4f)",
                stats.tv_distance, stats.zero_fraction, stats.expected_zero_fraction)
    return stats


@dataclass
class BiasStats:
    true_mean: float
    true_se: float
    false_mean: float
    false_se: float
    theory: float
    n_true: int
    n_false: int


def _planted_biases(k: int, alpha: float, n_vars: int, seed: int):
    instance = gen_planted(GenConfig(n_vars, k, alpha=alpha, seed=seed, distribution="planted"))
    ell_plus, ell_minus = occurrence_counts(instance.formula)
    degree = ell_plus + ell_minus
    keep = degree > 0
    bias = (ell_plus[keep] - ell_minus[keep]) / degree[keep]
    root = instance.root.values[keep]
    return bias[root == 1], bias[root == 0]


def bias_statistics(k: int, alpha: float, n_vars: int, instances: int, seed: int,
                    jobs: int = 1) -> BiasStats:
    """Mean of (l+ - l-) / (l+ + l-) split by root value, against 1 / (2^K - 1)."""
    parts = Parallel(n_jobs=jobs)(delayed(_planted_biases)(k, alpha, n_vars, derive_seed(seed, i))
                                  for i in range(instances))
    true_bias = np.concatenate([p[0] for p in parts])
    false_bias = np.concatenate([p[1] for p in parts])
    true_mean, true_se = _mean_se(true_bias)
    false_mean, false_se = _mean_se(false_bias)
    return BiasStats(true_mean, true_se, false_mean, false_se, 1.0 / (2 ** k - 1),
                     int(true_bias.size), int(false_bias.size))


@dataclass
class DegreeStats:
    histogram: Dict[int, float]
    tv_distance: float
    mean_degree: float
    expected_mean: float
    n_samples: int


def _uniform_degrees(cfg: GenConfig) -> np.ndarray:
    return degree_histogram(gen_uniform(cfg))


def degree_statistics(k: int, alpha: float, n_vars: int, instances: int, seed: int,
                      jobs: int = 1) -> DegreeStats:
    """Degree law of uniform instances against Binomial(M, K/N)."""
    cfgs = [GenConfig(n_vars, k, alpha=alpha, seed=derive_seed(seed, i)) for i in range(instances)]
    counts = Parallel(n_jobs=jobs)(delayed(_uniform_degrees)(c) for c in cfgs)
    width = max(c.size for c in counts)
    total = np.zeros(width)
    for c in counts:
        total[:c.size] += c
    empirical = total / total.sum()
    m = cfgs[0].m
    support = np.arange(max(width, m + 1))
    expected = binom.pmf(support, m, k / n_vars)
    histogram = {int(d): float(p) for d, p in enumerate(empirical) if p > 0}
    tv = tv_distance(histogram, {int(d): float(p) for d, p in zip(support, expected)})
    return DegreeStats(histogram, tv, float((np.arange(width) * empirical).sum()),
                       k * m / n_vars, int(total.sum()))


@dataclass
class PsatRate:
    accepted: int
    draws: int
    rate: float
    log_rate_per_var: Optional[float]
    log_rate_se: Optional[float]
    omega0: float


def _sat_count(k: int, alpha: float, n_vars: int, seed: int, start: int, stop: int) -> int:
    return sum(is_satisfiable(gen_uniform(GenConfig(n_vars, k, alpha=alpha,
                                                    seed=derive_seed(seed, d))))
               for d in range(start, stop))


def psat_rate(k: int, alpha: float, n_vars: int, draws: int, seed: int, jobs: int = 1,
              chunk: int = 1000) -> PsatRate:
    """Fraction of satisfiable uniform draws; (1/N) log of it estimates omega(0)."""
    bounds = [(s, min(s + chunk, draws)) for s in range(0, draws, chunk)]
    hits = Parallel(n_jobs=jobs)(delayed(_sat_count)(k, alpha, n_vars, seed, a, b)
                                 for a, b in bounds)
    accepted = int(sum(hits))
    rate, rate_se = _rate_se(accepted, draws) if draws else (0.0, 0.0)
    log_rate = math.log(rate) / n_vars if accepted else None
    log_se = rate_se / (rate * n_vars) if accepted else None
    result = PsatRate(accepted, draws, rate, log_rate, log_se, omega0(k, alpha).exact)
    logger.info("📊 P(SAT) at N=%d alpha=%g: %d/%d accepted", n_vars, alpha, accepted, draws)
    return result


# ---------------------------------------------------------------------------
# cross-check against the exhaustive oracle
# ---------------------------------------------------------------------------

VALIDATION_ALPHAS = (2.0, 4.0, 8.0, 10.0)
SAT_SAMPLE_ALPHA = 10.0


@dataclass
class ValidationReport:
    n_instances: int
    sat_declared: int
    constructiveness_violations: int
    energy_violations: int
    equality_violations: int
    sat_zero_fraction: Optional[float]
    sat_samples: int
    sat_zero_theory: float
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _validate_instance(seed: int, index: int, k: int, params: WpParams) -> dict:
    s = derive_seed(seed, index)
    rng = make_rng(s)
    n = int(rng.integers(8, 17))
    alpha = float(rng.choice(VALIDATION_ALPHAS))
    gen_cfg = GenConfig(n, k, alpha=alpha, seed=derive_seed(s, 2))
    planted = index % 2 == 0
    formula = gen_planted(gen_cfg).formula if planted else gen_uniform(gen_cfg)
    decision = wp_decide(formula, derive_seed(s, 1), params)
    truth = enumerate_ground_truth(formula, optima_cap=0)
    witness_ok = decision.witness is None or energy(formula, decision.witness) == 0
    return {"index": index, "n_vars": n, "alpha": alpha, "planted": planted,
            "sat": decision.is_sat, "final_energy": decision.final_energy, "e0": truth.e0,
            "witness_ok": witness_ok}


def oracle_validation(seed: int, n_instances: int, k: int = 3, sat_samples: int = 20,
                      params: Optional[WpParams] = None, jobs: int = 1) -> ValidationReport:
    """WP decisions against exhaustive ground truth on mixed small instances.

    ``sat_samples`` satisfiable uniform formulas at N=12, alpha=10 are drawn by
    rejection; their exact zero-field fraction is reported next to the
    theoretical rho0 at the same density.
    """
    params = params or WpParams()
    rows = Parallel(n_jobs=jobs)(delayed(_validate_instance)(seed, i, k, params)
                                 for i in range(n_instances))
    failures = []
    constructive = energy_bad = equality_bad = 0
    for row in rows:
        if row["sat"] and (row["e0"] != 0 or not row["witness_ok"]):
            constructive += 1
            failures.append(f"instance {row['index']}: SAT declared but e0={row['e0']}")
        if row["final_energy"] < row["e0"]:
            energy_bad += 1
            failures.append(f"instance {row['index']}: final energy {row['final_energy']} "
                            f"below e0={row['e0']}")
        if row["sat"] and row["final_energy"] != row["e0"]:
            equality_bad += 1
            failures.append(f"instance {row['index']}: SAT with final energy {row['final_energy']}")

    fractions = []
    for j in range(sat_samples):
        cfg = GenConfig(12, k, alpha=SAT_SAMPLE_ALPHA, seed=derive_seed(seed, 1_000_000 + j))
        draw = sample_psat_rejection(cfg, max_attempts=50_000)
        if draw.formula is not None:
            fractions.append(exact_fields(draw.formula).zero_fraction)
    zero_fraction = float(np.mean(fractions)) if fractions else None

    report = ValidationReport(n_instances, sum(r["sat"] for r in rows), constructive, energy_bad,
                              equality_bad, zero_fraction, len(fractions),
                              solve_rho0(k, SAT_SAMPLE_ALPHA).rho0, failures)
    logger.info("%s oracle validation: %d instances, %d failures", "✅" if report.ok else "❌",
                n_instances, len(failures))
    return report
