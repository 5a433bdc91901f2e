#!/usr/bin/env python3
"""
warpsat command line: instance generation, Warning Propagation solving,
cavity-theory evaluation and experiments.

Exit codes: 10 SAT, 20 UNSAT_DECLARED, 0 success/help, 2 bad flags, 3 I/O or
input format failure, 4 a theory evaluation that left its numeric regime.
"""

import argparse
import json
import logging
import math
import sys

import pandas as pd

from config import load_config
from database import ResultsDatabase
from experiments import (SweepConfig, bias_statistics, degree_statistics, field_statistics,
                         finite_energy_sweep, oracle_validation, psat_rate)
from formula import (ContractError, ConvergenceError, DimacsError, SeriesOverflowError,
                     read_dimacs, write_dimacs)
from generators import RNG_NAME, GenConfig, generate
from solver import WpParams, wp_decide
from theory import SeriesControl, theory_grid, theory_point
from utils.file_utils import read_text, write_output

logger = logging.getLogger("warpsat")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERIC = 4
EXIT_SAT = 10
EXIT_UNSAT = 20

DIST_FLAGS = {"uniform": "uniform", "planted": "planted", "planted-e": "planted_energy"}


def build_parser():
    parser = argparse.ArgumentParser(prog="warpsat", description="Random K-SAT laboratory")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging; per-trial JSON detail")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    parser.add_argument("--config", help="JSON config file overriding the defaults")
    sub = parser.add_subparsers(dest="command")

    gen = sub.add_parser("gen", help="generate an instance as DIMACS")
    gen.add_argument("--dist", choices=sorted(DIST_FLAGS), default="uniform")
    gen.add_argument("-n", "--n-vars", type=int, required=True)
    gen.add_argument("-m", "--n-clauses", type=int)
    gen.add_argument("--alpha", type=float)
    gen.add_argument("-k", type=int, default=3)
    gen.add_argument("-E", "--energy", type=int, default=0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output", help="write to a .cnf or .json file instead of stdout")
    gen.add_argument("--format", choices=("dimacs", "json"), default="dimacs")

    solve = sub.add_parser("solve", help="run Warning Propagation on a DIMACS file")
    solve.add_argument("file")
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--max-iters", type=int)
    solve.add_argument("--restarts", type=int)
    solve.add_argument("--schedule", choices=("sync", "random-async"))
    solve.add_argument("-o", "--output", help="also write the decision JSON to this file")

    theory = sub.add_parser("theory", help="evaluate the cavity predictions")
    theory.add_argument("-k", type=int, default=3)
    theory.add_argument("--alpha", type=float, nargs="+", required=True)
    theory.add_argument("--nu", type=float, nargs="*", help="chemical potentials; omit for nu = inf")
    theory.add_argument("--format", choices=("json", "csv"), default="json")
    theory.add_argument("-o", "--output", help=".json file, or .csv file that rows are appended to")

    exp = sub.add_parser("exp", help="run an experiment")
    exp_sub = exp.add_subparsers(dest="experiment")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int)
    common.add_argument("--jobs", type=int)
    common.add_argument("--db", nargs="?", const="",
                        help="record the run in this SQLite file (bare --db: configured path)")
    common.add_argument("-o", "--output", help=".json or .csv output file")
    common.add_argument("-k", type=int)
    common.add_argument("--alpha", type=float)
    common.add_argument("-n", "--n-vars", type=int)

    finite = exp_sub.add_parser("finite-energy", parents=[common], help="WP on planted instances vs E")
    finite.add_argument("--e-list", type=int, nargs="+")
    finite.add_argument("--trials", type=int)
    finite.add_argument("--max-iters", type=int)
    finite.add_argument("--restarts", type=int)
    finite.add_argument("--schedule", choices=("sync", "random-async"))

    for name, helptext in (("fields", "root flip-field histogram vs the planted law"),
                           ("bias", "occurrence bias of root-TRUE variables"),
                           ("degrees", "degree law vs Binomial(M, K/N)")):
        p = exp_sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--instances", type=int, default=20)

    validate = exp_sub.add_parser("validate", parents=[common], help="WP vs the exhaustive oracle")
    validate.add_argument("--instances", type=int, default=200)
    validate.add_argument("--sat-samples", type=int, default=20)

    psat = exp_sub.add_parser("psat", parents=[common], help="P(SAT) by rejection sampling")
    psat.add_argument("--draws", type=int, default=200_000)
    return parser


def setup_logging(args):
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def pick(flag, value):
    return value if flag is None else flag


def resolve_wp(args, config):
    wp = dict(config["wp"])
    for key in ("max_iters", "restarts", "schedule"):
        flag = getattr(args, key, None)
        if flag is not None:
            wp[key] = flag
    return WpParams.from_dict(wp)


def emit_json(payload, output=None):
    if output:
        write_output(output, payload)
    print(json.dumps(payload, default=str))


def cmd_gen(args, config):
    dist = DIST_FLAGS[args.dist]
    if args.n_clauses is None and args.alpha is None:
        raise ContractError("gen needs -m/--n-clauses or --alpha")
    if dist != "planted_energy" and args.energy:
        raise ContractError("-E is only meaningful with --dist planted-e")
    cfg = GenConfig(args.n_vars, args.k, n_clauses=args.n_clauses, alpha=args.alpha,
                    seed=args.seed, distribution=dist, planted_energy=args.energy)
    logger.info("🔧 resolved config: %s", json.dumps({"command": "gen", **vars(cfg)}))
    result = generate(cfg)
    if dist == "uniform":
        formula, meta = result, {"seed": cfg.seed, "rng": RNG_NAME}
    else:
        formula, meta = result.formula, result.meta

    if args.format == "json":
        payload = {"n_vars": formula.n_vars, "k": formula.k,
                   "clauses": ((formula.variables + 1) * formula.signs).tolist(),
                   "seed": meta.get("seed"), "rng": meta.get("rng"),
                   "planted_energy": meta.get("planted_energy"),
                   "root": meta["root"].to_bitstring() if meta.get("root") is not None else None}
        emit_json(payload, args.output)
    elif args.output:
        write_output(args.output, (formula, meta))
    else:
        sys.stdout.write(write_dimacs(formula, meta))
    return EXIT_OK


def cmd_solve(args, config):
    params = resolve_wp(args, config)
    logger.info("🔧 resolved config: %s", json.dumps({"command": "solve", "file": args.file,
                                                      "seed": args.seed, "wp": vars(params)}))
    document = read_dimacs(read_text(args.file))
    decision = wp_decide(document.formula, args.seed, params)
    record = decision.to_record(document.root)
    emit_json(record, args.output)
    return EXIT_SAT if decision.is_sat else EXIT_UNSAT


def cmd_theory(args, config):
    control = SeriesControl.from_dict(config["series"])
    nus = args.nu if args.nu else [None]
    logger.info("🔧 resolved config: %s", json.dumps({"command": "theory", "k": args.k,
                                                      "alpha": args.alpha, "nu": nus,
                                                      "series": config["series"]}))
    single = len(args.alpha) == 1 and len(nus) == 1
    if args.format == "json" and single:
        point = theory_point(args.k, args.alpha[0], nus[0], control)
        emit_json(point.to_dict(), args.output)
        return EXIT_OK

    rows = theory_grid(args.k, args.alpha, nus, jobs=config["jobs"], control=control)
    if args.format == "json":
        emit_json({"rows": rows}, args.output)
    elif args.output:
        write_output(args.output, rows, append=True)
    else:
        sys.stdout.write(pd.DataFrame(rows).to_csv(index=False))
    return EXIT_OK


def _stats_params(args, config):
    sweep = config["sweep"]
    return (pick(args.k, sweep["k"]), pick(args.alpha, sweep["alpha"]),
            pick(args.seed, sweep["master_seed"]))


def cmd_exp(args, config):
    if args.experiment is None:
        raise ContractError("exp needs one of finite-energy, fields, bias, degrees, validate, psat")
    jobs = pick(args.jobs, config["jobs"])
    sweep = config["sweep"]
    rows = None

    if args.experiment == "finite-energy":
        cfg = SweepConfig(n_vars=pick(args.n_vars, sweep["n_vars"]), k=pick(args.k, sweep["k"]),
                          alpha=pick(args.alpha, sweep["alpha"]),
                          e_list=tuple(pick(args.e_list, sweep["e_list"])),
                          trials=pick(args.trials, sweep["trials"]),
                          master_seed=pick(args.seed, sweep["master_seed"]),
                          wp=resolve_wp(args, config))
        resolved = {"experiment": "finite-energy", "jobs": jobs, **cfg.to_dict()}
        logger.info("🔧 resolved config: %s", json.dumps(resolved, default=str))
        records = finite_energy_sweep(cfg, jobs=jobs)
        rows = [r.to_row() for r in records]
        summary = {"records": rows}
        if args.verbose:
            summary["runs"] = [run for r in records for run in r.runs]
    else:
        k, alpha, seed = _stats_params(args, config)
        n_vars = args.n_vars
        resolved = {"experiment": args.experiment, "k": k, "alpha": alpha, "seed": seed,
                    "n_vars": n_vars, "jobs": jobs}
        if args.experiment in ("fields", "bias", "degrees"):
            n_vars = pick(n_vars, 2000)
            resolved.update(n_vars=n_vars, instances=args.instances)
            logger.info("🔧 resolved config: %s", json.dumps(resolved))
            run = {"fields": field_statistics, "bias": bias_statistics,
                   "degrees": degree_statistics}[args.experiment]
            result = run(k, alpha, n_vars, args.instances, seed, jobs=jobs)
            summary = result.to_dict() if hasattr(result, "to_dict") else vars(result)
        elif args.experiment == "validate":
            resolved.update(instances=args.instances, sat_samples=args.sat_samples)
            logger.info("🔧 resolved config: %s", json.dumps(resolved))
            report = oracle_validation(seed, args.instances, k=k, sat_samples=args.sat_samples,
                                       params=resolve_wp(args, config), jobs=jobs)
            summary = {**vars(report), "ok": report.ok}
        else:
            n_vars = pick(n_vars, 12)
            resolved.update(n_vars=n_vars, draws=args.draws)
            logger.info("🔧 resolved config: %s", json.dumps(resolved))
            summary = vars(psat_rate(k, alpha, n_vars, args.draws, seed, jobs=jobs))

    summary = _json_safe(summary)
    if args.output and args.output.lower().endswith(".csv"):
        write_output(args.output, rows if rows is not None else [summary])
        print(json.dumps(summary, default=str))
    else:
        emit_json(summary, args.output)

    if args.db is not None:
        db = ResultsDatabase(args.db or config["database"]["path"])
        ok, run_id = db.save_run(args.experiment, resolved, summary)
        if ok and rows is not None:
            db.save_sweep_records(run_id, rows)
    return EXIT_OK


def _json_safe(value):
    if isinstance(value, float) and (math.isnan(value) or math.isinf(value)):
        return None
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


COMMANDS = {"gen": cmd_gen, "solve": cmd_solve, "theory": cmd_theory, "exp": cmd_exp}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    setup_logging(args)
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_OK

    try:
        config = load_config(args.config)
    except (OSError, ValueError) as e:
        print(f"❌ cannot read config: {e}", file=sys.stderr)
        return EXIT_IO

    try:
        return COMMANDS[args.command](args, config)
    except (ContractError, ValueError) as e:
        parser.print_usage(sys.stderr)
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, DimacsError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_IO
    except (ConvergenceError, SeriesOverflowError) as e:
        logger.error("❌ numeric failure: %s", e)
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
