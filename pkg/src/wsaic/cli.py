"""Command line entry point: ``wsaic <verb> ...``."""

from __future__ import annotations

import argparse
import sys
import time

from .algorithms import ALGORITHMS, sample_moments
from .core import ConfigurationError, make_rng
from .functions import SUITE, registry_lookup
from .functions.validation import validate_all
from .harness import (
    DESK_BUDGET_DIVISOR,
    DESK_EPSILON,
    ExperimentConfig,
    compare,
    load_config,
    run_batch,
)


def _cmd_run(args) -> int:
    if args.config:
        cfg = load_config(args.config)
    elif args.function:
        cfg = ExperimentConfig(function=args.function)
    else:
        raise ConfigurationError("give --config or --function")
    cfg = cfg.with_overrides(
        function=args.function if args.config is None else None,
        algorithm=args.algorithm,
        preset=args.preset,
        output=args.out,
        workers=args.workers,
        base_seed=args.seed,
        runs=args.runs,
        budget=args.budget,
    )
    if cfg.output is None:
        cfg = cfg.with_overrides(output=f"results/{cfg.function_id.lower()}-{cfg.algorithm.lower()}")

    start = time.perf_counter()

    def progress(done, total, rec):
        if not args.quiet:
            print(f"[{done}/{total}] seed={rec.seed} optima={rec.matched_optima} "
                  f"best={rec.best_fitness:.3e} evals={rec.evaluations_used}", flush=True)

    summary = run_batch(cfg, progress=progress)
    print(f"{summary.function} {summary.algorithm}: SR={summary.success_rate:.3f} "
          f"ANOF={summary.anof_mean:.3f}±{summary.anof_std:.3f} of {summary.known_optima} "
          f"quality={summary.quality_mean:.3e}±{summary.quality_std:.3e} "
          f"({time.perf_counter() - start:.1f}s) -> {cfg.output}")
    return 0


def _cmd_compare(args) -> int:
    table = compare(args.a, args.b, metric=args.metric, direction=args.direction)
    print(table.to_text())
    return 0


def _cmd_list(args) -> int:
    print(f"{'id':<5}{'base':<24}{'n':>4}{'optima':>8}{'eps_f':>9}{'pop':>5}"
          f"{'budget':>12}{'desk budget':>13}{'desk eps_f':>12}")
    for fid, e in SUITE.items():
        count = registry_lookup(e.base, e.dimension).count
        desk_eps = DESK_EPSILON.get(fid, e.epsilon_f)
        print(f"{fid:<5}{e.base.value:<24}{e.dimension:>4}{count:>8}{e.epsilon_f:>9.0e}"
              f"{e.population:>5}{e.budget:>12.2e}{e.budget // DESK_BUDGET_DIVISOR:>13.2e}"
              f"{desk_eps:>12.0e}")
    return 0


def _cmd_validate(args) -> int:
    start = time.perf_counter()
    results = validate_all()
    failed = 0
    for r in results:
        status = "ok" if r.ok else "MISMATCH"
        failed += not r.ok
        print(f"{r.base.value:<24} expected {r.expected}  found {r.found}  "
              f"max registry offset {r.max_registry_offset:.2e}  {status}")
    print(f"{len(results) - failed}/{len(results)} bases agree ({time.perf_counter() - start:.1f}s)")
    return 1 if failed else 0


def _cmd_moments(args) -> int:
    start = time.perf_counter()
    est = sample_moments(args.samples, make_rng(args.seed))
    worst = 0.0
    for name, value in est.as_dict().items():
        dev = est.deviations()[name]
        worst = max(worst, dev)
        print(f"{name:<8} {value:+.6f}  deviation {dev:.2e}")
    print(f"{args.samples} samples in {time.perf_counter() - start:.2f}s")
    return 0 if worst < args.tolerance else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wsaic", description="Whale swarm niching experiments.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("run", help="execute a batch of seeded runs")
    p.add_argument("--config", help="TOML experiment file")
    p.add_argument("--function", help="function id (F1-F8, F16-F20) when no config is given")
    p.add_argument("--algorithm", choices=sorted(ALGORITHMS), help="override the algorithm")
    p.add_argument("--preset", choices=("desk", "paper"), help="budget/run-count preset")
    p.add_argument("--out", help="output directory")
    p.add_argument("--workers", type=int, help="parallel worker processes")
    p.add_argument("--seed", type=int, help="base seed; run i uses seed + i")
    p.add_argument("--runs", type=int, help="number of runs")
    p.add_argument("--budget", type=int, help="function evaluations per run")
    p.add_argument("--quiet", action="store_true", help="only print the summary line")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("compare", help="Z-test two result sets")
    p.add_argument("a", help="bundle (or directory of bundles) for algorithm A")
    p.add_argument("b", help="bundle (or directory of bundles) for algorithm B")
    p.add_argument("--metric", default="anof", choices=("anof", "quality", "best_fitness"))
    p.add_argument("--direction", choices=("higher", "lower"), help="which values are better")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("list-functions", help="show the benchmark suite")
    p.set_defaults(func=_cmd_list)

    p = sub.add_parser("validate-functions", help="brute-force check of per-block optima counts")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("moments", help="Monte-Carlo check of the move coefficients")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=0.01)
    p.set_defaults(func=_cmd_moments)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigurationError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
