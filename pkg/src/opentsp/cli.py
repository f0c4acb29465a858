"""Command-line entry point: ``opentsp {solve,experiment,sweep-n,sweep-sigma,render}``.

Exit codes: 0 success, 2 usage error, 3 file I/O error, 4 invalid
configuration, 5 malformed scenario file.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .experiments import (
    DEFAULT_SIGMA_GRID,
    ConfigError,
    ExperimentConfig,
    run_experiment,
    sweep_n,
    sweep_sigma,
)
from .geometry import Point
from .noise import derive_stream
from .render import render_routes_svg
from .solvers import SizeExceededError, exact_exhaustive, exact_held_karp, greedy, greedy_with_error
from .storage import ResultsTable, ScenarioError, load_scenario, make_metadata, write_results_csv

DEFAULT_SEED = 42

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_CONFIG = 4
EXIT_SCENARIO = 5

ALGORITHMS = ("greedy", "greedy-error", "exact")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _solve(instance, algo, sigma, seed, exact_method):
    if algo == "greedy":
        return greedy(instance)
    if algo == "greedy-error":
        return greedy_with_error(instance, sigma, derive_stream(seed, 0))
    if exact_method == "exhaustive":
        return exact_exhaustive(instance)
    return exact_held_karp(instance)


def _sigma_list(text: str) -> list[float]:
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def _algo_list(text: str) -> list[str]:
    algos = [a.strip() for a in text.split(",") if a.strip()]
    bad = [a for a in algos if a not in ALGORITHMS]
    if bad or not algos:
        raise argparse.ArgumentTypeError(f"algorithms must be drawn from {', '.join(ALGORITHMS)}")
    return algos


def _add_run_flags(p, n_default=None):
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"master seed (default {DEFAULT_SEED})")
    p.add_argument("--width", type=float, default=1000.0)
    p.add_argument("--height", type=float, default=1000.0)
    p.add_argument("--start", type=float, nargs=2, metavar=("X", "Y"), help="default: plane centre")
    p.add_argument("--exact", choices=("held-karp", "exhaustive"), default="held-karp")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="CSV destination (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="opentsp", description="Greedy vs optimal open-path collection routes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one scenario file")
    p.add_argument("--input", required=True)
    p.add_argument("--algo", choices=ALGORITHMS, default="greedy")
    p.add_argument("--sigma", type=float, default=0.4)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--exact", choices=("held-karp", "exhaustive"), default="held-karp")
    p.add_argument("--render", metavar="SVG")

    p = sub.add_parser("experiment", help="Monte Carlo trials at one N")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", type=float, default=None)
    _add_run_flags(p)

    p = sub.add_parser("sweep-n", help="mean excess for a range of N")
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=13)
    p.add_argument("--sigma", type=float, default=None)
    _add_run_flags(p)

    p = sub.add_parser("sweep-sigma", help="mean excess of noisy greedy for several sigmas")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--sigmas", type=_sigma_list, default=list(DEFAULT_SIGMA_GRID))
    _add_run_flags(p)

    p = sub.add_parser("render", help="draw routes of several algorithms as SVG")
    p.add_argument("--input", required=True)
    p.add_argument("--algos", type=_algo_list, default=list(ALGORITHMS))
    p.add_argument("--sigma", type=float, default=0.4)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--exact", choices=("held-karp", "exhaustive"), default="held-karp")
    p.add_argument("--out", required=True)
    return parser


def _config(args, n: int, sigma) -> ExperimentConfig:
    start = Point(*args.start) if args.start else Point(args.width / 2, args.height / 2)
    return ExperimentConfig(
        n_collectibles=n,
        trials=args.trials,
        plane_width=args.width,
        plane_height=args.height,
        start=start,
        sigma=sigma,
        master_seed=args.seed,
        exact_solver=args.exact.replace("-", "_"),
    ).validate()


def _emit(table: ResultsTable, out) -> None:
    write_results_csv(table, out if out else sys.stdout)


def _print_stats(key, stats) -> None:
    print(
        f"{key}: mean={stats.mean:.2f}% q1={stats.q1:.2f}% median={stats.median:.2f}% "
        f"q3={stats.q3:.2f}% max={stats.max:.2f}% trials={stats.trials}",
        file=sys.stderr,
    )


def _cmd_solve(args) -> int:
    instance = load_scenario(args.input)
    result = _solve(instance, args.algo, args.sigma, args.seed, args.exact)
    print("order: " + ",".join(str(i) for i in result.order))
    print(f"length: {result.total_length:.9g}")
    print(f"solver: {result.solver_name}")
    if args.render:
        svg = render_routes_svg(instance, [(args.algo, result.route)])
        with open(args.render, "w", encoding="utf-8", newline="\n") as f:
            f.write(svg)
    return EXIT_OK


def _cmd_render(args) -> int:
    instance = load_scenario(args.input)
    routes = [(a, _solve(instance, a, args.sigma, args.seed, args.exact).route) for a in args.algos]
    svg = render_routes_svg(instance, routes)
    with open(args.out, "w", encoding="utf-8", newline="\n") as f:
        f.write(svg)
    return EXIT_OK


def _cmd_experiment(args) -> int:
    cfg = _config(args, args.n, args.sigma)
    records, stats = run_experiment(cfg, workers=args.workers)
    _emit(ResultsTable(records, make_metadata(cfg.master_seed, cfg.as_dict())), args.out)
    _print_stats(f"N={cfg.n_collectibles}", stats)
    return EXIT_OK


def _cmd_sweep_n(args) -> int:
    if args.n_min > args.n_max:
        raise ConfigError("--n-min must not exceed --n-max")
    template = _config(args, args.n_max, args.sigma)
    n_values = list(range(args.n_min, args.n_max + 1))
    for n in n_values:
        replace(template, n_collectibles=n).validate()
    rows = sweep_n(n_values, template, workers=args.workers)
    meta = make_metadata(template.master_seed, template.as_dict(), sweep="n", grid=n_values)
    _emit(ResultsTable(rows, meta), args.out)
    for n, stats in rows:
        _print_stats(f"N={n}", stats)
    return EXIT_OK


def _cmd_sweep_sigma(args) -> int:
    if not args.sigmas or any(not s >= 0 for s in args.sigmas):
        raise ConfigError("--sigmas must be a non-empty list of values >= 0")
    template = _config(args, args.n, None)
    rows = sweep_sigma(args.sigmas, template, workers=args.workers)
    meta = make_metadata(template.master_seed, template.as_dict(), sweep="sigma", grid=args.sigmas)
    _emit(ResultsTable(rows, meta), args.out)
    for s, stats in rows:
        _print_stats(f"sigma={s:g}", stats)
    return EXIT_OK


COMMANDS = {
    "solve": _cmd_solve,
    "experiment": _cmd_experiment,
    "sweep-n": _cmd_sweep_n,
    "sweep-sigma": _cmd_sweep_sigma,
    "render": _cmd_render,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ScenarioError as exc:
        print(f"opentsp: invalid scenario: {exc}", file=sys.stderr)
        return EXIT_SCENARIO
    except (ConfigError, SizeExceededError, ValueError) as exc:
        print(f"opentsp: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"opentsp: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
