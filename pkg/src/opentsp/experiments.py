"""Monte Carlo comparison of greedy routes against exact optima."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from typing import Iterable, Optional, Sequence

import numpy as np

from .geometry import Instance, Point
from .noise import RandomStream, derive_seed, derive_stream
from .solvers import EXACT_SOLVERS, EXHAUSTIVE_LIMIT, HELD_KARP_LIMIT, greedy, greedy_with_error, solve_exact

DEFAULT_N_GRID = tuple(range(4, 14))
DEFAULT_SIGMA_GRID = (0.05, 0.1, 0.2, 0.3, 0.4)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    n_collectibles: int
    trials: int = 1000
    plane_width: float = 1000.0
    plane_height: float = 1000.0
    start: Point = Point(500.0, 500.0)
    sigma: Optional[float] = None
    master_seed: int = 42
    exact_solver: str = "held_karp"

    def validate(self) -> "ExperimentConfig":
        if self.n_collectibles < 1:
            raise ConfigError("n_collectibles must be >= 1 (excess ratio is undefined for N = 0)")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not (self.plane_width > 0 and self.plane_height > 0):
            raise ConfigError("plane dimensions must be positive")
        if not (0 <= self.start.x <= self.plane_width and 0 <= self.start.y <= self.plane_height):
            raise ConfigError(f"start {self.start} lies outside the plane")
        if self.sigma is not None and not self.sigma >= 0:
            raise ConfigError("sigma must be >= 0")
        if self.exact_solver not in EXACT_SOLVERS:
            raise ConfigError(f"unknown exact solver {self.exact_solver!r}")
        limit = HELD_KARP_LIMIT if self.exact_solver == "held_karp" else EXHAUSTIVE_LIMIT
        if self.n_collectibles > limit:
            raise ConfigError(f"{self.exact_solver} supports at most {limit} collectibles")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigError("master_seed must fit in 64 unsigned bits")
        return self

    def as_dict(self) -> dict:
        d = asdict(self)
        d["start"] = [self.start.x, self.start.y]
        return d


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    greedy_length: float
    optimal_length: float
    excess_ratio: float  # percent


@dataclass(frozen=True)
class TrialStats:
    mean: float
    q1: float
    median: float
    q3: float
    min: float
    max: float
    trials: int


def summarize(values: Iterable[float]) -> TrialStats:
    """Mean, extremes and linearly interpolated quartiles.

    Quartiles use the order-statistic position ``p * (n - 1)``.
    """
    v = np.sort(np.asarray(list(values), dtype=float))
    if v.size == 0:
        raise ValueError("cannot summarize an empty sample")
    q1, med, q3 = np.quantile(v, [0.25, 0.5, 0.75], method="linear")
    mean = float(v.mean())
    # keep mean inside [min, max] despite rounding in the sum
    mean = min(max(mean, float(v[0])), float(v[-1]))
    return TrialStats(mean, float(q1), float(med), float(q3), float(v[0]), float(v[-1]), int(v.size))


def excess_ratio(heuristic_length: float, optimal_length: float) -> float:
    if optimal_length == 0:
        return 0.0
    return 100.0 * (heuristic_length - optimal_length) / optimal_length


def generate_instance(config: ExperimentConfig, rng: RandomStream) -> Instance:
    """Uniform collectibles on the plane; x is drawn before y for each point."""
    u = rng.random((config.n_collectibles, 2))
    xs = u[:, 0] * config.plane_width
    ys = u[:, 1] * config.plane_height
    return Instance(config.start, tuple(Point(x, y) for x, y in zip(xs.tolist(), ys.tolist())))


def run_trial(config: ExperimentConfig, t: int) -> TrialRecord:
    instance = generate_instance(config, derive_stream(config.master_seed, t))
    if config.sigma is None:
        heuristic = greedy(instance)
    else:
        noise = derive_stream(config.master_seed, config.trials + t)
        heuristic = greedy_with_error(instance, config.sigma, noise)
    optimal = solve_exact(instance, config.exact_solver)
    return TrialRecord(
        t,
        heuristic.total_length,
        optimal.total_length,
        excess_ratio(heuristic.total_length, optimal.total_length),
    )


def _run_block(config: ExperimentConfig, indices: Sequence[int]) -> list[TrialRecord]:
    return [run_trial(config, t) for t in indices]


def run_experiment(config: ExperimentConfig, workers: int = 1) -> tuple[list[TrialRecord], TrialStats]:
    """Run every trial of ``config`` and summarise the excess ratios.

    Each trial draws its instance from stream ``(seed, t)`` and any noise
    from ``(seed, trials + t)``, so the records do not depend on
    ``workers``. Records come back ordered by trial index.
    """
    config.validate()
    indices = list(range(config.trials))
    if workers <= 1 or config.trials == 1:
        records = _run_block(config, indices)
    else:
        blocks = [indices[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_run_block, [config] * len(blocks), blocks)
            records = sorted((r for part in parts for r in part), key=lambda r: r.trial_index)
    return records, summarize(r.excess_ratio for r in records)


def sweep_n(n_values: Sequence[int], template: ExperimentConfig, workers: int = 1) -> list[tuple[int, TrialStats]]:
    """One experiment per N, each seeded from ``(template seed, N)``."""
    rows = []
    for n in n_values:
        cfg = replace(template, n_collectibles=int(n), master_seed=derive_seed(template.master_seed, int(n)))
        rows.append((int(n), run_experiment(cfg, workers)[1]))
    return rows


def sweep_sigma(
    sigma_values: Sequence[float], template: ExperimentConfig, workers: int = 1
) -> list[tuple[float, TrialStats]]:
    # Same master seed for every sigma: all levels see the same instances.
    rows = []
    for s in sigma_values:
        cfg = replace(template, sigma=float(s))
        rows.append((float(s), run_experiment(cfg, workers)[1]))
    return rows
