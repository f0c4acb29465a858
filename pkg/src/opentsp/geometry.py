"""Points, instances, routes and open-path length evaluation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


class InvalidRouteError(ValueError):
    """Raised when a visit order is not a permutation of the collectible indices."""


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate in Point({self.x}, {self.y})")
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))

    def scaled(self, k: float) -> "Point":
        return Point(self.x * k, self.y * k)

    def shifted(self, dx: float, dy: float) -> "Point":
        return Point(self.x + dx, self.y + dy)


@dataclass(frozen=True)
class Instance:
    """A start position plus an indexed list of collectibles.

    Routes refer to collectibles by their index in ``collectibles``.
    """

    start: Point
    collectibles: tuple[Point, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "collectibles", tuple(self.collectibles))

    @classmethod
    def from_coords(cls, start, collectibles=()) -> "Instance":
        return cls(Point(*start), tuple(Point(*c) for c in collectibles))

    def __len__(self) -> int:
        return len(self.collectibles)

    @property
    def n(self) -> int:
        return len(self.collectibles)

    def coords(self) -> np.ndarray:
        """Array of shape (N + 1, 2); row 0 is the start."""
        pts = [(self.start.x, self.start.y)] + [(c.x, c.y) for c in self.collectibles]
        return np.asarray(pts, dtype=float).reshape(-1, 2)

    def scaled(self, k: float) -> "Instance":
        return Instance(self.start.scaled(k), tuple(c.scaled(k) for c in self.collectibles))

    def shifted(self, dx: float, dy: float) -> "Instance":
        return Instance(
            self.start.shifted(dx, dy),
            tuple(c.shifted(dx, dy) for c in self.collectibles),
        )


@dataclass(frozen=True)
class Route:
    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(int(i) for i in self.order))

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def validate(self, n: int) -> None:
        if len(self.order) != n or sorted(self.order) != list(range(n)):
            raise InvalidRouteError(
                f"order {list(self.order)} is not a permutation of 0..{n - 1}"
            )


@dataclass(frozen=True)
class SolveResult:
    route: Route
    total_length: float
    solver_name: str
    n_evaluated: int = 0
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def order(self) -> tuple[int, ...]:
        return self.route.order


def dist(a: Point, b: Point) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def distance_matrix(instance: Instance) -> np.ndarray:
    """Pairwise distances over [start, c0, c1, ...]; index 0 is the start."""
    pts = (instance.start,) + instance.collectibles
    m = len(pts)
    out = np.zeros((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            out[i, j] = out[j, i] = dist(pts[i], pts[j])
    return out


def path_length(instance: Instance, route: Route | Sequence[int]) -> float:
    """Length of the open path start -> c[order[0]] -> ... -> c[order[-1]].

    There is no return leg. Legs are summed left to right.
    """
    if not isinstance(route, Route):
        route = Route(tuple(route))
    route.validate(instance.n)
    total = 0.0
    here = instance.start
    for i in route.order:
        nxt = instance.collectibles[i]
        total += dist(here, nxt)
        here = nxt
    return total
