"""Greedy versus optimal collection routes for the open-path TSP."""

__version__ = "0.1.0"

from .geometry import Instance, InvalidRouteError, Point, Route, SolveResult, dist, path_length
from .noise import RandomStream, TruncNormalParams, derive_stream, sample_trunc_normal
from .solvers import SizeExceededError, exact_exhaustive, exact_held_karp, greedy, greedy_with_error

__all__ = [
    "Instance",
    "InvalidRouteError",
    "Point",
    "RandomStream",
    "Route",
    "SizeExceededError",
    "SolveResult",
    "TruncNormalParams",
    "derive_stream",
    "dist",
    "exact_exhaustive",
    "exact_held_karp",
    "greedy",
    "greedy_with_error",
    "path_length",
    "sample_trunc_normal",
]
