"""Open-path solvers: nearest-neighbour greedy, greedy with misjudged
distances, branch-and-bound enumeration and a Held-Karp subset DP.

All solvers report the true geometric length of the route they return,
recomputed with :func:`~opentsp.geometry.path_length`.
"""

from __future__ import annotations

import math

import numpy as np

from .geometry import Instance, Route, SolveResult, distance_matrix, path_length
from .noise import RandomStream, TruncNormalParams, sample_trunc_normal

EXHAUSTIVE_LIMIT = 10
HELD_KARP_LIMIT = 24


class SizeExceededError(ValueError):
    """The instance has more collectibles than the solver accepts."""


def _result(instance, order, name, n_evaluated, **meta) -> SolveResult:
    route = Route(tuple(order))
    return SolveResult(route, path_length(instance, route), name, n_evaluated, meta)


def _nearest_first(dmat, n, perceive=None):
    # Row/column 0 of dmat is the start; collectible i lives at i + 1.
    unvisited = list(range(n))
    here = 0
    order = []
    while unvisited:
        row = dmat[here]
        best, best_d = -1, math.inf
        for c in unvisited:  # ascending index: first minimum wins ties
            d = row[c + 1]
            if perceive is not None:
                d = d * perceive()
            if d < best_d:
                best, best_d = c, d
        order.append(best)
        unvisited.remove(best)
        here = best + 1
    return order


def greedy(instance: Instance) -> SolveResult:
    """Always walk to the closest unvisited collectible next."""
    n = instance.n
    order = _nearest_first(distance_matrix(instance).tolist(), n)
    return _result(instance, order, "greedy", n * (n + 1) // 2)


def greedy_with_error(instance: Instance, sigma: float, rng: RandomStream) -> SolveResult:
    """Greedy where every candidate distance is misjudged by a factor zeta.

    Each step draws one independent zeta per unvisited candidate, in
    ascending index order, from N(1, sigma) truncated to [0.7, 1.3], and
    picks the smallest ``dist * zeta``.
    """
    params = TruncNormalParams(sigma)
    n = instance.n
    order = _nearest_first(
        distance_matrix(instance).tolist(), n, lambda: sample_trunc_normal(params, rng)
    )
    return _result(instance, order, "greedy_with_error", n * (n + 1) // 2, sigma=sigma)


def exact_exhaustive(instance: Instance, limit: int = EXHAUSTIVE_LIMIT, prune: bool = True) -> SolveResult:
    """Optimal route by depth-first enumeration of all permutations.

    Permutations are visited in lexicographic order and only a strictly
    shorter route replaces the incumbent, so equal-length optima resolve to
    the lexicographically smallest order. With ``prune`` a partial path is
    abandoned once its length reaches the incumbent's, or once it strictly
    exceeds the greedy route's length (an achievable upper bound, so no
    optimum or tie is ever cut).
    """
    n = instance.n
    if n > limit:
        raise SizeExceededError(f"exhaustive search limited to N <= {limit}, got N = {n}")
    if n == 0:
        return _result(instance, [], "exhaustive", 1)

    d = distance_matrix(instance).tolist()
    bound = path_length(instance, _nearest_first(d, n)) if prune else math.inf
    best_len = math.inf
    best_order: list[int] = []
    path: list[int] = []
    visited = 0

    def descend(last, acc, remaining):
        nonlocal best_len, best_order, visited
        row = d[last]
        for k, c in enumerate(remaining):
            new = acc + row[c + 1]
            visited += 1
            if prune and (new >= best_len or new > bound):
                continue
            path.append(c)
            if len(remaining) == 1:
                if new < best_len:
                    best_len, best_order = new, path.copy()
            else:
                descend(c + 1, new, remaining[:k] + remaining[k + 1:])
            path.pop()

    descend(0, 0.0, list(range(n)))
    return _result(instance, best_order, "exhaustive", visited, pruned=prune)


def exact_held_karp(instance: Instance) -> SolveResult:
    """Optimal route by dynamic programming over subsets of collectibles.

    ``cost[S, j]`` is the shortest open path from the start that visits
    exactly the set ``S`` and ends at ``j``. Subsets are processed layer by
    layer (by size) with numpy doing the inner minimisation.
    """
    n = instance.n
    if n > HELD_KARP_LIMIT:
        raise SizeExceededError(f"Held-Karp limited to N <= {HELD_KARP_LIMIT}, got N = {n}")
    if n == 0:
        return _result(instance, [], "held_karp", 1)

    dmat = distance_matrix(instance)
    from_start = dmat[0, 1:]
    between = dmat[1:, 1:]
    full = 1 << n

    cost = np.full((full, n), np.inf)
    singles = 1 << np.arange(n)
    cost[singles, np.arange(n)] = from_start

    masks = np.arange(full)
    popcount = np.zeros(full, dtype=np.int64)
    for j in range(n):
        popcount += (masks >> j) & 1

    for size in range(2, n + 1):
        layer = masks[popcount == size]
        for j in range(n):
            sel = layer[(layer >> j) & 1 == 1]
            prev = sel ^ (1 << j)
            cost[sel, j] = (cost[prev] + between[:, j]).min(axis=1)

    # Walk back from the cheapest end point.
    mask = full - 1
    j = int(np.argmin(cost[mask]))
    rev = [j]
    while mask != (1 << j):
        prev = mask ^ (1 << j)
        i = int(np.argmin(cost[prev] + between[:, j]))
        rev.append(i)
        mask, j = prev, i
    return _result(instance, rev[::-1], "held_karp", n * (full >> 1))


EXACT_SOLVERS = {
    "held_karp": exact_held_karp,
    "exhaustive": exact_exhaustive,
}


def solve_exact(instance: Instance, method: str = "held_karp") -> SolveResult:
    try:
        solver = EXACT_SOLVERS[method]
    except KeyError:
        raise ValueError(f"unknown exact solver {method!r}; choose from {sorted(EXACT_SOLVERS)}") from None
    return solver(instance)
