import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, stats

from opentsp.geometry import Instance, dist, path_length
from opentsp.noise import derive_stream
from opentsp.solvers import (
    SizeExceededError,
    exact_exhaustive,
    exact_held_karp,
    greedy,
    greedy_with_error,
    solve_exact,
)
from conftest import random_instance

grid = st.integers(0, 20).map(float)
small_instances = st.builds(
    lambda s, c: Instance.from_coords(s, c),
    st.tuples(grid, grid),
    st.lists(st.tuples(grid, grid), max_size=7),
)


def brute_optimum(inst):
    """First (lexicographically smallest) permutation of minimal length."""
    best, best_len = (), math.inf
    for perm in itertools.permutations(range(inst.n)):
        length = path_length(inst, perm)
        if length < best_len:
            best, best_len = perm, length
    return best, best_len


def stepped_greedy(inst):
    here, left, order = inst.start, set(range(inst.n)), []
    while left:
        nxt = min(left, key=lambda i: (dist(here, inst.collectibles[i]), i))
        order.append(nxt)
        left.remove(nxt)
        here = inst.collectibles[nxt]
    return tuple(order)


# -- greedy ---------------------------------------------------------------

def test_greedy_worked_example(tri):
    r = greedy(tri)
    assert r.order == (0, 1, 2) == stepped_greedy(tri)
    assert r.total_length == 5.5


@pytest.mark.parametrize(
    "coll, order, total",
    [([(3, 4)], (0,), 5.0), ([(1, 0), (-1, 0)], (0, 1), 3.0), ([], (), 0.0)],
)
def test_greedy_small(coll, order, total):
    r = greedy(Instance.from_coords((0, 0), coll))
    assert r.order == order and r.total_length == total


@given(small_instances)
def test_greedy_matches_stepped_reference(inst):
    r = greedy(inst)
    assert r.order == stepped_greedy(inst)
    assert sorted(r.order) == list(range(inst.n))
    assert r.total_length == path_length(inst, r.route)


# -- greedy with error ----------------------------------------------------------

@given(small_instances, st.integers(0, 2**32))
def test_sigma_zero_degenerates_to_greedy(inst, seed):
    a = greedy(inst)
    b = greedy_with_error(inst, 0.0, derive_stream(seed, 0))
    assert a.order == b.order and a.total_length == b.total_length


def test_noisy_single_candidate():
    r = greedy_with_error(Instance.from_coords((0, 0), [(3, 4)]), 0.4, derive_stream(1, 0))
    assert r.order == (0,) and r.total_length == 5.0


def test_noisy_is_deterministic_per_seed():
    inst = random_instance(np.random.default_rng(0), 9)
    a = greedy_with_error(inst, 0.3, derive_stream(9, 3))
    b = greedy_with_error(inst, 0.3, derive_stream(9, 3))
    assert a == b


def test_noisy_reports_true_length():
    inst = random_instance(np.random.default_rng(1), 8)
    r = greedy_with_error(inst, 0.4, derive_stream(2, 0))
    assert r.total_length == path_length(inst, r.route)


def _noisy_oracle(sigma=0.4):
    """Exact route probabilities for the 3-point line instance.

    Step 1 (distances 1, 2, 1.5): index 1 can never win because
    2 * 0.7 > 1.3, so the choice is index 2 iff 1.5 z2 < z0.
    From (1, 0) the rest is forced (1 * 1.3 < 2.5 * 0.7): total 5.5.
    From (-1.5, 0) (distances 2.5, 3.5): index 0 iff 2.5 za < 3.5 zb,
    giving totals 5.0 or 6.0.
    """
    tn = stats.truncnorm(-0.3 / sigma, 0.3 / sigma, loc=1.0, scale=sigma)
    p_left = integrate.quad(lambda z0: tn.pdf(z0) * tn.cdf(z0 / 1.5), 0.7, 1.3)[0]
    p_back = integrate.quad(lambda zb: tn.pdf(zb) * tn.cdf(3.5 * zb / 2.5), 0.7, 1.3)[0]
    mean = (1 - p_left) * 5.5 + p_left * (p_back * 5.0 + (1 - p_back) * 6.0)
    return p_left, mean


def test_noisy_monte_carlo_against_integrated_probabilities(tri):
    runs = 10_000
    totals = np.empty(runs)
    left = 0
    for s in range(runs):
        r = greedy_with_error(tri, 0.4, derive_stream(77, s))
        totals[s] = r.total_length
        left += r.order[0] == 2
        assert r.order in {(0, 1, 2), (2, 0, 1), (2, 1, 0)}
    p_left, mean = _noisy_oracle()
    freq = left / runs
    assert 0 < p_left < 1
    assert abs(freq - p_left) < 4 * math.sqrt(p_left * (1 - p_left) / runs)
    assert abs(totals.mean() - mean) < 4 * totals.std() / math.sqrt(runs)


# -- exact solvers -----------------------------------------------------------------

def test_exhaustive_worked_example(tri):
    r = exact_exhaustive(tri)
    assert r.order == (2, 0, 1) and r.total_length == 5.0
    assert brute_optimum(tri) == ((2, 0, 1), 5.0)


def test_exhaustive_empty_and_duplicates():
    r = exact_exhaustive(Instance.from_coords((0, 0), []))
    assert r.order == () and r.total_length == 0.0
    r = exact_exhaustive(Instance.from_coords((0, 0), [(3, 4), (3, 4)]))
    assert r.order == (0, 1) and r.total_length == 5.0


def test_exhaustive_limit():
    inst = random_instance(np.random.default_rng(0), 11)
    with pytest.raises(SizeExceededError):
        exact_exhaustive(inst)
    with pytest.raises(SizeExceededError):
        exact_exhaustive(random_instance(np.random.default_rng(0), 5), limit=4)


def test_held_karp_examples(tri):
    assert exact_held_karp(tri).total_length == 5.0
    r = exact_held_karp(Instance.from_coords((0, 0), [(3, 4)]))
    assert r.order == (0,) and r.total_length == 5.0
    assert exact_held_karp(Instance.from_coords((1, 1), [])).total_length == 0.0


def test_held_karp_limit():
    with pytest.raises(SizeExceededError):
        exact_held_karp(random_instance(np.random.default_rng(0), 25))


@settings(max_examples=150, deadline=None)
@given(small_instances)
def test_exact_solvers_match_brute_force(inst):
    order, length = brute_optimum(inst)
    ex = exact_exhaustive(inst)
    assert ex.order == order and ex.total_length == length
    for pruned in (True, False):
        assert exact_exhaustive(inst, prune=pruned).order == order
    hk = exact_held_karp(inst)
    assert hk.total_length == pytest.approx(length, rel=1e-9, abs=1e-12)
    assert sorted(hk.order) == list(range(inst.n))


def test_oracle_equivalence_random_sweep():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        inst = random_instance(rng, int(rng.integers(2, 9)))
        assert exact_exhaustive(inst).total_length == pytest.approx(
            exact_held_karp(inst).total_length, rel=1e-9
        )


def test_pruning_is_sound_and_saves_work():
    rng = np.random.default_rng(8)
    for n in range(1, 9):
        inst = random_instance(rng, n)
        a, b = exact_exhaustive(inst, prune=True), exact_exhaustive(inst, prune=False)
        assert (a.order, a.total_length) == (b.order, b.total_length)
        if n >= 5:
            assert a.n_evaluated < b.n_evaluated


def test_dominance_and_strictness(tri):
    rng = np.random.default_rng(5)
    for _ in range(300):
        inst = random_instance(rng, int(rng.integers(1, 9)))
        assert exact_held_karp(inst).total_length <= greedy(inst).total_length
    assert exact_held_karp(tri).total_length < greedy(tri).total_length


@pytest.mark.parametrize("k", [0.1, 3.7, 250.0])
def test_argmin_scale_invariance(k):
    rng = np.random.default_rng(int(k * 10))
    for t in range(20):
        inst = random_instance(rng, 7)
        big = inst.scaled(k)
        for solve in (greedy, exact_exhaustive, exact_held_karp):
            a, b = solve(inst), solve(big)
            assert a.order == b.order
            assert b.total_length == pytest.approx(k * a.total_length, rel=1e-9)
        a = greedy_with_error(inst, 0.3, derive_stream(1, t))
        b = greedy_with_error(big, 0.3, derive_stream(1, t))
        assert a.order == b.order


def test_solve_exact_dispatch(tri):
    assert solve_exact(tri, "exhaustive").order == (2, 0, 1)
    assert solve_exact(tri).total_length == 5.0
    with pytest.raises(ValueError):
        solve_exact(tri, "magic")
