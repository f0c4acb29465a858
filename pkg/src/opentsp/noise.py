"""Seeded random streams and the truncated-normal misjudgment factor.

Every stream is a numpy ``PCG64`` generator seeded through ``SeedSequence``
with entropy ``[seed, stream_id]``. Results only depend on that pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

RNG_ALGORITHM = "numpy.random.PCG64 seeded by SeedSequence(entropy=[seed, stream_id])"
MAX_REDRAWS = 10_000
UINT64_MAX = 2**64 - 1


def _check_u64(value: int, name: str) -> int:
    value = int(value)
    if not 0 <= value <= UINT64_MAX:
        raise ValueError(f"{name} must be an unsigned 64-bit integer, got {value}")
    return value


@dataclass
class RandomStream:
    """A reproducible random stream identified by ``(seed, stream_id)``.

    Owned by a single trial; do not share one instance between workers.
    """

    seed: int
    stream_id: int = 0
    generator: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.seed = _check_u64(self.seed, "seed")
        self.stream_id = _check_u64(self.stream_id, "stream_id")
        ss = np.random.SeedSequence([self.seed, self.stream_id])
        self.generator = np.random.Generator(np.random.PCG64(ss))

    def normal(self, mean: float, sigma: float) -> float:
        return float(self.generator.normal(mean, sigma))

    def random(self, size=None):
        return self.generator.random(size)


def derive_stream(master_seed: int, trial_index: int) -> RandomStream:
    return RandomStream(master_seed, trial_index)


def derive_seed(master_seed: int, key: int) -> int:
    """A new 64-bit master seed for a sub-experiment keyed by ``key``."""
    ss = np.random.SeedSequence([_check_u64(master_seed, "master_seed"), 1, int(key)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class TruncNormalParams:
    sigma: float
    mean: float = 1.0
    lower: float = 0.7
    upper: float = 1.3

    def __post_init__(self):
        if not self.sigma >= 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")
        if not self.lower < self.mean < self.upper:
            raise ValueError("need lower < mean < upper")


def sample_trunc_normal(params: TruncNormalParams, rng: RandomStream) -> float:
    """Draw from N(mean, sigma^2) restricted to [lower, upper] by rejection.

    ``sigma == 0`` returns ``mean`` and consumes no randomness. After
    ``MAX_REDRAWS`` rejections the first draw is clamped into range.
    """
    if params.sigma == 0:
        return params.mean
    first = None
    for _ in range(MAX_REDRAWS):
        z = rng.normal(params.mean, params.sigma)
        if params.lower <= z <= params.upper:
            return z
        if first is None:
            first = z
    return min(max(first, params.lower), params.upper)
