"""Seeded Monte Carlo sampling of uniformly random configurations.

A configuration of P particles in N boxes is a row of P stars and N - 1 bars;
picking the N - 1 bar slots uniformly without replacement from the N + P - 1
slots therefore picks a configuration uniformly.

Random streams
--------------
Trials are grouped into fixed-size blocks whose size depends only on the
ensemble.  Block ``b`` draws from ``PCG64(SeedSequence(seed, spawn_key=(b,)))``,
so the result of a run depends on ``(ensemble, trials, seed)`` and never on the
number of worker threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from .core import BoxEnsemble, ShareDistribution
from .errors import ParameterError

__all__ = [
    "Histogram",
    "block_size",
    "block_rng",
    "sample_configuration",
    "sample_configurations",
    "occupancy_histogram",
    "sample_ranks",
]

_MAX_BLOCK = 1 << 16
_BLOCK_CELLS = 1 << 22


@dataclass(frozen=True)
class Histogram:
    """Counts of the occupancy ``k`` of box 1 over independent trials."""

    bins: Dict[int, int] = field(default_factory=dict)
    total_observations: int = 0

    @classmethod
    def from_counts(cls, counts) -> "Histogram":
        counts = np.asarray(counts, dtype=np.int64)
        bins = {int(k): int(c) for k, c in enumerate(counts) if c}
        return cls(bins, int(counts.sum()))

    def counts(self, length: int = None) -> np.ndarray:
        """Dense count vector indexed by k (zero-filled)."""
        size = max(self.bins, default=-1) + 1
        if length is not None:
            size = max(size, length)
        out = np.zeros(size, dtype=np.int64)
        for k, c in self.bins.items():
            out[k] = c
        return out

    def merge(self, other: "Histogram") -> "Histogram":
        bins = dict(self.bins)
        for k, c in other.bins.items():
            bins[k] = bins.get(k, 0) + c
        return Histogram(bins, self.total_observations + other.total_observations)

    def mean(self) -> float:
        if not self.total_observations:
            return float("nan")
        return sum(k * c for k, c in self.bins.items()) / self.total_observations


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 1 << 64:
        raise ParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def block_size(ensemble: BoxEnsemble) -> int:
    slots = ensemble.n_boxes + ensemble.require_particles() - 1
    return max(1, min(_MAX_BLOCK, _BLOCK_CELLS // max(slots, 1)))


def block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(_check_seed(seed), spawn_key=(block,)))
    )


def _draw(rng: np.random.Generator, n_boxes: int, n_particles: int, size: int) -> np.ndarray:
    if n_boxes == 1:
        return np.full((size, 1), n_particles, dtype=np.int64)
    if n_particles == 0:
        return np.zeros((size, n_boxes), dtype=np.int64)
    slots = n_boxes + n_particles - 1
    bars = n_boxes - 1
    keys = rng.random((size, slots))
    # the bars sit at the slots holding the `bars` smallest keys
    pos = np.sort(np.argpartition(keys, bars - 1, axis=1)[:, :bars], axis=1)
    edges = np.empty((size, n_boxes + 1), dtype=np.int64)
    edges[:, 0] = -1
    edges[:, 1:-1] = pos
    edges[:, -1] = slots
    return np.diff(edges, axis=1) - 1


def _blocks(trials: int, size: int):
    for b, start in enumerate(range(0, trials, size)):
        yield b, min(size, trials - start)


def sample_configurations(ensemble: BoxEnsemble, trials: int, seed: int) -> np.ndarray:
    """``(trials, N)`` array of independent uniformly random configurations."""
    p = ensemble.require_particles()
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    size = block_size(ensemble)
    parts = [
        _draw(block_rng(seed, b), ensemble.n_boxes, p, m) for b, m in _blocks(trials, size)
    ]
    return np.concatenate(parts, axis=0)


def sample_configuration(ensemble: BoxEnsemble, seed: int) -> Tuple[int, ...]:
    """One uniformly random configuration; the first trial of the stream for ``seed``."""
    row = _draw(block_rng(seed, 0), ensemble.n_boxes, ensemble.require_particles(), 1)[0]
    return tuple(int(v) for v in row)


def _block_counts(ensemble: BoxEnsemble, seed: int, block: int, size: int) -> np.ndarray:
    p = ensemble.n_particles
    first = _draw(block_rng(seed, block), ensemble.n_boxes, p, size)[:, 0]
    return np.bincount(first, minlength=p + 1)


def occupancy_histogram(
    ensemble: BoxEnsemble, trials: int, seed: int, workers: int = 1
) -> Histogram:
    """Histogram of box 1's occupancy over ``trials`` random configurations.

    Identical for every ``workers`` value given the same seed.
    """
    p = ensemble.require_particles()
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    if workers < 1:
        raise ParameterError(f"workers must be >= 1, got {workers}")
    _check_seed(seed)
    jobs = list(_blocks(trials, block_size(ensemble)))
    if workers == 1:
        parts = [_block_counts(ensemble, seed, b, m) for b, m in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _block_counts(ensemble, seed, *job), jobs))
    total = np.zeros(p + 1, dtype=np.int64)
    for part in parts:
        total += part
    return Histogram.from_counts(total)


def sample_ranks(dist: ShareDistribution, size: int, seed: int) -> np.ndarray:
    """Draw ranks 1..N from a share table by inverse CDF."""
    rng = block_rng(seed, 0)
    cdf = np.cumsum(dist.probabilities)
    cdf[-1] = 1.0
    return np.searchsorted(cdf, rng.random(size), side="right") + 1
