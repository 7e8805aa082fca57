"""Exhaustive enumeration of configurations and exact single-box marginals.

These are the ground truth against which the closed-form share law and the
Monte Carlo sampler are measured.  Every configuration counts once
(indistinguishable particles, distinguishable boxes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Tuple

import numpy as np

from .core import BoxEnsemble, multiplicity, rho_table
from .errors import ParameterError, ResourceError

__all__ = [
    "Configuration",
    "OccupancyDistribution",
    "DeviationRow",
    "DeviationReport",
    "DEFAULT_CAP",
    "enumerate_configurations",
    "exact_marginal",
    "deviation_report",
]

DEFAULT_CAP = 10**7

Configuration = Tuple[int, ...]


def _lex_configurations(n_boxes: int, n_particles: int) -> Iterator[Configuration]:
    occ = [0] * n_boxes
    occ[-1] = n_particles
    yield tuple(occ)
    while True:
        # rightmost slot (excluding the last) with particles somewhere to its right
        i = n_boxes - 2
        tail = occ[-1]
        while i >= 0 and tail == 0:
            tail += occ[i]
            i -= 1
        if i < 0:
            return
        occ[i] += 1
        for j in range(i + 1, n_boxes - 1):
            occ[j] = 0
        occ[-1] = tail - 1
        yield tuple(occ)


def enumerate_configurations(
    ensemble: BoxEnsemble, cap: int = DEFAULT_CAP
) -> Iterator[Configuration]:
    """Yield every occupancy vector of the ensemble once, in lexicographic order.

    Raises :class:`ResourceError` immediately (not on first iteration) when the
    number of configurations exceeds ``cap``.

    >>> list(enumerate_configurations(BoxEnsemble(2, 3)))
    [(0, 3), (1, 2), (2, 1), (3, 0)]
    """
    count = multiplicity(ensemble)
    if count > cap:
        raise ResourceError(
            f"{count} configurations for N={ensemble.n_boxes}, "
            f"P={ensemble.n_particles} exceed the cap of {cap}"
        )
    return _lex_configurations(ensemble.n_boxes, ensemble.n_particles)


@dataclass(frozen=True, eq=False)
class OccupancyDistribution:
    """Distribution of the number of particles ``k = 0..P`` in one designated box."""

    n_boxes: int
    n_particles: int
    prob: np.ndarray

    def mean(self) -> float:
        return float(np.dot(np.arange(self.prob.size), self.prob))

    def __getitem__(self, k: int) -> float:
        return float(self.prob[k])


def _exact_fractions(n_boxes: int, n_particles: int) -> List[Fraction]:
    if n_boxes == 1:
        return [Fraction(0)] * n_particles + [Fraction(1)]
    total = math.comb(n_boxes + n_particles - 1, n_particles)
    # the other N-1 boxes share the remaining P-k particles
    return [
        Fraction(math.comb(n_boxes + n_particles - k - 2, n_particles - k), total)
        for k in range(n_particles + 1)
    ]


def exact_marginal(ensemble: BoxEnsemble, exact: bool = False):
    """Occupancy distribution of a single box when all configurations are equally likely.

    ``prob[k] = Omega(N-1, P-k) / Omega(N, P)``.  With ``exact=True`` a list of
    :class:`fractions.Fraction` is returned instead of an
    :class:`OccupancyDistribution`.
    """
    n, p = ensemble.n_boxes, ensemble.require_particles()
    if exact:
        return _exact_fractions(n, p)
    if n == 1:
        prob = np.zeros(p + 1)
        prob[p] = 1.0
        return OccupancyDistribution(n, p, prob)
    # ratio prob[k+1] / prob[k] = (P - k) / (N + P - k - 2), started from the exact prob[0]
    k = np.arange(p, dtype=float)
    ratios = (p - k) / (n + p - k - 2)
    prob = np.empty(p + 1)
    prob[0] = (n - 1) / (n + p - 1)
    prob[1:] = prob[0] * np.cumprod(ratios)
    return OccupancyDistribution(n, p, prob)


@dataclass(frozen=True)
class DeviationRow:
    n: int
    exact_conditional: float
    eq2_renormalized: float


@dataclass(frozen=True)
class DeviationReport:
    """Exact occupied-box marginal set against the log-share law on ranks 1..min(P, N).

    ``exact_conditional`` is ``P(k = n | k >= 1)``; its mass on occupancies above
    ``min(P, N)`` is ``tail_mass``, where the share law puts nothing.
    ``total_variation`` counts that tail.
    """

    n_boxes: int
    n_particles: int
    rows: Tuple[DeviationRow, ...]
    tail_mass: float
    total_variation: float


def deviation_report(ensemble: BoxEnsemble) -> DeviationReport:
    n_boxes, p = ensemble.n_boxes, ensemble.require_particles()
    if n_boxes < 2 or p < 1:
        raise ParameterError("deviation_report needs n_boxes >= 2 and n_particles >= 1")
    marg = exact_marginal(ensemble).prob
    occupied = marg[1:] / (1.0 - marg[0])
    support = min(p, n_boxes)
    exact_col = occupied[:support]
    law = rho_table(n_boxes).probabilities[:support]
    law = law / math.fsum(law)
    tail = math.fsum(occupied[support:])
    tv = 0.5 * (math.fsum(np.abs(exact_col - law)) + tail)
    rows = tuple(
        DeviationRow(i + 1, float(exact_col[i]), float(law[i])) for i in range(support)
    )
    return DeviationReport(n_boxes, p, rows, float(tail), float(tv))
