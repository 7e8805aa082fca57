"""Closed-form mathematics of P indistinguishable particles in N boxes.

Every configuration of particles is taken as equally likely.  From that
premise follow the exact configuration count, its Stirling entropy, the
temperature/potential relations, and the normalized log-share law

    rho(n) = ln(1 + 1/n) / ln(N + 1),    n = 1..N,

together with its one-parameter generalization rho_alpha(n) ~ ln(1 + 1/n)**alpha.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import betaln

from .errors import DomainError, ParameterError

__all__ = [
    "BoxEnsemble",
    "ShareKind",
    "ShareDistribution",
    "Temperature",
    "multiplicity",
    "log_multiplicity",
    "shannon_info",
    "phi",
    "occupancy_from_potential",
    "log_weights",
    "rho_table",
    "cumulative_share",
    "lagrange_phi",
    "lagrange_rho_table",
]


@dataclass(frozen=True)
class BoxEnsemble:
    """Model parameters: ``n_boxes`` boxes and, optionally, ``n_particles`` particles."""

    n_boxes: int
    n_particles: Optional[int] = None

    def __post_init__(self):
        if isinstance(self.n_boxes, bool) or int(self.n_boxes) != self.n_boxes:
            raise ParameterError(f"n_boxes must be an integer, got {self.n_boxes!r}")
        if self.n_boxes < 1:
            raise ParameterError(f"n_boxes must be >= 1, got {self.n_boxes}")
        object.__setattr__(self, "n_boxes", int(self.n_boxes))
        if self.n_particles is not None:
            if int(self.n_particles) != self.n_particles:
                raise ParameterError(
                    f"n_particles must be an integer, got {self.n_particles!r}"
                )
            if self.n_particles < 0:
                raise ParameterError(f"n_particles must be >= 0, got {self.n_particles}")
            object.__setattr__(self, "n_particles", int(self.n_particles))

    def require_particles(self) -> int:
        if self.n_particles is None:
            raise ParameterError("this operation needs n_particles")
        return self.n_particles

    @property
    def mean_occupancy(self) -> float:
        return self.require_particles() / self.n_boxes


class ShareKind(str, enum.Enum):
    PLAIN = "plain"
    ALPHA = "alpha"


@dataclass(frozen=True, eq=False)
class ShareDistribution:
    """Normalized share table ``probabilities[n - 1] = rho(n)`` for n = 1..N."""

    n_boxes: int
    probabilities: np.ndarray
    alpha: float = 1.0
    kind: ShareKind = ShareKind.PLAIN

    def __post_init__(self):
        probs = np.array(self.probabilities, dtype=float)
        if probs.shape != (self.n_boxes,):
            raise ParameterError(
                f"expected {self.n_boxes} probabilities, got shape {probs.shape}"
            )
        probs.flags.writeable = False
        object.__setattr__(self, "probabilities", probs)

    def __len__(self):
        return self.n_boxes

    def __getitem__(self, n: int) -> float:
        """Share of rank ``n`` (1-based, matching the box index)."""
        if not 1 <= n <= self.n_boxes:
            raise IndexError(f"rank {n} outside 1..{self.n_boxes}")
        return float(self.probabilities[n - 1])

    @property
    def ranks(self) -> np.ndarray:
        return np.arange(1, self.n_boxes + 1)

    def cumulative(self) -> np.ndarray:
        return np.cumsum(self.probabilities)

    def to_dict(self) -> dict:
        return {
            "n_boxes": self.n_boxes,
            "alpha": float(self.alpha),
            "kind": self.kind.value,
            "probabilities": [float(p) for p in self.probabilities],
        }


@dataclass(frozen=True)
class Temperature:
    """Dimensionless temperature; the scale of the potential ``phi``."""

    theta: float

    def __post_init__(self):
        if not (self.theta > 0 and math.isfinite(self.theta)):
            raise DomainError(f"theta must be a positive finite real, got {self.theta!r}")


def _as_theta(theta) -> float:
    if isinstance(theta, Temperature):
        return theta.theta
    return Temperature(float(theta)).theta


def multiplicity(ensemble: BoxEnsemble) -> int:
    """Number of ways to put P indistinguishable particles into N boxes.

    Returns the exact integer ``(N + P - 1)! / ((N - 1)! P!)``.

    >>> multiplicity(BoxEnsemble(3, 2))
    6
    """
    p = ensemble.require_particles()
    return math.comb(ensemble.n_boxes + p - 1, p)


def log_multiplicity(ensemble: BoxEnsemble) -> float:
    """Natural log of :func:`multiplicity`, usable for N and P far beyond exact range."""
    p = ensemble.require_particles()
    if p == 0 or ensemble.n_boxes == 1:
        return 0.0
    n = ensemble.n_boxes + p - 1
    # ln C(n, p) through the beta function keeps precision when one argument is small
    return -math.log1p(n) - float(betaln(n - p + 1, p + 1))


def shannon_info(n_boxes: int, mean_occupancy: float) -> float:
    """Stirling form of ln(multiplicity): ``N((1 + n) ln(1 + n) - n ln n)``."""
    if n_boxes < 1:
        raise ParameterError(f"n_boxes must be >= 1, got {n_boxes}")
    n = float(mean_occupancy)
    if not n > 0:
        raise DomainError(f"mean_occupancy must be > 0, got {mean_occupancy!r}")
    return n_boxes * ((1.0 + n) * math.log1p(n) - n * math.log(n))


def phi(n: float, theta=1.0) -> float:
    """Potential of a box holding ``n`` particles at temperature ``theta``.

    ``n`` may be any positive real; occupancy is treated as continuous.
    """
    n = float(n)
    if not n > 0:
        raise DomainError(f"n must be > 0, got {n!r}")
    return _as_theta(theta) * math.log1p(1.0 / n)


def occupancy_from_potential(x: float) -> float:
    """Mean occupancy ``1 / (e**x - 1)`` for the ratio ``x = phi / theta``.

    Inverse of :func:`phi` at unit temperature.
    """
    x = float(x)
    if not x > 0:
        raise DomainError(f"x must be > 0, got {x!r}")
    return 1.0 / math.expm1(x)


def log_weights(n_boxes: int) -> np.ndarray:
    """``ln(1 + 1/n)`` for n = 1..N."""
    if n_boxes < 1:
        raise ParameterError(f"n_boxes must be >= 1, got {n_boxes}")
    n = np.arange(1, n_boxes + 1, dtype=float)
    return np.log1p(1.0 / n)


def _alpha_probabilities(n_boxes: int, alpha: float) -> np.ndarray:
    # work in log space: w**alpha underflows for large |alpha|
    logw = np.log(log_weights(n_boxes))
    scaled = alpha * logw
    scaled -= scaled.max()
    weights = np.exp(scaled)
    return weights / math.fsum(weights)


def rho_table(n_boxes: int, alpha: float = 1.0) -> ShareDistribution:
    """Normalized share of each rank n = 1..N.

    With ``alpha == 1`` this is ``ln(1 + 1/n) / ln(N + 1)``, whose normalizer is
    the telescoping sum of the numerators.  Other exponents weight each rank by
    ``ln(1 + 1/n)**alpha`` and normalize by compensated summation.

    >>> t = rho_table(9)
    >>> round(t[1], 6), round(t[9], 6)
    (0.30103, 0.045757)
    """
    if isinstance(n_boxes, bool) or int(n_boxes) != n_boxes or n_boxes < 1:
        raise ParameterError(f"n_boxes must be a positive integer, got {n_boxes!r}")
    n_boxes = int(n_boxes)
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise ParameterError(f"alpha must be finite, got {alpha!r}")
    if alpha == 1.0:
        probs = log_weights(n_boxes) / math.log1p(n_boxes)
        return ShareDistribution(n_boxes, probs, 1.0, ShareKind.PLAIN)
    return ShareDistribution(
        n_boxes, _alpha_probabilities(n_boxes, alpha), alpha, ShareKind.ALPHA
    )


def cumulative_share(k: int, n_boxes: int) -> float:
    """Combined share of the ``k`` richest of ``n_boxes`` boxes: ``ln(k+1)/ln(N+1)``."""
    if n_boxes < 1:
        raise ParameterError(f"n_boxes must be >= 1, got {n_boxes}")
    if not 1 <= k <= n_boxes:
        raise ParameterError(f"k must lie in 1..{n_boxes}, got {k}")
    if k == n_boxes:
        return 1.0
    return math.log1p(k) / math.log1p(n_boxes)


def lagrange_phi(n: float, n_boxes: int, beta: float) -> float:
    """Stationary potential ``(N / beta) ln((n + 1) / n)`` of the constrained entropy.

    Setting the derivative of ``ln(Omega) + beta (P - sum n phi(n))`` to zero
    gives this for any multiplier ``beta``; the multiplier only rescales.
    """
    if not beta > 0:
        raise DomainError(f"beta must be > 0, got {beta!r}")
    if n_boxes < 1:
        raise ParameterError(f"n_boxes must be >= 1, got {n_boxes}")
    n = float(n)
    if not n > 0:
        raise DomainError(f"n must be > 0, got {n!r}")
    return (n_boxes / beta) * math.log1p(1.0 / n)


def lagrange_rho_table(n_boxes: int, beta: float) -> ShareDistribution:
    """Normalize :func:`lagrange_phi` over ranks 1..N."""
    values = np.array([lagrange_phi(n, n_boxes, beta) for n in range(1, n_boxes + 1)])
    return ShareDistribution(n_boxes, values / math.fsum(values), 1.0, ShareKind.PLAIN)
