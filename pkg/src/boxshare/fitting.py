"""Goodness-of-fit statistics and maximum-likelihood fitting of the share exponent."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .core import log_weights
from .errors import FitError, ParameterError

__all__ = [
    "GoodnessOfFit",
    "AlphaFit",
    "gammaincc",
    "chi2_sf",
    "chi_square",
    "mad",
    "g_statistic",
    "pool_sparse",
    "alpha_log_likelihood",
    "fit_alpha",
]

_EPS = 1e-15
_TINY = 1e-300
_MAX_ITER = 10_000


def _gamma_series(a: float, x: float) -> float:
    # regularized lower incomplete gamma P(a, x), series in x
    term = total = 1.0 / a
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_contfrac(a: float, x: float) -> float:
    # regularized upper incomplete gamma Q(a, x), modified Lentz continued fraction
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def gammaincc(a: float, x: float) -> float:
    """Regularized upper incomplete gamma function ``Q(a, x)``."""
    if a <= 0:
        raise ParameterError(f"a must be > 0, got {a}")
    if x < 0:
        raise ParameterError(f"x must be >= 0, got {x}")
    if x == 0:
        return 1.0
    if x < a + 1.0:
        return min(1.0, max(0.0, 1.0 - _gamma_series(a, x)))
    return min(1.0, max(0.0, _gamma_contfrac(a, x)))


def chi2_sf(stat: float, dof: int) -> float:
    """Upper tail probability of the chi-square distribution."""
    return gammaincc(dof / 2.0, stat / 2.0)


@dataclass(frozen=True)
class GoodnessOfFit:
    chi_square: float
    dof: int
    p_value: float
    g_statistic: float
    mad: float


def _pair(observed, expected) -> Tuple[np.ndarray, np.ndarray]:
    if isinstance(observed, dict) or isinstance(expected, dict):
        if not (isinstance(observed, dict) and isinstance(expected, dict)):
            raise ParameterError("observed and expected must both be mappings or both sequences")
        if set(observed) != set(expected):
            raise ParameterError("observed and expected have different categories")
        keys = sorted(expected)
        observed = [observed[k] for k in keys]
        expected = [expected[k] for k in keys]
    o = np.asarray(observed, dtype=float)
    e = np.asarray(expected, dtype=float)
    if o.shape != e.shape or o.ndim != 1:
        raise ParameterError(f"category mismatch: {o.shape} vs {e.shape}")
    return o, e


def g_statistic(observed, expected) -> float:
    """Log-likelihood ratio ``2 sum o ln(o / e)``, with ``0 ln 0 = 0``."""
    o, e = _pair(observed, expected)
    nz = o > 0
    return float(2.0 * math.fsum(o[nz] * np.log(o[nz] / e[nz])))


def mad(observed_prop, expected_prop) -> float:
    """Mean absolute deviation between two proportion vectors."""
    o, e = _pair(observed_prop, expected_prop)
    return float(np.mean(np.abs(o - e)))


def chi_square(observed, expected) -> GoodnessOfFit:
    """Pearson chi-square test of observed counts against expected counts.

    ``observed`` and ``expected`` are equal-length sequences or mappings with
    the same keys.  The MAD field compares the two after normalizing each to
    proportions.
    """
    o, e = _pair(observed, expected)
    if np.any(e <= 0) or not np.all(np.isfinite(e)):
        raise ParameterError("every expected count must be positive and finite")
    if np.any(o < 0):
        raise ParameterError("observed counts must be nonnegative")
    if o.sum() < 1:
        raise ParameterError("observed counts must total at least 1")
    if o.size < 2:
        raise ParameterError("need at least two categories")
    stat = float(math.fsum((o - e) ** 2 / e))
    dof = o.size - 1
    return GoodnessOfFit(
        chi_square=stat,
        dof=dof,
        p_value=chi2_sf(stat, dof),
        g_statistic=g_statistic(o, e),
        mad=mad(o / o.sum(), e / e.sum()),
    )


def pool_sparse(observed, expected, min_expected: float = 5.0):
    """Merge adjacent categories, left to right, until each expected count is ``>= min_expected``.

    A short remainder is folded into the last pooled category.
    """
    o, e = _pair(observed, expected)
    out_o, out_e = [], []
    acc_o = acc_e = 0.0
    for oi, ei in zip(o, e):
        acc_o += oi
        acc_e += ei
        if acc_e >= min_expected:
            out_o.append(acc_o)
            out_e.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0 or acc_o > 0:
        if out_e:
            out_o[-1] += acc_o
            out_e[-1] += acc_e
        else:
            out_o.append(acc_o)
            out_e.append(acc_e)
    return np.array(out_o), np.array(out_e)


@dataclass(frozen=True)
class AlphaFit:
    alpha_hat: float
    log_likelihood: float
    std_error: float
    iterations: int


def _tilted_moments(alpha: float, logw: np.ndarray) -> Tuple[float, float, float]:
    """Mean and variance of ln w under p_alpha, plus ln Z(alpha)."""
    s = alpha * logw
    top = s.max()
    q = np.exp(s - top)
    z = math.fsum(q)
    q /= z
    mean = float(np.dot(q, logw))
    var = float(np.dot(q, (logw - mean) ** 2))
    return mean, var, top + math.log(z)


def _histogram_arrays(histogram, n_boxes: int) -> np.ndarray:
    if n_boxes < 1:
        raise ParameterError(f"n_boxes must be >= 1, got {n_boxes}")
    if isinstance(histogram, dict):
        counts = np.zeros(n_boxes)
        for n, c in histogram.items():
            if not 1 <= n <= n_boxes:
                raise ParameterError(f"rank {n} outside 1..{n_boxes}")
            counts[n - 1] += c
    else:
        counts = np.asarray(histogram, dtype=float)
        if counts.shape != (n_boxes,):
            raise ParameterError(f"expected {n_boxes} counts, got shape {counts.shape}")
    if np.any(counts < 0):
        raise ParameterError("counts must be nonnegative")
    return counts


def alpha_log_likelihood(alpha: float, histogram, n_boxes: int) -> float:
    """``sum_n c_n ln p_alpha(n)`` with ``p_alpha(n) ~ ln(1 + 1/n)**alpha``."""
    counts = _histogram_arrays(histogram, n_boxes)
    logw = np.log(log_weights(n_boxes))
    _, _, log_z = _tilted_moments(alpha, logw)
    return float(math.fsum(counts * (alpha * logw - log_z)))


def fit_alpha(histogram, n_boxes: int, tol: float = 1e-8) -> AlphaFit:
    """Maximum-likelihood exponent for counts over ranks 1..N.

    ``histogram`` is a length-N sequence (index 0 is rank 1) or a mapping
    rank -> count.  The log-likelihood is strictly concave in alpha, so the
    score ``sum c ln w - C E_alpha[ln w]`` is decreasing and its root is found
    by bisection.  The standard error comes from the observed information
    ``C Var_alpha[ln w]``.
    """
    counts = _histogram_arrays(histogram, n_boxes)
    total = float(counts.sum())
    if total < 2:
        raise FitError("need at least two observations")
    if np.count_nonzero(counts) < 2:
        raise FitError("counts sit on a single rank; the exponent is unbounded")

    logw = np.log(log_weights(n_boxes))
    target = math.fsum(counts * logw) / total

    def score(alpha):
        return target - _tilted_moments(alpha, logw)[0]

    lo, hi = -20.0, 20.0
    while score(lo) < 0:
        lo *= 2.0
        if lo < -1e6:
            raise FitError("could not bracket the exponent from below")
    while score(hi) > 0:
        hi *= 2.0
        if hi > 1e6:
            raise FitError("could not bracket the exponent from above")

    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        s = score(mid)
        iterations += 1
        if s == 0:
            lo = hi = mid
            break
        if s > 0:
            lo = mid
        else:
            hi = mid
    alpha_hat = 0.5 * (lo + hi)

    _, var, log_z = _tilted_moments(alpha_hat, logw)
    loglik = float(math.fsum(counts * (alpha_hat * logw - log_z)))
    return AlphaFit(alpha_hat, loglik, 1.0 / math.sqrt(total * var), iterations)
