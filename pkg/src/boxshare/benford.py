"""First-significant-digit analysis against the N = 9 share law (Benford's law).

Digits are read from the text of each token.  Nothing is converted to a float
first, so values like ``9.9999999999999999e-5`` keep their written digit.
"""

from __future__ import annotations

import math
import re
import unicodedata
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional

import numpy as np

from .core import rho_table
from .errors import ParameterError
from .fitting import GoodnessOfFit, chi_square, mad

__all__ = [
    "DIGITS",
    "MAD_THRESHOLDS",
    "DigitStats",
    "BenfordReport",
    "leading_digit",
    "digit_histogram",
    "benford_expected",
    "benford_proportions",
    "mad_label",
    "benford_report",
]

DIGITS = tuple(range(1, 10))

# first-digit MAD cutoffs used in forensic accounting practice
MAD_THRESHOLDS = (
    (0.006, "close conformity"),
    (0.012, "acceptable conformity"),
    (0.015, "marginally acceptable conformity"),
)
NONCONFORMITY = "nonconformity"

_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


def leading_digit(token: str) -> Optional[int]:
    """First nonzero digit of a numeric token, or ``None``.

    Signs, accounting parentheses, comma thousands separators and currency
    symbols are ignored.  Zero, empty and non-numeric tokens give ``None``.

    >>> leading_digit("0.00452"), leading_digit("-230"), leading_digit("1,234.5")
    (4, 2, 1)
    >>> leading_digit("0") is None
    True
    """
    s = str(token).strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1].strip()
    s = "".join(ch for ch in s if ch != "," and unicodedata.category(ch) != "Sc")
    s = s.strip()
    if s and s[0] in "+-":
        s = s[1:].lstrip()
    if not _NUMBER.fullmatch(s):
        return None
    mantissa = re.split("[eE]", s, maxsplit=1)[0]
    for ch in mantissa:
        if ch in "123456789":
            return int(ch)
    return None


@dataclass
class DigitStats:
    """Leading-digit counts plus the number of tokens that had none."""

    counts: Dict[int, int] = field(default_factory=dict)
    skipped: int = 0

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def as_array(self) -> np.ndarray:
        # float so weighted counts pass through unchanged
        return np.array([self.counts.get(d, 0) for d in DIGITS], dtype=float)

    def merge(self, other: "DigitStats") -> "DigitStats":
        counts = dict(self.counts)
        for d, c in other.counts.items():
            counts[d] = counts.get(d, 0) + c
        return DigitStats(counts, self.skipped + other.skipped)


def digit_histogram(tokens: Iterable[str]) -> DigitStats:
    stats = DigitStats()
    for tok in tokens:
        d = leading_digit(tok)
        if d is None:
            stats.skipped += 1
        else:
            stats.counts[d] = stats.counts.get(d, 0) + 1
    return stats


def benford_proportions() -> np.ndarray:
    """``log10(1 + 1/d)`` for d = 1..9."""
    return rho_table(9).probabilities.copy()


def benford_expected(total: int) -> Dict[int, float]:
    """Expected count of each leading digit among ``total`` values."""
    if total < 1:
        raise ParameterError(f"total must be >= 1, got {total}")
    return {d: total * math.log1p(1.0 / d) / math.log(10) for d in DIGITS}


def mad_label(value: float) -> str:
    for cutoff, label in MAD_THRESHOLDS:
        if value <= cutoff:
            return label
    return NONCONFORMITY


@dataclass(frozen=True, eq=False)
class BenfordReport:
    total: float
    skipped: int
    observed: np.ndarray
    expected: np.ndarray
    fit: GoodnessOfFit
    mad: float
    label: str
    max_deviation_digit: int
    max_deviation: float

    def rows(self):
        for i, d in enumerate(DIGITS):
            yield d, float(self.observed[i]), float(self.expected[i])

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "skipped": self.skipped,
            "digits": [
                {"digit": d, "observed": o, "benford": e} for d, o, e in self.rows()
            ],
            "chi_square": self.fit.chi_square,
            "dof": self.fit.dof,
            "p_value": self.fit.p_value,
            "g_statistic": self.fit.g_statistic,
            "mad": self.mad,
            "label": self.label,
            "max_deviation_digit": self.max_deviation_digit,
            "max_deviation": self.max_deviation,
        }


def benford_report(stats: DigitStats) -> BenfordReport:
    """Conformance of observed leading digits to Benford's law."""
    counts = stats.as_array()
    total = counts.sum()
    if not total > 0:
        raise ParameterError("no leading digits to analyse")
    observed = counts / total
    expected = benford_proportions()
    deviation = np.abs(observed - expected)
    worst = int(np.argmax(deviation))
    value = mad(observed, expected)
    return BenfordReport(
        total=int(total) if float(total).is_integer() else float(total),
        skipped=stats.skipped,
        observed=observed,
        expected=expected,
        fit=chi_square(counts, expected * total),
        mad=value,
        label=mad_label(value),
        max_deviation_digit=DIGITS[worst],
        max_deviation=float(deviation[worst]),
    )
