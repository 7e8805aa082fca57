"""Data ingestion, the built-in poll fixture, and report serialization."""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np

from .core import ShareDistribution, ShareKind, rho_table
from .errors import ParameterError
from .fitting import GoodnessOfFit, chi_square, mad

__all__ = [
    "INPUT_FORMATS",
    "DEFAULT_VOTERS",
    "round_half_up",
    "ingest_numbers",
    "PollTable",
    "PollComparison",
    "PollReport",
    "builtin_poll_table",
    "read_poll_table",
    "poll_report",
    "format_float",
    "dumps_json",
    "write_csv",
    "format_table",
    "distribution_to_csv",
    "distribution_from_csv",
    "distribution_from_json",
]

INPUT_FORMATS = ("plain", "csv", "json")
DEFAULT_VOTERS = 1500

Source = Union[str, Path, TextIO, None]


def round_half_up(x: float, places: int = 0) -> float:
    """Round halves away from zero, as in printed percentage tables."""
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_UP))


def _read_text(source: Source) -> str:
    if source is None or source == "-":
        return sys.stdin.read()
    if hasattr(source, "read"):
        return source.read()
    with open(source, encoding="utf-8", newline="") as fh:
        return fh.read()


def _json_tokens(value) -> Iterator[str]:
    if isinstance(value, list):
        for item in value:
            yield from _json_tokens(item)
    elif value is None:
        yield ""
    elif isinstance(value, bool):
        yield str(value).lower()
    else:
        yield str(value)


def ingest_numbers(
    source: Source, format: str = "plain", column: Optional[str] = None
) -> Iterator[str]:
    """Yield raw text tokens from a file, an open stream, or stdin (``None`` / ``"-"``).

    ``plain`` is one token per line, ``csv`` has a header row and needs
    ``column`` when there is more than one column, ``json`` is an array
    (nested arrays are flattened).  JSON numbers keep their source spelling.
    Nothing is converted to a number here.
    """
    if format not in INPUT_FORMATS:
        raise ParameterError(f"unknown input format {format!r}; choose from {INPUT_FORMATS}")
    text = _read_text(source)
    if format == "plain":
        return iter([line.strip() for line in text.splitlines() if line.strip()])
    if format == "json":
        try:
            data = json.loads(text, parse_float=str, parse_int=str)
        except json.JSONDecodeError as exc:
            raise ParameterError(f"invalid JSON input: {exc}") from None
        if not isinstance(data, list):
            raise ParameterError("JSON input must be an array")
        return _json_tokens(data)
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        return iter([])
    header = [h.strip() for h in rows[0]]
    if column is None:
        if len(header) != 1:
            raise ParameterError(f"CSV has columns {header}; select one with column=")
        idx = 0
    elif column in header:
        idx = header.index(column)
    else:
        raise ParameterError(f"column {column!r} not in CSV header {header}")
    # short rows become empty tokens and are skipped downstream
    return iter([row[idx] if idx < len(row) else "" for row in rows[1:]])


@dataclass(frozen=True, eq=False)
class PollTable:
    """Vote percentages: one row per choice, one column per poll."""

    choice_labels: Tuple[str, ...]
    columns: np.ndarray
    average: Optional[np.ndarray] = None
    theoretical: Optional[np.ndarray] = None
    poll_labels: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        cols = np.asarray(self.columns, dtype=float)
        if cols.ndim != 2 or cols.shape[0] != len(self.choice_labels):
            raise ParameterError(
                f"columns must be a {len(self.choice_labels)} x polls matrix, got {cols.shape}"
            )
        object.__setattr__(self, "columns", cols)
        if not self.poll_labels:
            labels = tuple(str(i + 1) for i in range(cols.shape[1]))
            object.__setattr__(self, "poll_labels", labels)
        for name in ("average", "theoretical"):
            value = getattr(self, name)
            if value is not None:
                value = np.asarray(value, dtype=float)
                if value.shape != (cols.shape[0],):
                    raise ParameterError(f"{name} must have one entry per choice")
                object.__setattr__(self, name, value)

    @property
    def n_choices(self) -> int:
        return self.columns.shape[0]

    def column_means(self) -> np.ndarray:
        """Row means over all polls, unrounded."""
        return self.columns.mean(axis=1)


def builtin_poll_table() -> PollTable:
    """Eight three-choice internet polls, about 1500 voters each (Feb-Apr 2008)."""
    return PollTable(
        choice_labels=("A", "B", "C"),
        columns=np.array(
            [
                [55, 39, 47, 64, 46, 56, 65, 47],
                [32, 38, 31, 20, 37, 30, 19, 33],
                [13, 23, 22, 17, 17, 15, 16, 19],
            ],
            dtype=float,
        ),
        average=np.array([52.0, 30.0, 18.0]),
        theoretical=np.array([50.0, 29.0, 21.0]),
    )


def read_poll_table(source: Source) -> PollTable:
    """Parse a poll CSV.

    The header is ``choice,<poll>,<poll>,...`` optionally followed by
    ``Average`` and/or ``Theoretical`` columns; each later row is one choice.
    """
    rows = [r for r in csv.reader(io.StringIO(_read_text(source))) if r]
    if len(rows) < 2:
        raise ParameterError("poll CSV needs a header and at least one choice row")
    header = [h.strip() for h in rows[0]]
    lower = [h.lower() for h in header]
    extra = {name: lower.index(name) for name in ("average", "theoretical") if name in lower}
    poll_idx = [i for i in range(1, len(header)) if i not in extra.values()]
    if not poll_idx:
        raise ParameterError("poll CSV has no poll columns")
    labels, cols, avg, theo = [], [], [], []
    try:
        for row in rows[1:]:
            if len(row) != len(header):
                raise ParameterError(f"row {row} does not match header width {len(header)}")
            labels.append(row[0].strip())
            cols.append([float(row[i].strip().rstrip("%")) for i in poll_idx])
            if "average" in extra:
                avg.append(float(row[extra["average"]].strip().rstrip("%")))
            if "theoretical" in extra:
                theo.append(float(row[extra["theoretical"]].strip().rstrip("%")))
    except ValueError as exc:
        raise ParameterError(f"non-numeric poll cell: {exc}") from None
    return PollTable(
        tuple(labels),
        np.array(cols),
        np.array(avg) if avg else None,
        np.array(theo) if theo else None,
        tuple(header[i] for i in poll_idx),
    )


@dataclass(frozen=True)
class PollComparison:
    label: str
    percentages: Tuple[float, ...]
    residue: float
    proportions: Tuple[float, ...]
    fit: GoodnessOfFit
    mad: float


@dataclass(frozen=True)
class PollReport:
    """Every poll, and the average rows, compared with the share law for N = choices."""

    choice_labels: Tuple[str, ...]
    theoretical: Tuple[float, ...]
    voters: int
    polls: Tuple[PollComparison, ...]
    mean_row: PollComparison
    printed_average: Optional[PollComparison]

    def rows(self) -> List[PollComparison]:
        out = list(self.polls) + [self.mean_row]
        if self.printed_average is not None:
            out.append(self.printed_average)
        return out


def _compare(label: str, pct: np.ndarray, theory: np.ndarray, voters: int) -> PollComparison:
    total = float(pct.sum())
    if total <= 0:
        raise ParameterError(f"poll {label} has no votes")
    prop = pct / total
    return PollComparison(
        label=label,
        percentages=tuple(float(v) for v in pct),
        residue=total - 100.0,
        proportions=tuple(float(v) for v in prop),
        fit=chi_square(prop * voters, theory * voters),
        mad=mad(prop, theory),
    )


def poll_report(
    table: PollTable, voters: int = DEFAULT_VOTERS, theoretical: Optional[Sequence[float]] = None
) -> PollReport:
    """Compare each poll and the average rows with the share law for N = number of choices.

    Columns are renormalized to proportions; ``residue`` keeps how far the
    printed percentages miss 100.  Counts for chi-square assume ``voters``
    voters per poll.
    """
    if voters < 1:
        raise ParameterError(f"voters must be >= 1, got {voters}")
    theory = rho_table(table.n_choices).probabilities if theoretical is None else theoretical
    theory = np.asarray(theory, dtype=float)
    if theory.shape != (table.n_choices,):
        raise ParameterError(
            f"theoretical column has {theory.size} entries for {table.n_choices} choices"
        )
    theory = theory / theory.sum()
    polls = tuple(
        _compare(table.poll_labels[j], table.columns[:, j], theory, voters)
        for j in range(table.columns.shape[1])
    )
    n_polls = table.columns.shape[1]
    mean_row = _compare("mean", table.column_means(), theory, voters * n_polls)
    printed = None
    if table.average is not None:
        printed = _compare("average", table.average, theory, voters * n_polls)
    return PollReport(
        table.choice_labels,
        tuple(float(v) for v in theory),
        voters,
        polls,
        mean_row,
        printed,
    )


# --- serialization -----------------------------------------------------------


def format_float(x: float) -> str:
    """17 significant digits; enough to round-trip any double."""
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _plain(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, (tuple, list)):
        return list(obj)
    return obj


def dumps_json(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with every float written to 17 significant digits."""
    obj = _plain(obj)
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k))}: {dumps_json(v, indent, _level + 1)}"
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(isinstance(_plain(v), (int, float)) for v in obj):
            return "[" + ", ".join(dumps_json(v) for v in obj) + "]"
        items = [pad + dumps_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    return json.dumps(str(obj))


def _cell(v) -> str:
    v = _plain(v)
    if isinstance(v, float):
        return format_float(v)
    return str(v)


def write_csv(header: Sequence[str], rows, out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([_cell(h) for h in header])
    for row in rows:
        writer.writerow([_cell(v) for v in row])


def format_table(header: Sequence[str], rows, digits: int = 6) -> str:
    """Fixed-width text table for terminal display."""

    def show(v):
        v = _plain(v)
        if isinstance(v, float):
            return f"{v:.{digits}f}"
        return str(v)

    body = [[show(v) for v in row] for row in rows]
    widths = [len(h) for h in header]
    for row in body:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in body)
    return "\n".join(lines) + "\n"


def distribution_to_csv(dist: ShareDistribution, out: TextIO) -> None:
    write_csv(("n", "probability"), zip(dist.ranks.tolist(), dist.probabilities), out)


def distribution_from_csv(source: Source, alpha: float = 1.0) -> ShareDistribution:
    rows = list(csv.reader(io.StringIO(_read_text(source))))
    if not rows or [h.strip() for h in rows[0]] != ["n", "probability"]:
        raise ParameterError("distribution CSV must have header n,probability")
    body = [r for r in rows[1:] if r]
    ranks = [int(r[0]) for r in body]
    if ranks != list(range(1, len(body) + 1)):
        raise ParameterError("distribution ranks must run 1..N in order")
    probs = np.array([float(r[1]) for r in body])
    kind = ShareKind.PLAIN if alpha == 1.0 else ShareKind.ALPHA
    return ShareDistribution(len(body), probs, alpha, kind)


def distribution_from_json(source: Source) -> ShareDistribution:
    data = json.loads(_read_text(source))
    try:
        return ShareDistribution(
            int(data["n_boxes"]),
            np.array(data["probabilities"], dtype=float),
            float(data.get("alpha", 1.0)),
            ShareKind(data.get("kind", "plain")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParameterError(f"malformed distribution JSON: {exc}") from None
