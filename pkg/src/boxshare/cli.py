"""Command-line interface: ``python -m boxshare <command> ...``.

Exit status is 0 on success, 1 on a parameter error and 2 on an I/O error.
Diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from typing import List, Optional, Sequence, TextIO

import numpy as np

from . import __version__
from .benford import benford_report, digit_histogram
from .core import BoxEnsemble, rho_table
from .dataio import (
    DEFAULT_VOTERS,
    INPUT_FORMATS,
    builtin_poll_table,
    distribution_to_csv,
    dumps_json,
    format_table,
    ingest_numbers,
    poll_report,
    read_poll_table,
    round_half_up,
    write_csv,
)
from .errors import BoxshareError
from .exact import DEFAULT_CAP, deviation_report, enumerate_configurations, exact_marginal
from .fitting import fit_alpha
from .inequality import lorenz_gini, quantile_shares, rank_cumulative_shares
from .sampler import occupancy_histogram

EXIT_OK = 0
EXIT_PARAMETER = 1
EXIT_IO = 2

OUT_FORMATS = ("table", "csv", "json")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _emit(args, out: TextIO, header, rows, payload) -> None:
    if args.out == "json":
        out.write(dumps_json(payload) + "\n")
    elif args.out == "csv":
        write_csv(header, rows, out)
    else:
        out.write(format_table(header, rows))


def cmd_dist(args, out):
    dist = rho_table(args.boxes, args.alpha)
    if args.out == "csv":
        distribution_to_csv(dist, out)
        return
    rows = list(zip(dist.ranks.tolist(), dist.probabilities, dist.cumulative()))
    _emit(args, out, ("n", "probability", "cumulative"), rows, dist.to_dict())


def cmd_enumerate(args, out):
    ens = BoxEnsemble(args.boxes, args.particles)
    configs = enumerate_configurations(ens, cap=args.cap)
    header = [f"box{i + 1}" for i in range(args.boxes)]
    if args.out == "json":
        out.write(dumps_json({"n_boxes": args.boxes, "n_particles": args.particles,
                              "configurations": [list(c) for c in configs]}) + "\n")
    elif args.out == "csv":
        write_csv(header, configs, out)
    else:
        out.write(format_table(header, configs))


def cmd_marginal(args, out):
    ens = BoxEnsemble(args.boxes, args.particles)
    marg = exact_marginal(ens)
    rows = list(zip(range(marg.prob.size), marg.prob))
    payload = {"n_boxes": args.boxes, "n_particles": args.particles, "prob": marg.prob}
    _emit(args, out, ("k", "probability"), rows, payload)


def cmd_deviation(args, out):
    rep = deviation_report(BoxEnsemble(args.boxes, args.particles))
    header = ("n", "exact_conditional", "eq2_renormalized")
    rows = [(r.n, r.exact_conditional, r.eq2_renormalized) for r in rep.rows]
    if args.out == "json":
        out.write(dumps_json({
            "n_boxes": rep.n_boxes,
            "n_particles": rep.n_particles,
            "rows": [dict(zip(header, r)) for r in rows],
            "tail_mass": rep.tail_mass,
            "total_variation": rep.total_variation,
        }) + "\n")
        return
    if args.out == "csv":
        write_csv(header, rows, out)
        write_csv(("tail_mass", rep.tail_mass), [], out)
        write_csv(("total_variation", rep.total_variation), [], out)
        return
    out.write(format_table(header, rows))
    out.write(f"tail mass above n={len(rows)}: {rep.tail_mass:.6f}\n")
    out.write(f"total variation distance: {rep.total_variation:.6f}\n")


def cmd_sample(args, out):
    ens = BoxEnsemble(args.boxes, args.particles)
    hist = occupancy_histogram(ens, args.trials, args.seed, args.workers)
    counts = hist.counts(args.particles + 1)
    rows = list(zip(range(counts.size), counts.tolist()))
    payload = {
        "n_boxes": args.boxes,
        "n_particles": args.particles,
        "trials": args.trials,
        "seed": args.seed,
        "bins": {str(k): c for k, c in rows},
        "total_observations": hist.total_observations,
    }
    _emit(args, out, ("k", "count"), rows, payload)


def cmd_benford(args, out):
    tokens = ingest_numbers(args.input, args.format, args.column)
    rep = benford_report(digit_histogram(tokens))
    if args.out == "json":
        out.write(dumps_json(rep.to_dict()) + "\n")
        return
    rows = list(rep.rows())
    if args.out == "csv":
        write_csv(("digit", "observed", "benford"), rows, out)
        return
    out.write(format_table(("digit", "observed", "benford"), rows))
    out.write(
        f"analysed {rep.total}, skipped {rep.skipped}\n"
        f"chi-square {rep.fit.chi_square:.4f} (dof {rep.fit.dof}), p = {rep.fit.p_value:.4g}\n"
        f"G-statistic {rep.fit.g_statistic:.4f}\n"
        f"MAD {rep.mad:.6f}: {rep.label}\n"
        f"largest deviation at digit {rep.max_deviation_digit} ({rep.max_deviation:.6f})\n"
    )


def cmd_wealth(args, out):
    if args.rank_cumulative:
        shares = rank_cumulative_shares(args.groups, args.boxes)
    else:
        shares = quantile_shares(args.groups)
    rep = lorenz_gini(shares)
    if args.out == "json":
        out.write(dumps_json({
            "n_groups": rep.n_groups,
            "method": "rank-cumulative" if args.rank_cumulative else "rebinned",
            "shares": shares,
            "lorenz": rep.lorenz,
            "gini": rep.gini,
        }) + "\n")
    elif args.out == "csv":
        write_csv(("population_fraction", "wealth_fraction"), rep.lorenz, out)
    else:
        rows = [(i + 1, s, float(np.sum(shares[: i + 1]))) for i, s in enumerate(shares)]
        out.write(format_table(("group", "share", "cumulative"), rows))
        out.write(f"gini {rep.gini:.6f}\n")


def _read_counts(path, n_boxes: int) -> np.ndarray:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    counts = np.zeros(n_boxes)
    for row in rows[1:]:
        try:
            n, c = int(row[0]), float(row[1])
        except (ValueError, IndexError):
            raise BoxshareError(f"bad histogram row {row!r}; expected n,count") from None
        if not 1 <= n <= n_boxes:
            raise BoxshareError(f"rank {n} outside 1..{n_boxes}")
        counts[n - 1] += c
    return counts


def cmd_fit(args, out):
    res = fit_alpha(_read_counts(args.input, args.boxes), args.boxes)
    payload = {
        "alpha_hat": res.alpha_hat,
        "std_error": res.std_error,
        "log_likelihood": res.log_likelihood,
        "iterations": res.iterations,
    }
    _emit(args, out, tuple(payload), [tuple(payload.values())], payload)


def cmd_poll(args, out):
    table = builtin_poll_table() if args.input is None else read_poll_table(args.input)
    rep = poll_report(table, voters=args.voters)
    header = ["poll", *(f"{c}_pct" for c in rep.choice_labels), "residue",
              "chi_square", "p_value", "mad"]
    rows = [
        (r.label, *r.percentages, r.residue, r.fit.chi_square, r.fit.p_value, r.mad)
        for r in rep.rows()
    ]
    if args.out == "json":
        out.write(dumps_json({
            "choices": rep.choice_labels,
            "theoretical": rep.theoretical,
            "theoretical_pct_rounded": [round_half_up(100 * t) for t in rep.theoretical],
            "voters_per_poll": rep.voters,
            "rows": [dict(zip(header, r)) for r in rows],
        }) + "\n")
    elif args.out == "csv":
        write_csv(header, rows, out)
    else:
        out.write(format_table(header, rows, digits=4))
        theo = ", ".join(f"{100 * t:.2f}%" for t in rep.theoretical)
        out.write(f"theoretical: {theo}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", choices=OUT_FORMATS, default="table",
                        help="output format (default: table)")

    parser = _Parser(prog="boxshare", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    def ensemble(p):
        p.add_argument("--boxes", type=int, required=True)
        p.add_argument("--particles", type=int, required=True)

    p = add("dist", cmd_dist, "share of each rank n = 1..N")
    p.add_argument("--boxes", type=int, required=True)
    p.add_argument("--alpha", type=float, default=1.0)

    p = add("enumerate", cmd_enumerate, "list every configuration")
    ensemble(p)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    ensemble(add("marginal", cmd_marginal, "exact occupancy distribution of one box"))
    ensemble(add("deviation", cmd_deviation, "exact marginal against the share law"))

    p = add("sample", cmd_sample, "Monte Carlo histogram of box 1's occupancy")
    ensemble(p)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)

    p = add("benford", cmd_benford, "leading-digit conformance report")
    p.add_argument("--input", required=True, help="file path, or - for stdin")
    p.add_argument("--format", choices=INPUT_FORMATS, default="plain")
    p.add_argument("--column")

    p = add("wealth", cmd_wealth, "group wealth shares, Lorenz curve and Gini")
    p.add_argument("--groups", type=int, required=True)
    p.add_argument("--rank-cumulative", action="store_true",
                   help="cut a fixed population of --boxes ranked boxes into groups")
    p.add_argument("--boxes", type=int, default=1_000_000)

    p = add("fit", cmd_fit, "fit the exponent alpha to an n,count CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--boxes", type=int, required=True)

    p = add("poll", cmd_poll, "compare polls with the three-choice share law")
    p.add_argument("--input", help="poll CSV (default: built-in eight-poll table)")
    p.add_argument("--voters", type=int, default=DEFAULT_VOTERS)
    return parser


def main(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None) -> int:
    out = sys.stdout if stdout is None else stdout
    try:
        args = build_parser().parse_args(argv)
        args.func(args, out)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_PARAMETER
    except OSError as exc:
        print(f"boxshare: {exc}", file=sys.stderr)
        return EXIT_IO
    except (BoxshareError, ValueError) as exc:
        print(f"boxshare: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    return EXIT_OK
