"""
Three-choice polls
==================

Eight internet polls with three answers each, about 1500 voters per poll,
compared with the share law for N = 3: 50%, 29%, 21%.
"""

# %%
from boxshare import builtin_poll_table, poll_report, rho_table
from boxshare.dataio import round_half_up

theory = rho_table(3).probabilities
print("theory:", [f"{100 * t:.2f}%" for t in theory],
      "->", [round_half_up(100 * t) for t in theory])

# %%
table = builtin_poll_table()
report = poll_report(table)
for row in report.rows():
    pct = " ".join(f"{p:6.2f}" for p in row.percentages)
    print(f"{row.label:>8}: {pct}  residue {row.residue:+.3f}  "
          f"MAD {row.mad:.4f}  chi2 {row.fit.chi_square:7.2f}")

# %%
# Single polls stray far from the law; the average lies much closer.
import numpy as np

single = np.mean([r.mad for r in report.polls])
print(f"mean MAD of single polls {single:.4f}, MAD of the average {report.mean_row.mad:.4f}")
