"""
Leading digits and Benford's law
================================

With N = 9 the share law is Benford's law, log10(1 + 1/d).  Here synthetic
"ledger" amounts that span many orders of magnitude are compared with it, and
so are uniformly drawn amounts.
"""

# %%
import numpy as np

from boxshare import benford_report, digit_histogram, rho_table

table = rho_table(9)
print("Benford proportions:", np.round(table.probabilities, 5))
print(f"digit 1 is {table[1] / table[9]:.3f} times as frequent as digit 9")

# %%
# Products of many random factors spread over decades and follow the law closely.
rng = np.random.default_rng(2008)
amounts = np.prod(rng.uniform(0.5, 3.0, size=(50_000, 12)), axis=1) * 100
tokens = [f"{a:,.2f}" for a in amounts] + ["", "n/a", "0.00"]
report = benford_report(digit_histogram(tokens))
print(f"multiplicative data: MAD={report.mad:.4f} ({report.label}), "
      f"skipped {report.skipped}, chi2 p={report.fit.p_value:.3f}")

# %%
# Amounts drawn uniformly from a fixed range do not.
uniform = [f"{a:.2f}" for a in rng.uniform(100, 999, 50_000)]
report = benford_report(digit_histogram(uniform))
print(f"uniform data: MAD={report.mad:.4f} ({report.label}), "
      f"largest deviation at digit {report.max_deviation_digit}")
