"""
Wealth shares, Lorenz curve and Gini
====================================

Splitting a population into q equal groups and treating each as a box gives
the share of each group.  The richest tenth holds about 29%, the richest half
about 63%.
"""

# %%
import math

from boxshare import cumulative_share, lorenz_gini, quantile_shares

print(f"one box out of a million: {cumulative_share(1, 10**6):.4f}")
print(f"richest tenth:            {quantile_shares(10)[0]:.4f}")
print(f"richest half:             {quantile_shares(2)[0]:.4f}")
print(f"poorest tenth:            {quantile_shares(10)[-1]:.4f}")
print(f"  (rank 9 of 10 instead:  {math.log1p(1 / 9) / math.log(11):.4f})")

# %%
# Lorenz points are ready to plot with any tool.
report = lorenz_gini(quantile_shares(10))
for x, y in report.lorenz:
    print(f"{x:4.1f}  {y:.4f}")
print(f"Gini: {report.gini:.4f}")

# %%
# Inequality grows with the number of groups.
for q in (2, 5, 10, 100, 10_000):
    print(f"q={q:6d}  Gini={lorenz_gini(quantile_shares(q)).gini:.4f}")

# %%
# Cutting a fixed population of ranked boxes gives very different numbers.
from boxshare.inequality import rank_cumulative_shares

print(f"top tenth of 10^6 ranked boxes: {rank_cumulative_shares(10, 10**6)[0]:.4f}")
