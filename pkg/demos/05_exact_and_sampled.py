"""
Exact marginals, Monte Carlo and the share law
==============================================

The share law is an equilibrium heuristic.  For finite N and P the exact
distribution of one box's content follows from counting configurations; a
seeded sampler reproduces it, and the deviation report shows how far the
share law sits from it.
"""

# %%
import numpy as np

from boxshare import BoxEnsemble, deviation_report, exact_marginal, occupancy_histogram
from boxshare.fitting import chi_square, pool_sparse

ens = BoxEnsemble(5, 20)
prob = exact_marginal(ens).prob
hist = occupancy_histogram(ens, trials=200_000, seed=20080210, workers=4)
counts = hist.counts(prob.size)
for k in range(8):
    print(f"k={k:2d}  exact={prob[k]:.4f}  sampled={counts[k] / hist.total_observations:.4f}")
obs, exp = pool_sparse(counts, prob * hist.total_observations)
print(f"chi-square p-value: {chi_square(obs, exp).p_value:.3f}")

# %%
for n_boxes, n_particles in [(2, 3), (9, 9), (9, 90), (9, 9000)]:
    rep = deviation_report(BoxEnsemble(n_boxes, n_particles))
    print(f"N={n_boxes} P={n_particles:5d}: TV distance {rep.total_variation:.3f} "
          f"(mass beyond the table {rep.tail_mass:.3f})")

# %%
# Fitting the exponent back from sampled ranks.
from boxshare import fit_alpha, rho_table
from boxshare.sampler import sample_ranks

for alpha in (0.5, 1.0, 2.0):
    ranks = sample_ranks(rho_table(9, alpha), 100_000, seed=7)
    fit = fit_alpha(np.bincount(ranks, minlength=10)[1:], 9)
    print(f"true alpha {alpha}: fitted {fit.alpha_hat:.4f} +/- {fit.std_error:.4f}")
