"""
The log-share law for particles in boxes
========================================

Put P indistinguishable particles into N boxes with every configuration equally
likely.  Ranked by content, box n ends up with a share ln(1 + 1/n) / ln(N + 1).
"""

# %%
# Counting configurations.  The exact count is a big integer; its logarithm is
# close to the Stirling entropy once the system is large.
import math

from boxshare import BoxEnsemble, log_multiplicity, multiplicity, shannon_info

for n_boxes, n_particles in [(3, 2), (4, 6), (100, 1000), (1000, 10000)]:
    ens = BoxEnsemble(n_boxes, n_particles)
    exact = log_multiplicity(ens)
    stirling = shannon_info(n_boxes, n_particles / n_boxes)
    print(f"N={n_boxes:5d} P={n_particles:6d}  ln(count)={exact:10.3f}  "
          f"Stirling={stirling:10.3f}  rel.err={(stirling - exact) / exact:.4f}")
print("count for N=4, P=6:", multiplicity(BoxEnsemble(4, 6)))

# %%
# Potential and occupancy are inverse to each other at unit temperature.
from boxshare import occupancy_from_potential, phi

for n in (0.5, 1, 9, 100):
    x = phi(n)
    print(f"n={n:6}  phi={x:.6f}  back={occupancy_from_potential(x):.10f}")

# %%
# The normalized table, and how the exponent alpha tilts it.
import numpy as np

from boxshare import rho_table

np.set_printoptions(precision=4, suppress=True)
for alpha in (0.0, 0.5, 1.0, 2.0):
    print(f"alpha={alpha}:", rho_table(6, alpha).probabilities)

# %%
# The Lagrange-multiplier route gives the same table whatever the multiplier.
from boxshare import lagrange_rho_table

for beta in (0.01, 1.0, 250.0):
    diff = np.abs(lagrange_rho_table(9, beta).probabilities - rho_table(9).probabilities)
    print(f"beta={beta:7}: max difference {diff.max():.1e}")
