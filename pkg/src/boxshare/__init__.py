"""Maximum-entropy shares of particles in boxes.

When every configuration of P particles in N boxes is equally likely, the
normalized share of the n-th richest box is ``ln(1 + 1/n) / ln(N + 1)``.  The
package computes that law and its exponent generalization, checks it against
exact enumeration and Monte Carlo sampling, and applies it to leading digits,
polls and wealth shares.

Modules
-------
core        counting, entropy, potential and the share law
exact       enumeration of configurations and exact one-box marginals
sampler     seeded uniform sampling of configurations
benford     leading-digit extraction and conformance reports
inequality  group shares, Lorenz curve, Gini coefficient
fitting     chi-square, G, MAD and the exponent fit
dataio      input parsing, the built-in poll table, serialization
cli         command-line entry point
"""

__version__ = "0.1.0"

from .core import (
    BoxEnsemble,
    ShareDistribution,
    ShareKind,
    Temperature,
    cumulative_share,
    lagrange_phi,
    lagrange_rho_table,
    log_multiplicity,
    multiplicity,
    occupancy_from_potential,
    phi,
    rho_table,
    shannon_info,
)
from .errors import BoxshareError, DomainError, FitError, ParameterError, ResourceError
from .exact import deviation_report, enumerate_configurations, exact_marginal
from .sampler import occupancy_histogram, sample_configuration
from .benford import benford_expected, benford_report, digit_histogram, leading_digit
from .inequality import lorenz_gini, quantile_shares
from .fitting import chi_square, fit_alpha, mad
from .dataio import builtin_poll_table, ingest_numbers, poll_report
