import math
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxshare.core import (
    BoxEnsemble,
    ShareKind,
    Temperature,
    _alpha_probabilities,
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
from boxshare.errors import DomainError, ParameterError


@lru_cache(maxsize=None)
def pascal(n_boxes, n_particles):
    # Omega(N, P) = Omega(N-1, P) + Omega(N, P-1): last box empty, or take one from it
    if n_boxes == 1 or n_particles == 0:
        return 1
    return pascal(n_boxes - 1, n_particles) + pascal(n_boxes, n_particles - 1)


class TestBoxEnsemble:
    def test_rejects_zero_boxes(self):
        with pytest.raises(ParameterError):
            BoxEnsemble(0)

    def test_rejects_negative_particles(self):
        with pytest.raises(ParameterError):
            BoxEnsemble(3, -1)

    def test_particles_optional(self):
        assert BoxEnsemble(4).n_particles is None


class TestMultiplicity:
    @pytest.mark.parametrize(
        "n_boxes, n_particles, expected", [(3, 2, 6), (1, 7, 1), (4, 6, 84), (2, 3, 4)]
    )
    def test_examples(self, n_boxes, n_particles, expected):
        assert multiplicity(BoxEnsemble(n_boxes, n_particles)) == expected

    def test_four_six_matches_recurrence_oracle(self):
        assert multiplicity(BoxEnsemble(4, 6)) == pascal(4, 6) == 84

    def test_missing_particles(self):
        with pytest.raises(ParameterError):
            multiplicity(BoxEnsemble(3))

    def test_exact_for_huge_arguments(self):
        value = multiplicity(BoxEnsemble(300, 400))
        assert isinstance(value, int)
        assert value == math.factorial(699) // (math.factorial(299) * math.factorial(400))

    @settings(max_examples=200, deadline=None)
    @given(st.integers(2, 30), st.integers(1, 30))
    def test_pascal_recurrence(self, n_boxes, n_particles):
        assert multiplicity(BoxEnsemble(n_boxes, n_particles)) == multiplicity(
            BoxEnsemble(n_boxes - 1, n_particles)
        ) + multiplicity(BoxEnsemble(n_boxes, n_particles - 1))


class TestLogMultiplicity:
    def test_small(self):
        assert log_multiplicity(BoxEnsemble(3, 2)) == pytest.approx(math.log(6), rel=1e-12)
        assert log_multiplicity(BoxEnsemble(3, 2)) == pytest.approx(1.791759, abs=1e-6)

    @pytest.mark.parametrize("p", [0, 1, 50, 10**9])
    def test_single_box_is_zero(self, p):
        assert log_multiplicity(BoxEnsemble(1, p)) == 0.0

    @pytest.mark.parametrize(
        "n_boxes, n_particles",
        [(100, 1000), (1000, 10000), (10**6, 1), (10**9, 3), (2, 10**5), (5000, 5000)],
    )
    def test_matches_exact_big_integer(self, n_boxes, n_particles):
        ens = BoxEnsemble(n_boxes, n_particles)
        exact = math.log(multiplicity(ens))
        assert abs(log_multiplicity(ens) - exact) <= 1e-9 * exact

    def test_usable_at_1e9(self):
        v = log_multiplicity(BoxEnsemble(10**9, 10**9))
        # ln C(2M, M) ~ 2M ln 2 for large M
        assert v == pytest.approx(2e9 * math.log(2), rel=1e-8)


class TestShannonInfo:
    def test_unit(self):
        assert shannon_info(1, 1.0) == pytest.approx(2 * math.log(2), rel=1e-15)

    def test_formula(self):
        assert shannon_info(100, 10) == pytest.approx(
            100 * (11 * math.log(11) - 10 * math.log(10)), rel=1e-14
        )

    def test_small_occupancy_tends_to_zero(self):
        small = shannon_info(5, 1e-4)
        assert 0 < small < shannon_info(5, 1e-3) < 0.05

    @pytest.mark.parametrize("bad", [0.0, -1.0])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            shannon_info(3, bad)

    def test_stirling_error_shrinks_with_size(self):
        def rel(n_boxes, n_particles):
            exact = log_multiplicity(BoxEnsemble(n_boxes, n_particles))
            return abs(shannon_info(n_boxes, n_particles / n_boxes) - exact) / exact

        errors = [rel(100, 1000), rel(1000, 10000), rel(10000, 100000)]
        assert errors[0] > errors[1] > errors[2]
        assert errors[2] < 1e-3


class TestPhi:
    def test_values(self):
        assert phi(1, 1.0) == pytest.approx(math.log(2), rel=1e-15)
        assert phi(1, 1.0) == pytest.approx(0.693147, abs=1e-6)
        assert phi(9, Temperature(1.0)) == pytest.approx(0.105361, abs=1e-6)
        assert phi(1, Temperature(2.0)) == pytest.approx(2 * math.log(2), rel=1e-15)

    def test_decreasing_and_vanishing(self):
        values = [phi(n) for n in (0.1, 1, 2, 10, 1e3, 1e9)]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert values[-1] < 1e-8

    @pytest.mark.parametrize("bad", [0, -2.5])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            phi(bad)

    def test_temperature_must_be_positive(self):
        with pytest.raises(DomainError):
            Temperature(0.0)
        with pytest.raises(DomainError):
            phi(1, -1.0)


class TestOccupancy:
    def test_examples(self):
        assert occupancy_from_potential(math.log(2)) == pytest.approx(1.0, rel=1e-14)
        assert occupancy_from_potential(math.log(10 / 9)) == pytest.approx(9.0, rel=1e-12)

    @pytest.mark.parametrize("n", [0.01, 0.5, 1, 3, 9, 100, 1e6])
    def test_inverts_phi(self, n):
        assert abs(occupancy_from_potential(phi(n, 1.0)) - n) <= 1e-10 * max(1.0, n)

    @pytest.mark.parametrize("n", [0.5, 1, 3, 100])
    def test_round_trip_absolute(self, n):
        assert abs(occupancy_from_potential(phi(n, 1.0)) - n) <= 1e-10

    def test_domain(self):
        with pytest.raises(DomainError):
            occupancy_from_potential(0.0)


class TestRhoTable:
    def test_benford_values(self):
        t = rho_table(9)
        assert t[1] == pytest.approx(math.log10(2), abs=1e-15)
        assert t[1] == pytest.approx(0.30103, abs=1e-6)
        assert t[9] == pytest.approx(0.045757, abs=1e-6)
        assert t[1] / t[9] == pytest.approx(6.579, abs=1e-3)

    def test_three_boxes(self):
        t = rho_table(3)
        assert t.probabilities == pytest.approx([0.5, 0.2924813, 0.2075187], abs=1e-7)

    def test_alpha_zero_uniform(self):
        t = rho_table(5, alpha=0)
        assert t.kind is ShareKind.ALPHA
        assert np.allclose(t.probabilities, 0.2, atol=1e-15)

    def test_rejects_zero_boxes(self):
        with pytest.raises(ParameterError):
            rho_table(0)

    def test_rejects_nonfinite_alpha(self):
        with pytest.raises(ParameterError):
            rho_table(3, alpha=float("inf"))

    def test_immutable(self):
        t = rho_table(4)
        with pytest.raises(ValueError):
            t.probabilities[0] = 1.0

    @pytest.mark.parametrize("n_boxes", [1, 2, 9, 1000, 10**6, 10**7])
    def test_telescoping_normalization(self, n_boxes):
        assert abs(math.fsum(rho_table(n_boxes).probabilities) - 1.0) <= 1e-12

    @pytest.mark.parametrize("n_boxes", [1, 9, 1000])
    def test_telescoping_sum_of_numerators(self, n_boxes):
        numerators = [math.log1p(1 / n) for n in range(1, n_boxes + 1)]
        assert math.fsum(numerators) == pytest.approx(math.log(n_boxes + 1), rel=1e-14)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 3000), st.floats(0.01, 8.0))
    def test_strictly_decreasing_for_positive_alpha(self, n_boxes, alpha):
        p = rho_table(n_boxes, alpha).probabilities
        assert np.all(p > 0)
        assert np.all(p[:-1] > p[1:])
        assert abs(math.fsum(p) - 1) <= 1e-12

    @pytest.mark.parametrize("n_boxes", [1, 3, 9, 500, 10**5])
    def test_alpha_one_reduction(self, n_boxes):
        general = _alpha_probabilities(n_boxes, 1.0)
        plain = rho_table(n_boxes).probabilities
        assert np.max(np.abs(general - plain)) <= 1e-12

    def test_extreme_alpha_stays_finite(self):
        p = rho_table(50, alpha=400).probabilities
        assert np.all(p > 0) or p[0] == pytest.approx(1.0)
        assert math.fsum(p) == pytest.approx(1.0, abs=1e-12)


class TestCumulativeShare:
    @pytest.mark.parametrize(
        "k, n_boxes, expected",
        [(1, 1_000_000, 0.0502), (1, 10, 0.2891), (1, 2, 0.6309)],
    )
    def test_paper_values(self, k, n_boxes, expected):
        assert cumulative_share(k, n_boxes) == pytest.approx(expected, abs=1e-4)

    @pytest.mark.parametrize("n_boxes", [1, 2, 7, 100])
    def test_full_sum_is_one(self, n_boxes):
        assert cumulative_share(n_boxes, n_boxes) == 1.0

    def test_matches_table_prefix_sums(self):
        t = rho_table(40)
        for k in range(1, 41):
            assert cumulative_share(k, 40) == pytest.approx(
                math.fsum(t.probabilities[:k]), abs=1e-14
            )

    def test_monotone_concave(self):
        c = np.array([cumulative_share(k, 200) for k in range(1, 201)])
        steps = np.diff(c)
        assert np.all(steps > 0)
        assert np.all(np.diff(steps) < 0)

    @pytest.mark.parametrize("k", [0, 11])
    def test_out_of_range(self, k):
        with pytest.raises(ParameterError):
            cumulative_share(k, 10)


class TestLagrange:
    def test_unit_scale(self):
        assert lagrange_phi(1, 4, 4.0) == pytest.approx(math.log(2), rel=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            lagrange_phi(1, 4, 0.0)

    @pytest.mark.parametrize("beta", [0.37, 1.0, 113.0, 1e-6, 1e6])
    def test_normalization_recovers_share_law(self, beta):
        induced = lagrange_rho_table(9, beta).probabilities
        target = rho_table(9).probabilities
        assert np.max(np.abs(induced - target)) <= 1e-12
        assert int(np.argmax(induced)) == 0
        assert list(np.argsort(-induced)) == list(np.argsort(-target))

    def test_beta_only_rescales(self):
        a = [lagrange_phi(n, 9, 0.37) for n in range(1, 10)]
        b = [lagrange_phi(n, 9, 113.0) for n in range(1, 10)]
        ratios = np.array(a) / np.array(b)
        assert np.allclose(ratios, 113.0 / 0.37, rtol=1e-13)
