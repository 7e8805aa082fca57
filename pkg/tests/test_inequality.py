import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxshare.errors import DomainError, ParameterError
from boxshare.inequality import (
    gini_from_lorenz,
    lorenz_gini,
    quantile_shares,
    rank_cumulative_shares,
)


def pairwise_gini(shares):
    s = [float(v) for v in shares]
    total = math.fsum(s)
    q = len(s)
    return math.fsum(abs(a - b) for a in s for b in s) / (2 * q * total)


def trapezoid_gini(shares):
    """1 - 2 * area under the Lorenz curve, built independently of the library."""
    s = sorted(float(v) for v in shares)
    total = math.fsum(s)
    q = len(s)
    area, prev, run = 0.0, 0.0, 0.0
    for v in s:
        run += v / total
        area += (prev + run) / (2 * q)
        prev = run
    return 1 - 2 * area


class TestQuantileShares:
    def test_top_decile(self):
        assert quantile_shares(10)[0] == pytest.approx(math.log(2) / math.log(11), rel=1e-14)
        assert quantile_shares(10)[0] == pytest.approx(0.289, abs=5e-4)

    def test_top_half(self):
        assert quantile_shares(2)[0] == pytest.approx(0.631, abs=5e-4)

    def test_single_box_of_a_million(self):
        assert quantile_shares(10**6)[0] == pytest.approx(0.0502, abs=1e-4)

    def test_bottom_decile(self):
        bottom = quantile_shares(10)[-1]
        assert bottom == pytest.approx(math.log(11 / 10) / math.log(11), rel=1e-14)
        assert bottom == pytest.approx(0.0398, abs=1e-4)

    @pytest.mark.parametrize("q", [1, 2, 10, 1000, 10**7])
    def test_sums_to_one(self, q):
        assert abs(math.fsum(quantile_shares(q)) - 1) <= 1e-12

    @pytest.mark.parametrize("q", [3, 10, 250])
    def test_cumulative_closed_form(self, q):
        s = quantile_shares(q)
        for k in range(1, q + 1):
            assert abs(math.fsum(s[:k]) - math.log(k + 1) / math.log(q + 1)) <= 1e-12


class TestRankCumulative:
    def test_top_tenth_of_a_million(self):
        shares = rank_cumulative_shares(10, 10**6)
        assert shares[0] == pytest.approx(math.log(10**5 + 1) / math.log(10**6 + 1), rel=1e-14)
        assert shares[0] == pytest.approx(0.833, abs=1e-3)
        assert math.fsum(shares) == pytest.approx(1.0, abs=1e-12)

    def test_equals_rebinning_when_one_box_per_group(self):
        assert np.allclose(rank_cumulative_shares(10, 10), quantile_shares(10), atol=1e-15)

    def test_bad(self):
        with pytest.raises(ParameterError):
            rank_cumulative_shares(10, 5)


class TestLorenzGini:
    @pytest.mark.parametrize("q", [1, 2, 7, 100])
    def test_equality(self, q):
        rep = lorenz_gini([3.0] * q)
        assert rep.gini == pytest.approx(0, abs=1e-15)
        assert np.allclose(rep.lorenz[:, 0], rep.lorenz[:, 1])

    def test_two_group_limit(self):
        for eps in (1e-3, 1e-6, 1e-9):
            assert lorenz_gini([1 - eps, eps]).gini == pytest.approx(0.5 - eps, abs=1e-12)

    def test_share_law_two_formulas(self):
        shares = quantile_shares(10)
        rep = lorenz_gini(shares)
        assert abs(rep.gini - pairwise_gini(shares)) <= 1e-10
        assert abs(rep.gini - trapezoid_gini(shares)) <= 1e-10
        assert abs(rep.gini - gini_from_lorenz(rep.lorenz)) <= 1e-10

    def test_report_shape(self):
        rep = lorenz_gini(quantile_shares(10))
        assert rep.n_groups == 10
        assert rep.top_share() == pytest.approx(0.2891, abs=1e-4)
        assert rep.bottom_share() == pytest.approx(0.0398, abs=1e-4)
        assert tuple(rep.lorenz[0]) == (0.0, 0.0) and tuple(rep.lorenz[-1]) == (1.0, 1.0)
        assert np.all(np.diff(rep.lorenz, axis=0) >= 0)
        # convex: slopes nondecreasing
        slopes = np.diff(rep.lorenz[:, 1]) / np.diff(rep.lorenz[:, 0])
        assert np.all(np.diff(slopes) >= -1e-12)
        assert abs(math.fsum(rep.shares) - 1) <= 1e-12
        assert np.all(np.diff(rep.shares) <= 0)

    @pytest.mark.parametrize("q", [2, 3, 10, 1000])
    def test_share_law_gini_positive(self, q):
        g = lorenz_gini(quantile_shares(q)).gini
        assert 0 < g < 1

    def test_permutation_invariant(self):
        shares = quantile_shares(12)
        rng = np.random.default_rng(3)
        base = lorenz_gini(shares).gini
        for _ in range(5):
            assert lorenz_gini(rng.permutation(shares)).gini == pytest.approx(base, abs=1e-15)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.floats(1e-6, 1e6), min_size=1, max_size=60))
    def test_pairwise_equals_area(self, shares):
        rep = lorenz_gini(shares)
        assert abs(rep.gini - pairwise_gini(shares)) <= 1e-10
        assert abs(rep.gini - trapezoid_gini(shares)) <= 1e-10
        assert 0 <= rep.gini < 1

    @pytest.mark.parametrize("bad", [[1.0, 0.0], [1.0, -2.0], [], [float("nan")]])
    def test_rejects(self, bad):
        with pytest.raises((DomainError, ParameterError)):
            lorenz_gini(bad)
