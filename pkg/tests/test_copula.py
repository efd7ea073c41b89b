"""Unit tests for truncated normal draws and the extended rank likelihood"""
import math
import unittest

import numpy as np
from scipy import stats
from scipy.special import ndtri

from copula import (
    ColumnRanks,
    column_ranks,
    in_rank_set,
    init_latent,
    level_codes,
    rank_bounds,
    refresh_latent,
    sample_truncated_normal,
    truncated_normal_draws,
)
from errors import NumericalError
from models import CholeskyParams, Dag, ObservedData, VariableType


def mixed_data(n=60, seed=0):
    rng = np.random.default_rng(seed)
    X = np.column_stack([
        rng.integers(0, 2, n),
        rng.integers(0, 6, n),
        rng.poisson(3.0, n),
        rng.standard_normal(n),
    ])
    types = [VariableType.BINARY, VariableType.ORDINAL, VariableType.COUNT, VariableType.CONTINUOUS]
    return ObservedData(X=X, var_types=types)


class TestTruncatedNormal(unittest.TestCase):
    """Test truncated normal sampling"""

    def setUp(self):
        self.rng = np.random.default_rng(42)

    def test_untruncated_moments(self):
        """Test untruncated moments"""
        draws = truncated_normal_draws(np.full(200000, 1.5), 2.0, -np.inf, np.inf, self.rng)
        se = 2.0 / math.sqrt(draws.size)
        self.assertLess(abs(draws.mean() - 1.5), 4 * se)
        self.assertAlmostEqual(draws.var(), 4.0, delta=0.05)

    def test_half_normal_mean(self):
        """N(0, 1) on (0, inf) has mean sqrt(2 / pi)"""
        draws = truncated_normal_draws(np.zeros(200000), 1.0, 0.0, np.inf, self.rng)
        se = draws.std() / math.sqrt(draws.size)
        self.assertTrue(np.all(draws > 0))
        self.assertLess(abs(draws.mean() - math.sqrt(2 / math.pi)), 4 * se)

    def test_symmetric_interval_variance(self):
        """Test symmetric interval variance"""
        draws = truncated_normal_draws(np.zeros(200000), 1.0, -0.5, 0.5, self.rng)
        phi = stats.norm.pdf(0.5)
        mass = stats.norm.cdf(0.5) - stats.norm.cdf(-0.5)
        expected_var = 1 - (2 * 0.5 * phi) / mass
        # standard error of the sample variance from the fourth moment
        se = math.sqrt((np.mean(draws ** 4) - draws.var() ** 2) / draws.size)

        self.assertLess(abs(draws.mean()), 4 * draws.std() / math.sqrt(draws.size))
        self.assertLess(abs(draws.var() - expected_var), 3 * se + 1e-4)

    def test_far_right_tail(self):
        """Beyond the tail cutoff the exponential rejection sampler takes over"""
        draws = truncated_normal_draws(np.zeros(20000), 1.0, 8.0, np.inf, self.rng)
        expected = stats.truncnorm.mean(8.0, np.inf)

        self.assertTrue(np.all(draws > 8.0))
        self.assertAlmostEqual(draws.mean(), expected, delta=0.01)

    def test_far_left_tail_is_reflected(self):
        """Test far left tail is reflected"""
        draws = truncated_normal_draws(np.zeros(20000), 1.0, -np.inf, -8.0, self.rng)
        self.assertTrue(np.all(draws < -8.0))
        self.assertAlmostEqual(draws.mean(), -stats.truncnorm.mean(8.0, np.inf), delta=0.01)

    def test_narrow_tail_interval(self):
        """Test narrow tail interval"""
        draws = truncated_normal_draws(np.zeros(1000), 1.0, 10.0, 10.01, self.rng)
        self.assertTrue(np.all((draws > 10.0) & (draws < 10.01)))

    def test_draws_stay_inside_bounds(self):
        """Test draws stay inside bounds"""
        lower = np.array([-np.inf, -1.0, 2.0, 0.3])
        upper = np.array([0.0, 1.0, np.inf, 0.3000001])
        for _ in range(100):
            draws = truncated_normal_draws(np.zeros(4), 1.0, lower, upper, self.rng)
            self.assertTrue(np.all((draws > lower) & (draws < upper)))

    def test_random_configurations_match_truncated_mean(self):
        """Test the sample mean over random (mean, var, bounds) settings within 4 standard errors"""
        settings = np.random.default_rng(5)
        for case in range(20):
            mean = settings.uniform(-3.0, 3.0)
            sd = math.sqrt(settings.uniform(0.2, 4.0))
            a = settings.uniform(-3.0, 2.0)
            b = a + settings.uniform(0.1, 3.0)
            if case % 4 == 1:
                a = -np.inf
            elif case % 4 == 2:
                b = np.inf
            lower, upper = mean + sd * a, mean + sd * b
            with self.subTest(mean=mean, sd=sd, lower=lower, upper=upper):
                draws = truncated_normal_draws(np.full(20000, mean), sd, lower, upper, self.rng)
                expected = stats.truncnorm.mean(a, b, loc=mean, scale=sd)
                se = draws.std() / math.sqrt(draws.size)
                self.assertTrue(np.all((draws > lower) & (draws < upper)))
                self.assertLess(abs(draws.mean() - expected), 4 * se)

    def test_scalar_draw(self):
        """Test scalar draw"""
        value = sample_truncated_normal(0.0, 4.0, 1.0, 2.0, self.rng)
        self.assertIsInstance(value, float)
        self.assertTrue(1.0 < value < 2.0)

    def test_invalid_arguments(self):
        """Test invalid arguments"""
        with self.assertRaises(ValueError):
            sample_truncated_normal(0.0, 0.0, -1.0, 1.0, self.rng)
        with self.assertRaises(NumericalError):
            truncated_normal_draws(0.0, 1.0, 1.0, 1.0, self.rng)


class TestRankBounds(unittest.TestCase):
    """Test rank codes and the order-consistency set"""

    def setUp(self):
        self.data = ObservedData(
            X=np.array([[1.0], [3.0], [2.0], [2.0]]),
            var_types=[VariableType.ORDINAL],
        )
        self.Z = np.array([[-1.0], [1.2], [0.1], [-0.2]])

    def test_level_codes(self):
        """Test level codes"""
        np.testing.assert_array_equal(level_codes(np.array([5.0, 1.0, 5.0, 3.0])), [2, 0, 2, 1])

    def test_lowest_value_bounds(self):
        """Test lowest value bounds"""
        lower, upper = rank_bounds(self.data, self.Z, 0, 0)
        self.assertEqual(lower, -np.inf)
        self.assertEqual(upper, -0.2)

    def test_column_maximum_bounds(self):
        """Test column maximum bounds"""
        lower, upper = rank_bounds(self.data, self.Z, 1, 0)
        self.assertEqual(lower, 0.1)
        self.assertEqual(upper, np.inf)

    def test_ties_do_not_constrain_each_other(self):
        """Test ties do not constrain each other"""
        bounds_a = rank_bounds(self.data, self.Z, 2, 0)
        bounds_b = rank_bounds(self.data, self.Z, 3, 0)
        self.assertEqual(bounds_a, (-1.0, 1.2))
        self.assertEqual(bounds_a, bounds_b)

    def test_membership(self):
        """Test rank-set membership"""
        self.assertTrue(in_rank_set(self.data, self.Z))
        broken = self.Z.copy()
        broken[0, 0] = 0.5
        self.assertFalse(in_rank_set(self.data, broken))
        self.assertFalse(in_rank_set(self.data, self.Z[:3]))

    def test_column_ranks_groups_levels(self):
        """Test column ranks groups levels"""
        ranks = ColumnRanks.from_column(self.data.X[:, 0])
        self.assertEqual(ranks.n_levels, 3)
        np.testing.assert_array_equal(np.sort(ranks.level_rows(1)), [2, 3])
        low, high = ranks.level_extremes(self.Z[:, 0])
        np.testing.assert_array_equal(low, [-1.0, -0.2, 1.2])
        np.testing.assert_array_equal(high, [-1.0, 0.1, 1.2])


class TestInitLatent(unittest.TestCase):
    """Test latent initialization"""

    def test_two_distinct_values(self):
        """Test two distinct values"""
        data = ObservedData(X=[[0.0], [1.0]], var_types=[VariableType.BINARY])
        Z = init_latent(data)
        np.testing.assert_allclose(Z[:, 0], [ndtri(0.25), ndtri(0.75)])

    def test_continuous_column_is_monotone(self):
        """Test continuous column is monotone"""
        x = np.random.default_rng(0).standard_normal(30)
        data = ObservedData(X=x[:, None], var_types=[VariableType.CONTINUOUS])
        Z = init_latent(data)
        order = np.argsort(x)
        self.assertTrue(np.all(np.diff(Z[order, 0]) > 0))

    def test_ties_are_spread_inside_the_rank_set(self):
        """Test ties are spread inside the rank set"""
        data = mixed_data()
        Z = init_latent(data)
        self.assertTrue(in_rank_set(data, Z))
        # tied rows are no longer identical
        binary = Z[data.X[:, 0] == 0, 0]
        self.assertGreater(np.unique(binary).size, 1)


class TestRefreshLatent(unittest.TestCase):
    """Test the truncated normal Gibbs refresh"""

    def setUp(self):
        self.rng = np.random.default_rng(17)
        self.data = mixed_data()
        self.dag = Dag(q=4, edges={(0, 1), (1, 2), (3, 2)})
        L = np.eye(4)
        L[0, 1], L[1, 2], L[3, 2] = -0.5, 0.4, -0.3
        self.params = CholeskyParams(D=np.array([1.0, 0.8, 1.2, 1.0]), L=L)

    def test_blocked_refresh_stays_in_rank_set(self):
        """Test blocked refresh stays in rank set"""
        Z = init_latent(self.data)
        ranks = column_ranks(self.data)
        for _ in range(50):
            Z = refresh_latent(self.data, Z, self.params, self.dag, self.rng, ranks=ranks)
            self.assertTrue(in_rank_set(self.data, Z, ranks))

    def test_serial_refresh_stays_in_rank_set(self):
        """Test serial refresh stays in rank set"""
        Z = init_latent(self.data)
        for _ in range(20):
            Z = refresh_latent(self.data, Z, self.params, self.dag, self.rng, mode="serial")
            self.assertTrue(in_rank_set(self.data, Z))

    def test_continuous_ranks_preserved(self):
        """Test continuous ranks preserved"""
        Z = refresh_latent(self.data, init_latent(self.data), self.params, self.dag, self.rng)
        np.testing.assert_array_equal(np.argsort(Z[:, 3]), np.argsort(self.data.X[:, 3]))

    def test_binary_split(self):
        """Test binary split"""
        x = np.array([0, 1, 1, 0, 1, 0, 0, 1, 1, 1], dtype=float)
        data = ObservedData(X=x[:, None], var_types=[VariableType.BINARY])
        Z = refresh_latent(data, init_latent(data), CholeskyParams.identity(1), Dag.empty(1), self.rng)
        self.assertLess(Z[x == 0, 0].max(), Z[x == 1, 0].min())

    def test_monotone_transform_invariance(self):
        """Only the rank codes matter: a monotone relabelling gives identical draws"""
        transformed = ObservedData(X=np.exp(self.data.X), var_types=self.data.var_types)
        Z0 = init_latent(self.data)
        np.testing.assert_array_equal(Z0, init_latent(transformed))
        a = refresh_latent(self.data, Z0, self.params, self.dag, np.random.default_rng(3))
        b = refresh_latent(transformed, Z0, self.params, self.dag, np.random.default_rng(3))
        np.testing.assert_array_equal(a, b)

    def test_two_level_stationary_distribution(self):
        """With L = I, D = 1, repeated refreshes of a two-level column give standard normal latents"""
        x = np.array([0] * 30 + [1] * 20, dtype=float)
        data = ObservedData(X=x[:, None], var_types=[VariableType.BINARY])
        Z = init_latent(data)
        params = CholeskyParams.identity(1)
        samples = []
        for sweep in range(3000):
            Z = refresh_latent(data, Z, params, Dag.empty(1), self.rng)
            if sweep >= 100 and sweep % 5 == 0:
                samples.append(Z[:, 0].copy())
        pooled = np.concatenate(samples)
        self.assertLess(stats.kstest(pooled, "norm").statistic, 0.03)

    def test_unknown_mode(self):
        """Test unknown mode"""
        with self.assertRaises(ValueError):
            refresh_latent(self.data, init_latent(self.data), self.params, self.dag, self.rng, mode="bogus")


if __name__ == "__main__":
    unittest.main()
