"""Unit tests for simulation scenarios and marginal transforms"""
import unittest

import numpy as np
from scipy.special import ndtr

from gaussian_dag import sigma_from_params
from models import CoefRegime, Dag, DagClass, ScenarioConfig, VarClass, VariableType
from simulate import (
    block_partition,
    column_families,
    generate_latent,
    marginal_quantile,
    mixed_split,
    random_dag,
    random_sem_params,
    replicate_seeds,
    simulate_scenario,
    transform_marginals,
)


class TestMarginals(unittest.TestCase):
    """Test variable classes and quantile transforms"""

    def test_mixed_split(self):
        """Test mixed split"""
        self.assertEqual(mixed_split(20), (7, 8, 5))
        self.assertEqual(mixed_split(10), (4, 4, 2))
        self.assertEqual(mixed_split(3), (1, 1, 1))
        with self.assertRaises(ValueError):
            mixed_split(2)

    def test_column_families(self):
        """Test column families"""
        self.assertEqual(column_families(3, VarClass.COUNT), [VariableType.COUNT] * 3)
        families = column_families(10, VarClass.MIXED)
        self.assertEqual(families.count(VariableType.BINARY), 4)
        self.assertEqual(families.count(VariableType.COUNT), 2)

    def test_bernoulli_half_splits_at_zero(self):
        """Test Bernoulli half splits at zero"""
        z = np.linspace(-3, 3, 61)
        z = z[z != 0]
        x = marginal_quantile(ndtr(z), {"family": "bernoulli", "eta": 0.5})
        np.testing.assert_array_equal(x, (z > 0).astype(float))

    def test_quantile_is_monotone(self):
        """Test quantile is monotone"""
        u = np.linspace(0.001, 0.999, 200)
        for marginal in (
            {"family": "binomial", "trials": 5, "theta": 0.3},
            {"family": "poisson", "lambda": 4.0},
        ):
            x = marginal_quantile(u, marginal)
            self.assertTrue(np.all(np.diff(x) >= 0))
            self.assertTrue(np.all(x >= 0))

    def test_quantile_handles_one(self):
        """Test quantile handles one"""
        x = marginal_quantile(np.array([1.0]), {"family": "poisson", "lambda": 2.0})
        self.assertTrue(np.isfinite(x[0]))

    def test_unknown_family(self):
        """Test unknown family"""
        with self.assertRaises(ValueError):
            marginal_quantile(np.array([0.5]), {"family": "gamma"})

    def test_transform_preserves_latent_order(self):
        """Test transform preserves latent order"""
        rng = np.random.default_rng(0)
        Z = rng.standard_normal((300, 3))
        data = transform_marginals(Z, VarClass.ORDINAL, rng)
        self.assertEqual(len(data.marginal_params), 3)
        for j in range(3):
            order = np.argsort(Z[:, j])
            self.assertTrue(np.all(np.diff(data.X[order, j]) >= 0))


class TestScenarioDags(unittest.TestCase):
    """Test random DAGs of each class"""

    def test_regression_class_respects_responses(self):
        """Test regression class respects responses"""
        config = ScenarioConfig(q=8, dag_class=DagClass.REGRESSION, edge_prob=0.6, responses=[0, 1])
        for seed in range(10):
            dag = random_dag(config, np.random.default_rng(seed))
            self.assertFalse(any(u in (0, 1) for u, _ in dag.edges))

    def test_block_class_has_no_b_to_a_edges(self):
        """Test block class has no B to A edges"""
        block_a, block_b = block_partition(7)
        self.assertEqual(block_a, [0, 1, 2, 3])
        config = ScenarioConfig(q=7, dag_class=DagClass.BLOCK, edge_prob=0.6)
        for seed in range(10):
            dag = random_dag(config, np.random.default_rng(seed))
            self.assertFalse(any(u in block_b and v in block_a for u, v in dag.edges))

    def test_bad_response_index(self):
        """Test bad response index"""
        config = ScenarioConfig(q=4, dag_class=DagClass.REGRESSION, responses=[5])
        with self.assertRaises(ValueError):
            random_dag(config, np.random.default_rng(0))

    def test_edge_density(self):
        """Test edge density"""
        config = ScenarioConfig(q=20, edge_prob=0.1)
        counts = [random_dag(config, np.random.default_rng(s)).n_edges for s in range(50)]
        # 190 pairs at probability 0.1
        self.assertAlmostEqual(np.mean(counts), 19.0, delta=2.5)


class TestSemParameters(unittest.TestCase):
    """Test SEM coefficients and latent data"""

    def setUp(self):
        self.dag = Dag(q=4, edges={(0, 1), (0, 2), (1, 3), (2, 3)})

    def test_unbalanced_coefficients_positive(self):
        """Test unbalanced coefficients positive"""
        params = random_sem_params(self.dag, CoefRegime.UNBALANCED, np.random.default_rng(0))
        for u, v in self.dag.edges:
            self.assertTrue(0.1 <= params.L[u, v] <= 1.0)
        np.testing.assert_array_equal(params.D, np.ones(4))

    def test_balanced_coefficients_have_both_signs(self):
        """Test balanced coefficients have both signs"""
        dag = Dag(q=10, edges={(u, v) for u in range(10) for v in range(u + 1, 10)})
        params = random_sem_params(dag, CoefRegime.BALANCED, np.random.default_rng(1))
        values = np.array([params.L[u, v] for u, v in dag.edges])
        self.assertTrue(np.all((np.abs(values) >= 0.1) & (np.abs(values) <= 1.0)))
        self.assertTrue(np.any(values < 0) and np.any(values > 0))

    def test_non_edges_are_zero(self):
        """Test non edges are zero"""
        params = random_sem_params(self.dag, CoefRegime.BALANCED, np.random.default_rng(2))
        self.assertEqual(params.L[1, 2], 0.0)
        self.assertEqual(params.L[3, 0], 0.0)

    def test_empty_dag_gives_identity(self):
        """Test empty DAG gives identity"""
        params = random_sem_params(Dag.empty(3), CoefRegime.BALANCED, np.random.default_rng(0))
        np.testing.assert_array_equal(sigma_from_params(params), np.eye(3))

    def test_latent_covariance(self):
        """Test latent covariance"""
        params = random_sem_params(self.dag, CoefRegime.UNBALANCED, np.random.default_rng(3))
        Z = generate_latent(self.dag, params, 100000, np.random.default_rng(4))
        np.testing.assert_allclose(np.cov(Z, rowvar=False), sigma_from_params(params), rtol=0.05, atol=0.02)


class TestSimulateScenario(unittest.TestCase):
    """Test whole replicates"""

    def test_replicate_contents(self):
        """Test replicate contents"""
        config = ScenarioConfig(q=6, n=200, var_class=VarClass.MIXED, edge_prob=0.3, replicate_seed=7)
        scenario = simulate_scenario(config)
        self.assertEqual(scenario.data.X.shape, (200, 6))
        self.assertEqual(scenario.Z.shape, (200, 6))
        self.assertTrue(scenario.constraints.is_satisfied_by(scenario.dag))
        self.assertEqual(len(scenario.data.marginal_params), 6)

    def test_same_seed_same_replicate(self):
        """Test same seed same replicate"""
        config = ScenarioConfig(q=5, n=150, edge_prob=0.3, replicate_seed=11)
        a, b = simulate_scenario(config), simulate_scenario(config)
        self.assertEqual(a.dag, b.dag)
        np.testing.assert_array_equal(a.data.X, b.data.X)

    def test_dag_does_not_depend_on_n(self):
        """Test DAG does not depend on n"""
        small = simulate_scenario(ScenarioConfig(q=6, n=100, edge_prob=0.3, replicate_seed=3))
        large = simulate_scenario(ScenarioConfig(q=6, n=400, edge_prob=0.3, replicate_seed=3))
        self.assertEqual(small.dag, large.dag)

    def test_replicate_seeds(self):
        """Test replicate seeds"""
        seeds = replicate_seeds(2024, 5)
        self.assertEqual(len(set(seeds)), 5)
        self.assertEqual(seeds, replicate_seeds(2024, 5))
        self.assertEqual(seeds[:3], replicate_seeds(2024, 3))


if __name__ == "__main__":
    unittest.main()
