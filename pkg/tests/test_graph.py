"""Unit tests for graph operations, CPDAGs, SHD and edge-list files"""
import itertools
import os
import tempfile
import unittest

import numpy as np

from errors import ConstraintViolationError, GraphFormatError
from graph import (
    ancestors,
    apply_move,
    children,
    cpdag_extension,
    descendants,
    direct_successors,
    enumerate_dags,
    enumerate_moves,
    format_constraints,
    format_graph,
    is_acyclic,
    parents,
    parse_constraints,
    parse_graph,
    random_constrained_dag,
    reachability,
    read_constraints,
    read_graph,
    reverse_move,
    shd,
    skeleton,
    to_cpdag,
    topological_order,
    vstructures,
    write_constraints,
    write_graph,
)
from models import Cpdag, Dag, EdgeConstraints, MoveType

U, V, Z = 0, 1, 2


def all_dags_brute_force(q):
    """Every acyclic subset of the ordered pairs, for cross-checking enumeration"""
    pairs = [(a, b) for a in range(q) for b in range(q) if a != b]
    dags = set()
    for mask in itertools.product([0, 1], repeat=len(pairs)):
        edges = {pair for pair, keep in zip(pairs, mask) if keep}
        if any((b, a) in edges for a, b in edges):
            continue
        if is_acyclic(q, edges):
            dags.add(Dag(q=q, edges=frozenset(edges)).canonical_key)
    return dags


class TestQueries(unittest.TestCase):
    """Test parent / child / ancestor queries"""

    def test_parents_of_chain(self):
        """Test parents of chain"""
        dag = Dag(q=3, edges={(U, V), (V, Z)})
        self.assertEqual(parents(dag, V), {U})
        self.assertEqual(children(dag, V), {Z})

    def test_parents_of_collider(self):
        """Test parents of collider"""
        dag = Dag(q=3, edges={(U, V), (Z, V)})
        self.assertEqual(parents(dag, V), {U, Z})

    def test_empty_dag_has_no_parents(self):
        """Test empty DAG has no parents"""
        dag = Dag.empty(4)
        for v in range(4):
            self.assertEqual(parents(dag, v), set())

    def test_node_out_of_range(self):
        """Test node out of range"""
        with self.assertRaises(IndexError):
            parents(Dag.empty(2), 2)

    def test_ancestors_and_descendants(self):
        """Test ancestors and descendants"""
        dag = Dag(q=4, edges={(0, 1), (1, 2), (3, 2)})
        self.assertEqual(ancestors(dag, 2), {0, 1, 3})
        self.assertEqual(descendants(dag, 0), {1, 2})
        self.assertEqual(descendants(dag, 2), set())

    def test_skeleton_is_symmetric(self):
        """Test skeleton is symmetric"""
        S = skeleton(Dag(q=3, edges={(0, 2)}))
        np.testing.assert_array_equal(S, S.T)
        self.assertEqual(S[2, 0], 1)
        self.assertEqual(S.sum(), 2)

    def test_is_acyclic(self):
        """Test is acyclic"""
        self.assertTrue(is_acyclic(3, {(0, 1), (1, 2)}))
        self.assertFalse(is_acyclic(3, {(0, 1), (1, 2), (2, 0)}))
        self.assertTrue(is_acyclic(5, set()))

    def test_topological_order(self):
        """Test topological order"""
        order = topological_order(Dag(q=3, edges={(2, 1), (1, 0)}))
        self.assertEqual(order, [2, 1, 0])

    def test_reachability(self):
        """Test reachability"""
        adjacency = Dag(q=3, edges={(0, 1), (1, 2)}).adjacency
        closure = reachability(adjacency)
        self.assertTrue(closure[0, 2])
        self.assertFalse(closure[2, 0])
        self.assertFalse(closure[0, 0])


class TestMoves(unittest.TestCase):
    """Test successor enumeration"""

    def test_two_nodes_empty(self):
        """Test two nodes empty"""
        successors = direct_successors(Dag.empty(2))
        self.assertEqual(len(successors), 2)
        self.assertTrue(all(move.move_type == MoveType.INSERT for move, _ in successors))
        self.assertEqual({d.canonical_key for _, d in successors}, {"0>1", "1>0"})

    def test_two_nodes_one_edge(self):
        """Test two nodes one edge"""
        successors = direct_successors(Dag(q=2, edges={(0, 1)}))
        self.assertEqual(sorted(move.move_type.value for move, _ in successors), ["delete", "reverse"])

    def test_response_constraint_successors(self):
        """Forbidding every out-edge of node 0 leaves four inserts"""
        constraints = EdgeConstraints.regression(3, [0])
        successors = direct_successors(Dag.empty(3), constraints)
        self.assertEqual(
            {d.canonical_key for _, d in successors},
            {"1>0", "2>0", "1>2", "2>1"},
        )

    def test_reverse_blocked_by_other_path(self):
        """Test reverse blocked by other path"""
        dag = Dag(q=3, edges={(0, 1), (1, 2), (0, 2)})
        moves = enumerate_moves(dag)
        reversals = {(m.u, m.v) for m in moves if m.move_type == MoveType.REVERSE}
        self.assertNotIn((0, 2), reversals)
        self.assertIn((0, 1), reversals)

    def test_insert_blocked_by_cycle(self):
        """Test insert blocked by cycle"""
        dag = Dag(q=3, edges={(0, 1), (1, 2)})
        inserts = {(m.u, m.v) for m in enumerate_moves(dag) if m.move_type == MoveType.INSERT}
        self.assertEqual(inserts, {(0, 2)})

    def test_forbidden_edge_in_dag(self):
        """Test forbidden edge in DAG"""
        with self.assertRaises(ConstraintViolationError):
            enumerate_moves(Dag(q=2, edges={(0, 1)}), EdgeConstraints.regression(2, [0]))

    def test_successors_exhaustive_small(self):
        """Every successor is one change away, constraint-satisfying, and reversible"""
        constraints = EdgeConstraints.block(4, [0, 1], [2, 3])
        for dag in enumerate_dags(4, constraints):
            for move, successor in direct_successors(dag, constraints):
                self.assertTrue(constraints.is_satisfied_by(successor))
                self.assertEqual(len(dag.edges ^ successor.edges), 1 if move.move_type != MoveType.REVERSE else 2)
                self.assertEqual(apply_move(successor, reverse_move(move)), dag)
                back = {d.canonical_key for _, d in direct_successors(successor, constraints)}
                self.assertIn(dag.canonical_key, back)

    def test_apply_move_rejects_invalid(self):
        """Test apply move rejects invalid"""
        from models import Move

        with self.assertRaises(ValueError):
            apply_move(Dag.empty(2), Move(move_type=MoveType.DELETE, u=0, v=1))


class TestEnumeration(unittest.TestCase):
    """Test DAG-space enumeration"""

    def test_three_nodes_has_25_dags(self):
        """Test three nodes has 25 DAGs"""
        dags = enumerate_dags(3)
        self.assertEqual(len(dags), 25)
        self.assertEqual({d.canonical_key for d in dags}, all_dags_brute_force(3))

    def test_four_nodes_has_543_dags(self):
        """Test four nodes has 543 DAGs"""
        self.assertEqual(len(enumerate_dags(4)), 543)

    def test_constrained_enumeration(self):
        """Test constrained enumeration"""
        constraints = EdgeConstraints.regression(3, [0])
        dags = enumerate_dags(3, constraints)
        self.assertTrue(all(constraints.is_satisfied_by(d) for d in dags))
        self.assertLess(len(dags), 25)

    def test_random_constrained_dag(self):
        """Test random constrained DAG"""
        rng = np.random.default_rng(7)
        constraints = EdgeConstraints.regression(5, [0, 1])
        for _ in range(50):
            dag = random_constrained_dag(5, constraints, 0.5, rng)
            self.assertTrue(constraints.is_satisfied_by(dag))

    def test_random_dag_follows_order(self):
        """Test random DAG follows order"""
        rng = np.random.default_rng(1)
        dag = random_constrained_dag(4, None, 0.9, rng, order=[3, 2, 1, 0])
        self.assertTrue(all(u > v for u, v in dag.edges))

    def test_zero_edge_prob_is_empty(self):
        """Test zero edge prob is empty"""
        dag = random_constrained_dag(6, None, 0.0, np.random.default_rng(0))
        self.assertEqual(dag.n_edges, 0)


class TestCpdag(unittest.TestCase):
    """Test CPDAG projection and extension"""

    def test_chain_is_fully_undirected(self):
        """Test chain is fully undirected"""
        cpdag = to_cpdag(Dag(q=3, edges={(U, V), (V, Z)}))
        self.assertEqual(cpdag.directed, frozenset())
        self.assertEqual(cpdag.undirected, frozenset({(0, 1), (1, 2)}))

    def test_collider_stays_directed(self):
        """Test collider stays directed"""
        dag = Dag(q=3, edges={(U, V), (Z, V)})
        cpdag = to_cpdag(dag)
        self.assertEqual(cpdag.directed, frozenset({(U, V), (Z, V)}))
        self.assertEqual(vstructures(dag), {(U, V, Z)})

    def test_empty_graph(self):
        """Test empty graph"""
        self.assertEqual(to_cpdag(Dag.empty(1)), Cpdag(q=1))

    def test_meek_rule_one(self):
        """a -> b <- c, b - d: d hangs off a collider and is compelled"""
        dag = Dag(q=4, edges={(0, 1), (2, 1), (1, 3)})
        cpdag = to_cpdag(dag)
        self.assertIn((1, 3), cpdag.directed)
        self.assertEqual(cpdag.undirected, frozenset())

    def test_equivalent_dags_share_cpdag(self):
        """Test equivalent DAGs share CPDAG"""
        chain = Dag(q=3, edges={(U, V), (V, Z)})
        reversed_chain = Dag(q=3, edges={(Z, V), (V, U)})
        self.assertEqual(to_cpdag(chain), to_cpdag(reversed_chain))

    def test_extension_round_trip(self):
        """Every 4-node DAG's CPDAG extends to a DAG in the same class"""
        for dag in enumerate_dags(4):
            cpdag = to_cpdag(dag)
            extension = cpdag_extension(cpdag)
            self.assertEqual(to_cpdag(extension), cpdag)


class TestShd(unittest.TestCase):
    """Test structural Hamming distance"""

    def test_identical(self):
        """Test identical graphs have zero SHD"""
        dag = Dag(q=3, edges={(0, 1)})
        self.assertEqual(shd(dag, dag), 0)

    def test_flip(self):
        """Test a reversed edge counts as one SHD step"""
        self.assertEqual(shd(Dag(q=2, edges={(0, 1)}), Dag(q=2, edges={(1, 0)})), 1)

    def test_deletion(self):
        """Test a missing edge counts as one SHD step"""
        self.assertEqual(shd(Dag(q=3, edges={(0, 1), (1, 2)}), Dag(q=3, edges={(0, 1)})), 1)

    def test_dag_against_cpdag(self):
        """Test DAG against CPDAG"""
        chain = Dag(q=3, edges={(0, 1), (1, 2)})
        self.assertEqual(shd(chain, to_cpdag(chain)), 0)

    def test_mismatched_q(self):
        """Test mismatched q"""
        with self.assertRaises(ValueError):
            shd(Dag.empty(2), Dag.empty(3))

    def test_symmetric(self):
        """Test SHD is symmetric"""
        rng = np.random.default_rng(3)
        for _ in range(20):
            a = random_constrained_dag(5, None, 0.4, rng)
            b = random_constrained_dag(5, None, 0.4, rng)
            self.assertEqual(shd(a, b), shd(b, a))


class TestGraphFiles(unittest.TestCase):
    """Test edge-list and constraints file formats"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.labels = ["age", "income", "score"]

    def tearDown(self):
        self.tmp.cleanup()

    def test_graph_file_round_trip_with_labels(self):
        """Test graph file round trip with labels"""
        dag = Dag(q=3, edges={(0, 1), (2, 1)})
        path = os.path.join(self.tmp.name, "dag.txt")
        write_graph(dag, path, self.labels)

        with open(path) as f:
            self.assertEqual(f.read(), "q=3\nage income\nscore income\n")
        self.assertEqual(read_graph(path, self.labels), dag)

    def test_cpdag_text(self):
        """Test CPDAG text"""
        cpdag = to_cpdag(Dag(q=3, edges={(0, 1), (1, 2)}))
        text = format_graph(cpdag)
        self.assertIn("0 -- 1", text)
        self.assertEqual(parse_graph(text), cpdag)

    def test_comments_and_indices(self):
        """Test comments and indices"""
        dag = parse_graph("# true graph\nq=3\n0 2  # edge\n")
        self.assertEqual(dag.edges, frozenset({(0, 2)}))

    def test_missing_header(self):
        """Test missing header"""
        with self.assertRaises(GraphFormatError) as ctx:
            parse_graph("0 1\n")
        self.assertEqual(ctx.exception.line, 1)

    def test_unknown_label(self):
        """Test unknown label"""
        with self.assertRaises(GraphFormatError) as ctx:
            parse_graph("q=3\nage height\n", self.labels)
        self.assertEqual(ctx.exception.line, 2)

    def test_cyclic_file(self):
        """Test cyclic file"""
        with self.assertRaises(GraphFormatError):
            parse_graph("q=2\n0 1\n1 0\n")

    def test_constraint_directives(self):
        """Test constraint directives"""
        text = "response score\nexogenous age\nincome age\n"
        constraints = parse_constraints(text, 3, self.labels)

        self.assertFalse(constraints.allows(2, 0))
        self.assertFalse(constraints.allows(1, 0))
        self.assertTrue(constraints.allows(0, 1))
        self.assertEqual(len(constraints.forbidden), 3)

    def test_block_directive(self):
        """Test block directive"""
        constraints = parse_constraints("block A:0,1 B:2\n", 3)
        self.assertEqual(constraints.forbidden, frozenset({(2, 0), (2, 1)}))

    def test_constraint_header_mismatch(self):
        """Test constraint header mismatch"""
        with self.assertRaises(GraphFormatError):
            parse_constraints("q=4\n", 3)

    def test_malformed_block(self):
        """Test malformed block"""
        with self.assertRaises(GraphFormatError):
            parse_constraints("block 0,1 2\n", 3)

    def test_constraints_file_round_trip(self):
        """Test constraints file round trip"""
        constraints = EdgeConstraints.regression(3, [2])
        path = os.path.join(self.tmp.name, "constraints.txt")
        write_constraints(constraints, path, self.labels)
        self.assertEqual(read_constraints(path, 3, self.labels), constraints)
        self.assertTrue(format_constraints(constraints).startswith("q=3\n"))


if __name__ == "__main__":
    unittest.main()
