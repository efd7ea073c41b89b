"""Unit tests for data ingestion and replicate files"""
import json
import os
import tempfile
import unittest
from pathlib import Path

import numpy as np

from datasets import ingest, read_types, write_data, write_replicate, write_types
from errors import DataValidationError
from graph import read_constraints, read_graph
from models import ObservedData, ScenarioConfig, VariableType
from simulate import simulate_scenario


class DatasetTestCase(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name, text):
        path = self.dir / name
        path.write_text(text)
        return path


class TestIngest(DatasetTestCase):
    """Test CSV ingestion"""

    def setUp(self):
        super().setUp()
        self.types = self.write("types.csv", "column,type\nsmoker,binary\nvisits,count\n")

    def test_small_file(self):
        """Test small file"""
        data_path = self.write("data.csv", "smoker,visits\n0,3\n1,0\n1,7\n")
        data = ingest(data_path, self.types)
        self.assertEqual(data.X.shape, (3, 2))
        self.assertEqual(data.labels, ["smoker", "visits"])
        self.assertEqual(data.var_types, [VariableType.BINARY, VariableType.COUNT])
        np.testing.assert_array_equal(data.X[:, 1], [3, 0, 7])

    def test_column_subset_and_order(self):
        """Test column subset and order"""
        data_path = self.write("data.csv", "smoker,visits\n0,3\n1,0\n1,7\n")
        data = ingest(data_path, self.types, columns=["visits", "smoker"])
        self.assertEqual(data.labels, ["visits", "smoker"])
        np.testing.assert_array_equal(data.X[:, 1], [0, 1, 1])

    def test_constant_column(self):
        """Test constant column"""
        data_path = self.write("data.csv", "smoker,visits\n1,3\n1,0\n1,7\n")
        with self.assertRaises(DataValidationError) as ctx:
            ingest(data_path, self.types)
        self.assertEqual(ctx.exception.column, "smoker")

    def test_missing_cell_location(self):
        """Test missing cell location"""
        data_path = self.write("data.csv", "smoker,visits\n0,3\n1,NA\n1,7\n")
        with self.assertRaises(DataValidationError) as ctx:
            ingest(data_path, self.types)
        self.assertEqual((ctx.exception.row, ctx.exception.column), (2, "visits"))
        self.assertIn("row 2", str(ctx.exception))

    def test_non_numeric_and_negative_count(self):
        """Test non numeric and negative count"""
        for bad, row in (("0,abc\n1,0\n", 1), ("0,1\n1,-2\n", 2), ("0,1\n1,2.5\n", 2)):
            with self.subTest(bad=bad):
                data_path = self.write("data.csv", "smoker,visits\n" + bad)
                with self.assertRaises(DataValidationError) as ctx:
                    ingest(data_path, self.types)
                self.assertEqual(ctx.exception.row, row)

    def test_binary_with_three_levels(self):
        """Test binary with three levels"""
        data_path = self.write("data.csv", "smoker,visits\n0,3\n1,0\n2,7\n")
        with self.assertRaises(DataValidationError):
            ingest(data_path, self.types)

    def test_undeclared_column(self):
        """Test undeclared column"""
        types = self.write("types2.csv", "column,type\nsmoker,binary\n")
        data_path = self.write("data.csv", "smoker,visits\n0,3\n1,0\n")
        with self.assertRaises(DataValidationError) as ctx:
            ingest(data_path, types)
        self.assertEqual(ctx.exception.column, "visits")

    def test_missing_files(self):
        """Test missing files"""
        with self.assertRaises(DataValidationError):
            ingest(self.dir / "none.csv", self.types)
        data_path = self.write("data.csv", "smoker,visits\n0,3\n1,0\n")
        with self.assertRaises(DataValidationError):
            ingest(data_path, self.dir / "none_types.csv")


class TestTypesFile(DatasetTestCase):
    """Test the types file"""

    def test_header_required(self):
        """Test header required"""
        path = self.write("types.csv", "name,kind\na,binary\n")
        with self.assertRaises(DataValidationError):
            read_types(path)

    def test_unknown_type(self):
        """Test unknown type"""
        path = self.write("types.csv", "column,type\na,binary\nb,nominal\n")
        with self.assertRaises(DataValidationError) as ctx:
            read_types(path)
        self.assertEqual((ctx.exception.row, ctx.exception.column), (2, "b"))

    def test_case_insensitive(self):
        """Test case insensitive"""
        path = self.write("types.csv", "column,type\na, Ordinal\n")
        self.assertEqual(read_types(path), {"a": VariableType.ORDINAL})


class TestWriters(DatasetTestCase):
    """Test data and replicate writers"""

    def test_data_and_types_read_back(self):
        """Test data and types read back"""
        data = ObservedData(
            X=[[0, 2.5], [1, -1.0], [1, 0.25]],
            var_types=[VariableType.BINARY, VariableType.CONTINUOUS],
            labels=["b", "c"],
        )
        data_path = write_data(data, self.dir / "data.csv")
        types_path = write_types(data, self.dir / "types.csv")
        self.assertEqual(data_path.read_text().splitlines()[1], "0,2.5")

        loaded = ingest(data_path, types_path)
        np.testing.assert_array_equal(loaded.X, data.X)
        self.assertEqual(loaded.var_types, data.var_types)

    def test_write_replicate(self):
        """Test write replicate"""
        scenario = simulate_scenario(ScenarioConfig(q=4, n=80, edge_prob=0.4, var_class="count", replicate_seed=2))
        paths = write_replicate(scenario, self.dir / "replicate_000")
        self.assertEqual(
            sorted(p.name for p in paths.values()),
            ["constraints.txt", "data.csv", "metadata.json", "true_dag.txt", "types.csv"],
        )
        for path in paths.values():
            self.assertTrue(os.path.exists(path))

        loaded = ingest(paths["data"], paths["types"])
        np.testing.assert_array_equal(loaded.X, scenario.data.X)
        self.assertEqual(read_graph(paths["true_dag"], loaded.labels).edges, scenario.dag.edges)
        self.assertEqual(read_constraints(paths["constraints"], 4, loaded.labels), scenario.constraints)

        with open(paths["metadata"]) as f:
            metadata = json.load(f)
        self.assertEqual(metadata["scenario"]["replicate_seed"], 2)
        self.assertEqual(len(metadata["marginals"]), 4)
        self.assertEqual([tuple(e) for e in metadata["true_edges"]], sorted(scenario.dag.edges))


if __name__ == "__main__":
    unittest.main()
