# pylint: disable="missing-class-docstring", "missing-function-docstring"
import io
import json
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from unittest.mock import patch

import numpy as np
import pandas as pd

from Phodcos.cli import (
    EVAL_COLUMNS,
    EXIT_CONVERGENCE,
    EXIT_INPUT,
    EXIT_OK,
    EXIT_PROPERTY,
    convergence_table,
    main,
)
from Phodcos.pipeline import ConvergenceRow
from Phodcos.properties import PropertyResult


class TestCli(unittest.TestCase):
    def setUp(self) -> None:
        self.directory = tempfile.TemporaryDirectory()  # pylint: disable=consider-using-with
        self.root = Path(self.directory.name)

    def tearDown(self) -> None:
        self.directory.cleanup()

    def run_main(self, *argv: str) -> int:
        with redirect_stdout(io.StringIO()), redirect_stderr(io.StringIO()):
            return main(list(argv))

    def test_fit_then_eval(self) -> None:
        document = self.root / "exemplary.json"
        samples = self.root / "samples.csv"
        code = self.run_main(
            "fit", "--epsilon", "1e-4", "--samples-per-segment", "200", "--output", str(document)
        )
        self.assertEqual(code, EXIT_OK)
        content = json.loads(document.read_text(encoding="utf-8"))
        self.assertEqual(content["metadata"]["source"], "exemplary")
        self.assertLess(content["metadata"]["max_error"], 1e-4)

        code = self.run_main("eval", str(document), "--samples", "11", "--output", str(samples))
        self.assertEqual(code, EXIT_OK)
        table = pd.read_csv(samples)
        self.assertEqual(list(table.columns), EVAL_COLUMNS)
        self.assertEqual(len(table), 11)
        np.testing.assert_allclose(table["xi"], np.linspace(0.0, 1.0, 11))
        np.testing.assert_allclose(table[["px", "py", "pz"]].iloc[0], [0.0, 1.0, np.e], atol=1e-12)
        self.assertAlmostEqual(table["L"].iloc[0], 0.0, places=14)

    def test_convergence_table_file(self) -> None:
        output = self.root / "convergence.csv"
        code = self.run_main(
            "convergence",
            "--min-exp",
            "1",
            "--max-exp",
            "3",
            "--samples-per-segment",
            "100",
            "--output",
            str(output),
        )
        self.assertEqual(code, EXIT_OK)
        table = pd.read_csv(output, dtype=str)
        self.assertEqual(table["n_segments"].tolist(), ["2", "4", "8"])
        self.assertEqual(table["ratio"].iloc[0], "-")
        self.assertGreater(float(table["ratio"].iloc[2]), 1.0)

    def test_verify_line(self) -> None:
        self.assertEqual(self.run_main("verify", "--curve", "line", "--segments", "2"), EXIT_OK)

    def test_fit_from_csv_samples(self) -> None:
        source = self.root / "ellipse.csv"
        t = np.linspace(0.0, 1.0, 200)
        rows = [
            f"{float(x)!r},{float(y)!r},{float(z)!r}"
            for x, y, z in zip(3 * np.cos(2 * np.pi * t), np.sin(2 * np.pi * t), t)
        ]
        source.write_text("x,y,z\n" + "\n".join(rows), encoding="utf-8")
        code = self.run_main("fit", "--csv", str(source), "--epsilon", "1e-5", "--samples-per-segment", "100")
        self.assertEqual(code, EXIT_OK)

    def test_input_errors(self) -> None:
        self.assertEqual(self.run_main("fit", "--csv", str(self.root / "missing.csv")), EXIT_INPUT)
        empty = self.root / "empty.csv"
        empty.write_text("", encoding="utf-8")
        self.assertEqual(self.run_main("verify", "--csv", str(empty)), EXIT_INPUT)
        document = self.root / "old.json"
        document.write_text(json.dumps({"schema_version": "0"}), encoding="utf-8")
        self.assertEqual(self.run_main("eval", str(document)), EXIT_INPUT)
        self.assertEqual(self.run_main("convergence", "--min-exp", "3", "--max-exp", "1"), EXIT_INPUT)
        self.assertEqual(self.run_main("convergence", "--max-exp", "9"), EXIT_INPUT)

    def test_failed_property_sets_the_exit_code(self) -> None:
        results = [
            PropertyResult("ph", True, 1e-15, 1e-12),
            PropertyResult("fiber", False, 1.0, 1e-12),
        ]
        with patch("Phodcos.cli.run_all", return_value=results) as run_all:
            code = self.run_main("verify", "--curve", "line", "--segments", "2")
        self.assertEqual(code, EXIT_PROPERTY)
        run_all.assert_called_once()

    def test_unreachable_tolerance(self) -> None:
        code = self.run_main(
            "fit", "--epsilon", "1e-14", "--max-segments", "4", "--samples-per-segment", "50"
        )
        self.assertEqual(code, EXIT_CONVERGENCE)

    def test_unknown_curve_is_a_usage_error(self) -> None:
        with self.assertRaises(SystemExit) as context:
            self.run_main("verify", "--curve", "spiral")
        self.assertEqual(context.exception.code, 2)


class TestConvergenceTable(unittest.TestCase):
    def test_ratios_below_the_floor_are_skipped(self) -> None:
        rows = [
            ConvergenceRow(2, 1e-3, None),
            ConvergenceRow(4, 1e-5, 100.0),
            ConvergenceRow(8, 1e-15, 1e10),
            ConvergenceRow(16, 1e-16, 10.0),
        ]
        table = convergence_table(rows)
        self.assertEqual(table["ratio"].tolist(), ["-", "100", "10000000000", "-"])
        self.assertEqual(table["n_segments"].tolist(), [2, 4, 8, 16])


if __name__ == "__main__":
    unittest.main()
