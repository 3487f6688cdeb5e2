# pylint: disable="missing-class-docstring", "missing-function-docstring"
import unittest
from typing import Any

from Phodcos.property_reader import Case, PropertyReader, _matches


def reader(**options: Any) -> PropertyReader:
    instance = PropertyReader.__new__(PropertyReader)
    for name, value in options.items():
        setattr(instance, name, value)
    return instance


class TestCaseHelper(unittest.TestCase):
    def test_case_not_equal_to_tuple(self) -> None:
        self.assertFalse(Case("fiber", "helix") == ("fiber", "helix"))

    def test_case_ignores_capitalization(self) -> None:
        self.assertEqual(Case("Fiber", "HELIX"), Case("fiber", "helix"))

    def test_wildcards(self) -> None:
        self.assertTrue(_matches("ph-condition", ["p*"]))
        self.assertTrue(_matches("fiber", ["fiber"]))
        self.assertFalse(_matches("fiber", ["fib", "planarity"]))


class TestPropertyReader(unittest.TestCase):
    def test_cross_product_of_properties_and_curves(self) -> None:
        source = reader(properties=["fiber", "planarity"], curves=["line", "helix"])
        cases = source.get_data_from_source()
        self.assertEqual(len(cases), 4)
        self.assertEqual(cases[0].arguments, {"${property}": "fiber", "${curve}": "line"})
        self.assertEqual(cases[0].tags, ["Property: fiber", "Curve: line"])

    def test_filters(self) -> None:
        cases = reader(
            properties=["fiber", "planarity", "ph-condition", "continuity"],
            curves=["helix", "line"],
            included_properties=["p*", "fiber"],
            ignored_properties=["planarity"],
            ignored_testcases=[("fiber", "helix")],
        ).get_data_from_source()
        pairs = [(case.arguments["${property}"], case.arguments["${curve}"]) for case in cases]
        self.assertEqual(pairs, [("fiber", "line"), ("ph-condition", "helix"), ("ph-condition", "line")])


if __name__ == "__main__":
    unittest.main()
