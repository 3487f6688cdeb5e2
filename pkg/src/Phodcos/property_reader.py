"""Module holding the PropertyReader reader_class implementation."""

from typing import Any, Iterable, List

from DataDriver.AbstractReaderClass import AbstractReaderClass
from DataDriver.ReaderConfig import TestCaseData


# pylint: disable=too-few-public-methods
class Case:
    """
    Helper class to support ignoring (property, curve) combinations when generating
    the test cases.
    """

    def __init__(self, property_name: str, curve: str):
        self.property_name = property_name.lower()
        self.curve = curve.lower()

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, type(self)):
            return False
        return self.property_name == other.property_name and self.curve == other.curve


def _matches(name: str, patterns: Iterable[str]) -> bool:
    for pattern in patterns:
        if name == pattern:
            return True
        if pattern.endswith("*"):
            prefix, _, _ = pattern.partition("*")
            if name.startswith(prefix):
                return True
    return False


class PropertyReader(AbstractReaderClass):
    """Implementation of the reader_class used by DataDriver."""

    def get_data_from_source(self) -> List[TestCaseData]:
        test_data: List[TestCaseData] = []

        properties = self._filter_properties(list(getattr(self, "properties")))
        curves = list(getattr(self, "curves"))
        ignored_cases = [Case(*case) for case in getattr(self, "ignored_testcases", [])]

        for property_name in properties:
            for curve in curves:
                if Case(property_name, curve) in ignored_cases:
                    continue
                test_data.append(
                    TestCaseData(
                        arguments={"${property}": property_name, "${curve}": curve},
                        tags=_get_tag_list(property_name=property_name, curve=curve),
                    )
                )
        return test_data

    def _filter_properties(self, properties: List[str]) -> List[str]:
        if included := getattr(self, "included_properties", ()):
            properties = [name for name in properties if _matches(name, included)]
        if ignored := getattr(self, "ignored_properties", ()):
            properties = [name for name in properties if not _matches(name, ignored)]
        return properties


def _get_tag_list(property_name: str, curve: str) -> List[str]:
    return [f"Property: {property_name}", f"Curve: {curve}"]
