"""
# Phodcos

Phodcos turns a smooth space curve into a chain of degree-17 Pythagorean-hodograph
(PH) segments. Each segment interpolates the position and the first four
derivatives of the curve at both of its ends, so the resulting path is C4 and
every quantity of its moving coordinate system is available in closed form:

- the Euler-Rodrigues frame (an adapted frame whose first axis is the unit tangent)
  and its angular velocity,
- the parametric speed, arc length, curvature and torsion.

The roll offset between the frames of consecutive segments is removed, so frame
and angular velocity are continuous along the whole path. The number of uniform
segments grows until the distance between curve and path at equal parameter values
is below a tolerance; the error decreases with the sixth power of the segment width.

The package can be used from Python, from the `phodcos` command line tool and as a
Robot Framework® library built on the DataDriver library.

---

## Installation

If you already have Python >= 3.9 with pip installed, you can simply run:

`pip install --upgrade phodcos`

---

## Python usage

``` python
from Phodcos import PipelineConfig, builtin_curve, phodcos

path, rows = phodcos(builtin_curve("exemplary"), PipelineConfig(epsilon=1e-4))
frame = path.frame([0.0, 0.25, 0.5])
geometry = path.geometry(0.5)
```

Curve sources are built-in analytic curves (`exemplary`, `exemplary-planar`, `line`,
`helix`), any `AnalyticCurve` with five derivative callables, a
`FiniteDifferenceCurve` wrapping a position function, or sampled data fitted with a
quintic smoothing spline (`load_orbit_csv` and `from_samples`).

---

## Command line usage

```shell
phodcos fit --curve exemplary --epsilon 1e-4 --output exemplary.json
phodcos convergence --curve exemplary --min-exp 0 --max-exp 8
phodcos eval exemplary.json --samples 201 --output samples.csv
phodcos verify --curve helix
phodcos fit --csv orbit.csv --fit-tol 1e-6 --epsilon 1e-6
```

Exit codes: 0 on success, 2 on invalid input, 3 when the tolerance is not reached
and 4 when a property check fails.

---

## Robot Framework® usage

The PhodcosLibrary generates one test case per property and built-in curve.

``` robotframework
*** Settings ***
Library            Phodcos.PhodcosLibrary
...                    curves=${{["exemplary", "helix"]}}
...                    ignored_properties=${{["continuity"]}}
Test Template      Verify Property

*** Test Cases ***
${property} holds for ${curve}
```

Details about the library parameters and keywords can be found in the keyword
documentation generated with `invoke libdoc`.
"""

from typing import Iterable, List, Optional, Tuple

from DataDriver import DataDriver
from robot.api.deco import library

from Phodcos.ingest import BUILTIN_CURVES
from Phodcos.phodcos_keywords import PhodcosKeywords
from Phodcos.pipeline import GrowthStrategy
from Phodcos.properties import PROPERTIES
from Phodcos.property_reader import PropertyReader


@library(scope="TEST SUITE", doc_format="ROBOT")
class PhodcosLibrary(PhodcosKeywords, DataDriver):
    """
    Library generating one test case per (property, curve) pair; see the
    README for an introduction and examples.
    """

    def __init__(  # pylint: disable=too-many-arguments
        self,
        curves: Optional[Iterable[str]] = None,
        included_properties: Optional[Iterable[str]] = None,
        ignored_properties: Optional[Iterable[str]] = None,
        ignored_testcases: Optional[Iterable[Tuple[str, str]]] = None,
        n_segments: int = 4,
        epsilon: float = 1e-6,
        growth: GrowthStrategy = GrowthStrategy.DOUBLE,
        samples_per_segment: int = 1000,
        workers: int = 1,
    ):
        """
         == Test case generation ==

         === curves ===
         The built-in curves to generate test cases for; all of them by default.

         === included_properties ===
         A list of properties that will be included when generating the test cases.
         The ``*`` character can be used at the end of a partial name to include all
         properties starting with it (wildcard include).

         === ignored_properties ===
         A list of properties that will be ignored when generating the test cases,
         with the same wildcard support.

         === ignored_testcases ===
         Specific (property, curve) pairs to skip, given as a ``Tuple`` or ``List``.

         == Pipeline parameters ==

         === n_segments ===
         The number of uniform segments used by the property checks on fitted paths.

         === epsilon ===
         The conversion error tolerance used by `Fit Curve`.

         === growth ===
         ``DOUBLE`` (default) or ``INCREMENT``: how the segment count grows between
         iterations of `Fit Curve`.

         === samples_per_segment ===
         The number of uniform samples per segment at which the conversion error is measured.

         === workers ===
         The number of threads interpolating segments; 1 runs in-process.
        """
        curves = list(curves) if curves else sorted(BUILTIN_CURVES)
        included_properties = included_properties if included_properties else ()
        ignored_properties = ignored_properties if ignored_properties else ()
        ignored_testcases = ignored_testcases if ignored_testcases else ()

        PhodcosKeywords.__init__(
            self,
            n_segments=n_segments,
            epsilon=epsilon,
            growth=growth,
            samples_per_segment=samples_per_segment,
            workers=workers,
        )

        DataDriver.__init__(
            self,
            reader_class=PropertyReader,
            properties=list(PROPERTIES),
            curves=curves,
            included_properties=included_properties,
            ignored_properties=ignored_properties,
            ignored_testcases=ignored_testcases,
        )


class DocumentationGenerator(PhodcosLibrary):
    __doc__ = PhodcosLibrary.__doc__

    @staticmethod
    def get_keyword_names() -> List[str]:
        """Curated keywords for libdoc and libspec."""
        return [
            "verify_property",
            "fit_curve",
            "conversion_error_should_be_below",
            "observed_order_should_be_between",
        ]  # pragma: no cover
