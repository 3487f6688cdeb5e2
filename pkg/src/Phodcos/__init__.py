"""
The Phodcos package converts smooth curves into piecewise Pythagorean-hodograph paths.
The following classes and functions are exposed to the package user:
- phodcos, PipelineConfig, GrowthStrategy: run the parameterization to a tolerance.
- PHPath, PHSegment: the resulting path and its segments, with closed-form frames.
- builtin_curve, AnalyticCurve, FiniteDifferenceCurve, load_orbit_csv, from_samples:
    curve sources.
- c4_interpolate, HermiteC4Data, InterpolantParams: single-segment interpolation.
- PhodcosLibrary: the class to be used as a Library in the *** Settings *** section.
"""

from importlib.metadata import version

from Phodcos.errors import PhodcosError
from Phodcos.hermite import HermiteC4Data, InterpolantParams, RigidTransform, c4_interpolate
from Phodcos.ingest import (
    AnalyticCurve,
    CurveSource,
    FiniteDifferenceCurve,
    builtin_curve,
    from_samples,
    load_orbit_csv,
)
from Phodcos.phcurve import PHSegment
from Phodcos.phodcoslibrary import PhodcosLibrary
from Phodcos.pipeline import GrowthStrategy, PHPath, PipelineConfig, phodcos

try:
    __version__ = version("phodcos")
except Exception:  # pragma: no cover
    pass

__all__ = [
    "AnalyticCurve",
    "CurveSource",
    "FiniteDifferenceCurve",
    "GrowthStrategy",
    "HermiteC4Data",
    "InterpolantParams",
    "PHPath",
    "PHSegment",
    "PhodcosError",
    "PhodcosLibrary",
    "PipelineConfig",
    "RigidTransform",
    "builtin_curve",
    "c4_interpolate",
    "from_samples",
    "load_orbit_csv",
    "phodcos",
]
