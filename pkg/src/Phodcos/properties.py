"""Geometric property checks of the PH interpolant and of fitted paths."""

from logging import getLogger
from typing import Callable, Dict, List, NamedTuple, Optional

import numpy as np

from Phodcos.hermite import InterpolantParams, RigidTransform, c4_interpolate
from Phodcos.ingest import CurveSource, ProjectedCurve, TransformedCurve
from Phodcos.pipeline import (
    PHPath,
    enforce_frame_continuity,
    extract_segment_data,
    interpolate_segments,
    junction_mismatch,
)

logger = getLogger(__name__)

SAMPLES_PER_SEGMENT = 100
FIBER_ANGLE = 0.7


class PropertyResult(NamedTuple):
    name: str
    passed: bool
    measured: float
    threshold: float

    def __str__(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} {self.name}: {self.measured:.3e} (threshold {self.threshold:.0e})"


def _result(name: str, measured: float, threshold: float) -> PropertyResult:
    result = PropertyResult(name, bool(measured < threshold), float(measured), threshold)
    logger.info(str(result))
    return result


def _fit(src: CurveSource, n_segments: int) -> PHPath:
    return enforce_frame_continuity(PHPath(tuple(interpolate_segments(src, n_segments)), *src.domain))


def _global_samples(path: PHPath) -> np.ndarray:
    return np.linspace(path.xi0, path.xif, SAMPLES_PER_SEGMENT * path.n_segments)


def default_transform() -> RigidTransform:
    """Quarter turn about y followed by the translation (-1, 0, 2.5)."""
    return RigidTransform.from_axis_angle((0.0, 1.0, 0.0), np.pi / 2, (-1.0, 0.0, 2.5))


def check_planarity(src: CurveSource, n_segments: int = 4) -> PropertyResult:
    """Data in the plane y = 0 gives a path in that plane."""
    path = _fit(ProjectedCurve(src, axis=1), n_segments)
    measured = float(np.max(np.abs(path.evaluate(_global_samples(path))[:, 1])))
    return _result("planarity", measured, 1e-10)


def check_invariance(
    src: CurveSource, transform: Optional[RigidTransform] = None, n_segments: int = 4
) -> PropertyResult:
    """Interpolating moved data equals moving the interpolant."""
    transform = transform or default_transform()
    path = _fit(src, n_segments)
    moved = _fit(TransformedCurve(src, transform), n_segments)
    xi = _global_samples(path)
    expected = transform.apply_point(path.evaluate(xi))
    measured = float(np.max(np.linalg.norm(moved.evaluate(xi) - expected, axis=-1)))
    return _result("invariance", measured, 1e-9)


def check_reversion(src: CurveSource) -> PropertyResult:
    """The interpolant of reversed data is the reversed interpolant (single segment)."""
    data = extract_segment_data(src, 0, 1)
    forward = c4_interpolate(data)
    backward = c4_interpolate(data.reversed())
    xi = np.linspace(0.0, 1.0, SAMPLES_PER_SEGMENT)
    gap = np.linalg.norm(backward.evaluate(1.0 - xi) - forward.evaluate(xi), axis=-1)
    return _result("reversion", float(np.max(gap)), 1e-9)


def check_fiber(src: CurveSource, phi: float = FIBER_ANGLE) -> PropertyResult:
    """
    Shifting theta0, theta4 and theta8 together by phi is the global fiber
    rotation Q(phi); both leave the path unchanged.
    """
    data = extract_segment_data(src, 0, 1)
    segment = c4_interpolate(data)
    shifted = c4_interpolate(data, InterpolantParams(theta0=phi, theta4=phi, theta8=phi))
    rotated = segment.with_fiber_rotation(phi)
    xi = np.linspace(0.0, 1.0, SAMPLES_PER_SEGMENT)
    reference = segment.evaluate(xi)
    scale = max(float(np.max(np.linalg.norm(reference, axis=-1))), 1.0)
    gap = max(
        float(np.max(np.linalg.norm(shifted.evaluate(xi) - reference, axis=-1))),
        float(np.max(np.linalg.norm(rotated.evaluate(xi) - reference, axis=-1))),
    )
    return _result("fiber", gap / scale, 1e-12)


def check_ph_condition(path: PHPath) -> PropertyResult:
    """|h| equals sigma at every sample of every segment."""
    xi = np.linspace(0.0, 1.0, SAMPLES_PER_SEGMENT)
    worst = 0.0
    for segment in path.segments:
        speed = np.linalg.norm(segment.evaluate(xi, 1), axis=-1)
        sigma = segment.sigma(xi)
        worst = max(worst, float(np.max(np.abs(speed - sigma)) / max(float(np.max(sigma)), 1e-300)))
    return _result("ph-condition", worst, 1e-10)


def check_continuity(path: PHPath) -> PropertyResult:
    gaps = junction_mismatch(path)
    measured = max((max(gap.frame, gap.preimage) for gap in gaps), default=0.0)
    return _result("continuity", measured, 1e-8)


PROPERTIES: Dict[str, Callable[[CurveSource, int], PropertyResult]] = {
    "planarity": check_planarity,
    "invariance": lambda src, n: check_invariance(src, n_segments=n),
    "reversion": lambda src, n: check_reversion(src),
    "fiber": lambda src, n: check_fiber(src),
    "ph-condition": lambda src, n: check_ph_condition(_fit(src, n)),
    "continuity": lambda src, n: check_continuity(_fit(src, n)),
}


def verify_property(name: str, src: CurveSource, n_segments: int = 4) -> PropertyResult:
    try:
        check = PROPERTIES[name]
    except KeyError:
        raise ValueError(f"unknown property '{name}'; choose one of {', '.join(PROPERTIES)}") from None
    return check(src, n_segments)


def run_all(src: CurveSource, n_segments: int = 4) -> List[PropertyResult]:
    path = _fit(src, n_segments)
    return [
        check_planarity(src, n_segments),
        check_invariance(src, n_segments=n_segments),
        check_reversion(src),
        check_fiber(src),
        check_ph_condition(path),
        check_continuity(path),
    ]
