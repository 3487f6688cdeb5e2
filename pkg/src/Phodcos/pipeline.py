"""
Piecewise PH parameterization of a curve source.

The source domain is split into ``n_s`` equal segments; each segment is replaced
by the C4 Hermite PH interpolant of its boundary data, the roll offsets between
consecutive Euler-Rodrigues frames are removed and the same-parameter conversion
error is measured. The number of segments grows until the error is below the
configured tolerance.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from logging import getLogger
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from Phodcos.errors import ContinuityFailure, SegmentDegeneracy, ToleranceUnreachable
from Phodcos.hermite import HermiteC4Data, c4_interpolate
from Phodcos.ingest import MAX_ORDER, CurveSource, validate_derivatives
from Phodcos.phcurve import FrameSample, GeometrySample, PHSegment

logger = getLogger(__name__)

CONTINUITY_TOL = 1e-6

T = TypeVar("T")


class GrowthStrategy(str, Enum):
    """How the segment count grows between iterations."""

    INCREMENT = "INCREMENT"
    DOUBLE = "DOUBLE"

    def next(self, n_segments: int) -> int:
        return n_segments + 1 if self is GrowthStrategy.INCREMENT else 2 * n_segments


@dataclass(frozen=True)
class PipelineConfig:  # pylint: disable=too-many-instance-attributes
    epsilon: float = 1e-6
    n_s_init: int = 2
    growth: GrowthStrategy = GrowthStrategy.DOUBLE
    samples_per_segment: int = 1000
    max_segments: int = 4096
    enforce_continuity: bool = True
    validate_source: bool = True
    workers: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.growth, GrowthStrategy):
            object.__setattr__(self, "growth", GrowthStrategy(str(self.growth).upper()))
        if not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.n_s_init < 1:
            raise ValueError(f"n_s_init must be at least 1, got {self.n_s_init}")
        if self.samples_per_segment < 2:
            raise ValueError(f"samples_per_segment must be at least 2, got {self.samples_per_segment}")
        if self.max_segments < self.n_s_init:
            raise ValueError(f"max_segments ({self.max_segments}) is below n_s_init ({self.n_s_init})")
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")


class ConvergenceRow(NamedTuple):
    n_segments: int
    max_error: float
    ratio: Optional[float]


class JunctionMismatch(NamedTuple):
    frame: float
    preimage: float
    position: float


@dataclass(frozen=True, eq=False)
class PHPath:
    """
    Ordered PH segments over the global parameter range [xi0, xif].

    Derivatives, angular velocity and parametric speed are reported with respect
    to the global parameter; segment k covers [xi0 + k h, xi0 + (k + 1) h].
    """

    segments: Tuple[PHSegment, ...]
    xi0: float = 0.0
    xif: float = 1.0

    def __post_init__(self) -> None:
        if not self.segments:
            raise ValueError("a path needs at least one segment")
        object.__setattr__(self, "segments", tuple(self.segments))

    @property
    def n_segments(self) -> int:
        return len(self.segments)

    @property
    def h(self) -> float:
        return (self.xif - self.xi0) / self.n_segments

    def locate(self, xi: Union[float, ArrayLike]) -> Tuple[NDArray[np.int_], NDArray[np.float64]]:
        """Segment index and local parameter of global parameters; the last segment is right-closed."""
        scaled = (np.asarray(xi, dtype=float) - self.xi0) / self.h
        index = np.clip(np.floor(scaled), 0, self.n_segments - 1).astype(int)
        return index, scaled - index

    def _per_segment(
        self, xi: Union[float, ArrayLike], query: Callable[[int, NDArray[np.float64]], T]
    ) -> List[Tuple[NDArray[np.bool_], T]]:
        index, local = self.locate(np.atleast_1d(np.asarray(xi, dtype=float)))
        return [(index == k, query(int(k), local[index == k])) for k in np.unique(index)]

    def evaluate(self, xi: Union[float, ArrayLike], order: int = 0) -> NDArray[np.float64]:
        scale = self.h**order
        parts = self._per_segment(xi, lambda k, local: self.segments[k].evaluate(local, order) / scale)
        result = np.empty((np.size(xi), 3))
        for mask, values in parts:
            result[mask] = values
        return result if np.ndim(xi) else result[0]

    def frame(self, xi: Union[float, ArrayLike]) -> FrameSample:
        size = np.size(xi)
        rotation, omega, sigma = np.empty((size, 3, 3)), np.empty((size, 3)), np.empty(size)
        for mask, sample in self._per_segment(xi, lambda k, local: self.segments[k].erf(local)):
            rotation[mask] = sample.R
            omega[mask] = sample.omega / self.h
            sigma[mask] = sample.sigma / self.h
        if np.ndim(xi) == 0:
            return FrameSample(rotation[0], omega[0], sigma[0])
        return FrameSample(rotation, omega, sigma)

    def geometry(self, xi: Union[float, ArrayLike]) -> GeometrySample:
        size = np.size(xi)
        offsets = np.concatenate([[0.0], np.cumsum([seg.length for seg in self.segments])])
        length, kappa, tau = np.empty(size), np.empty(size), np.empty(size)
        defined = np.empty(size, dtype=bool)
        for mask, (k, sample) in self._per_segment(
            xi, lambda k, local: (k, self.segments[k].geometry(local))
        ):
            length[mask] = offsets[k] + sample.L
            kappa[mask] = sample.kappa
            tau[mask] = sample.tau
            defined[mask] = sample.torsion_defined
        if np.ndim(xi) == 0:
            return GeometrySample(length[0], kappa[0], tau[0], defined[0])
        return GeometrySample(length, kappa, tau, defined)

    def total_length(self) -> float:
        return float(sum(seg.length for seg in self.segments))


def extract_segment_data(src: CurveSource, k: int, n_s: int) -> HermiteC4Data:
    """Boundary data of segment k, with order-m derivatives scaled by h^m for the local parameter."""
    if not 0 <= k < n_s:
        raise ValueError(f"segment {k} is outside 0..{n_s - 1}")
    xi0, _ = src.domain
    h = src.width / n_s
    xi_b, xi_e = xi0 + k * h, xi0 + (k + 1) * h
    begin = np.stack([src.evaluate(xi_b, m) * h**m for m in range(MAX_ORDER + 1)])
    end = np.stack([src.evaluate(xi_e, m) * h**m for m in range(MAX_ORDER + 1)])
    return HermiteC4Data.from_derivatives(begin, end)


def interpolate_segments(src: CurveSource, n_s: int, workers: int = 1) -> List[PHSegment]:
    def interpolate(k: int) -> PHSegment:
        segment = c4_interpolate(extract_segment_data(src, k, n_s))
        logger.debug(f"segment {k + 1}/{n_s} interpolated, length {segment.length:.6e}")
        return segment

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(interpolate, range(n_s)))
    return [interpolate(k) for k in range(n_s)]


def _frame_gap(previous: PHSegment, candidate: PHSegment) -> float:
    return float(np.linalg.norm(previous.erf(1.0).R - candidate.erf(0.0).R))


def enforce_frame_continuity(path: PHPath) -> PHPath:
    """
    Remove the roll offset at every junction by moving each segment along its
    preimage fiber, then pick the preimage sign matching the previous segment.
    """
    segments = list(path.segments)
    for k in range(len(segments) - 1):
        previous, following = segments[k], segments[k + 1]
        e2 = previous.erf(1.0).R[:, 1]
        frame = following.erf(0.0).R
        alpha = float(np.arctan2(e2 @ frame[:, 2], e2 @ frame[:, 1]))
        candidate = following.with_fiber_rotation(alpha / 2.0)
        gap = _frame_gap(previous, candidate)
        if gap > CONTINUITY_TOL:
            candidate = following.with_fiber_rotation(-alpha / 2.0)
            gap = _frame_gap(previous, candidate)
        if gap > CONTINUITY_TOL:
            raise ContinuityFailure(
                f"frames at junction {k + 1} differ by {gap:.3e} after the roll correction"
            )
        end, start = previous.preimage_at(1.0), candidate.preimage_at(0.0)
        if np.linalg.norm(start + end) < np.linalg.norm(start - end):
            candidate = candidate.negated()
        logger.debug(f"junction {k + 1}: roll angle {alpha:.6e}, frame gap {gap:.3e}")
        segments[k + 1] = candidate
    return PHPath(tuple(segments), path.xi0, path.xif)


def junction_mismatch(path: PHPath) -> List[JunctionMismatch]:
    """Frobenius frame gap, preimage gap and position gap at each junction."""
    gaps = []
    for previous, following in zip(path.segments, path.segments[1:]):
        gaps.append(
            JunctionMismatch(
                _frame_gap(previous, following),
                float(np.linalg.norm(previous.preimage_at(1.0) - following.preimage_at(0.0))),
                float(np.linalg.norm(previous.end_point - following.p0)),
            )
        )
    return gaps


def conversion_error(src: CurveSource, path: PHPath, samples_per_segment: int = 1000) -> float:
    """Largest distance between source and path at equal parameter values."""
    if samples_per_segment < 2:
        raise ValueError("at least two samples per segment are needed")
    local = np.linspace(0.0, 1.0, samples_per_segment)
    worst = 0.0
    for k, segment in enumerate(path.segments):
        xi = path.xi0 + (k + local) * path.h
        distance = np.linalg.norm(src.evaluate(xi) - segment.evaluate(local), axis=-1)
        worst = max(worst, float(np.max(distance)))
    return worst


def _row(n_segments: int, error: float, rows: Sequence[ConvergenceRow]) -> ConvergenceRow:
    ratio = rows[-1].max_error / error if rows and error > 0.0 else None
    return ConvergenceRow(n_segments, error, ratio)


def phodcos(
    src: CurveSource, cfg: PipelineConfig = PipelineConfig()
) -> Tuple[PHPath, List[ConvergenceRow]]:
    """Grow the segment count until the conversion error is below ``cfg.epsilon``."""
    if cfg.validate_source:
        validate_derivatives(src)
    rows: List[ConvergenceRow] = []
    n_s = cfg.n_s_init
    retried = False
    while n_s <= cfg.max_segments:
        try:
            segments = interpolate_segments(src, n_s, cfg.workers)
        except SegmentDegeneracy as error:
            if retried:
                raise
            retried = True
            logger.warning(f"{error}; retrying with {2 * n_s} segments")
            n_s *= 2
            continue
        path = PHPath(tuple(segments), *src.domain)
        if cfg.enforce_continuity:
            path = enforce_frame_continuity(path)
        error_value = conversion_error(src, path, cfg.samples_per_segment)
        rows.append(_row(n_s, error_value, rows))
        logger.info(f"n_s = {n_s}: max error {error_value:.4e}, ratio {rows[-1].ratio}")
        if error_value < cfg.epsilon:
            return path, rows
        n_s = cfg.growth.next(n_s)
    raise ToleranceUnreachable(
        f"error {rows[-1].max_error if rows else float('inf'):.3e} still above "
        f"{cfg.epsilon:.1e} at the cap of {cfg.max_segments} segments"
    )


def convergence_study(
    src: CurveSource,
    exponents: Sequence[int],
    samples_per_segment: int = 1000,
    workers: int = 1,
) -> List[ConvergenceRow]:
    """Conversion errors for n_s = 2^m over the given exponents."""
    rows: List[ConvergenceRow] = []
    for exponent in exponents:
        n_s = 2**exponent
        path = PHPath(tuple(interpolate_segments(src, n_s, workers)), *src.domain)
        rows.append(_row(n_s, conversion_error(src, path, samples_per_segment), rows))
        logger.info(f"n_s = {n_s}: max error {rows[-1].max_error:.4e}")
    return rows


def observed_order(rows: Sequence[ConvergenceRow]) -> float:
    """Least-squares slope of log(error) against log(1 / n_segments)."""
    usable = [row for row in rows if row.max_error > 0.0]
    if len(usable) < 2:
        raise ValueError("at least two rows with a positive error are needed")
    log_h = np.log([1.0 / row.n_segments for row in usable])
    log_error = np.log([row.max_error for row in usable])
    slope, _ = np.polyfit(log_h, log_error, 1)
    return float(slope)
