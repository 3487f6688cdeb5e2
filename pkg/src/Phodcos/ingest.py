"""
Curve sources: providers of a curve gamma(xi) and its first four derivatives.

Built-in analytic curves carry exact derivatives; sampled data is fitted with a
quintic spline per coordinate so that derivatives up to order 4 are continuous.
"""

import io
import re
from abc import ABC, abstractmethod
from functools import lru_cache
from logging import getLogger
from math import factorial
from pathlib import Path
from typing import Callable, Dict, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike, NDArray
from scipy.interpolate import UnivariateSpline

from Phodcos.errors import (
    EmptyFile,
    InsufficientSamples,
    NonMonotonicParameter,
    ParseError,
    SourceValidationError,
)
from Phodcos.hermite import RigidTransform

logger = getLogger(__name__)

MAX_ORDER = 4
STENCIL_HALF_WIDTH = 5
MIN_SAMPLES = 8

Sample = Tuple[float, NDArray[np.float64]]
Component = Callable[[NDArray[np.float64]], NDArray[np.float64]]


class CurveSource(ABC):
    """A parametric curve on ``domain`` with derivatives up to order 4."""

    validation_rtol = 1e-5

    def __init__(self, domain: Tuple[float, float], description: str) -> None:
        xi0, xif = float(domain[0]), float(domain[1])
        if not xif > xi0:
            raise ValueError(f"empty domain [{xi0}, {xif}]")
        self.domain = (xi0, xif)
        self.description = description

    @property
    def width(self) -> float:
        return self.domain[1] - self.domain[0]

    @abstractmethod
    def evaluate(self, xi: Union[float, ArrayLike], order: int = 0) -> NDArray[np.float64]:
        """Derivative of the given order at xi; shape (3,) for scalar xi, (m, 3) otherwise."""

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.description!r}, domain={self.domain})"


class AnalyticCurve(CurveSource):
    """A curve given by one callable per derivative order 0..4."""

    def __init__(
        self,
        derivatives: Sequence[Component],
        domain: Tuple[float, float] = (0.0, 1.0),
        description: str = "analytic",
    ) -> None:
        super().__init__(domain, description)
        if len(derivatives) != MAX_ORDER + 1:
            raise ValueError(f"expected {MAX_ORDER + 1} derivative callables, got {len(derivatives)}")
        self._derivatives = tuple(derivatives)

    def evaluate(self, xi: Union[float, ArrayLike], order: int = 0) -> NDArray[np.float64]:
        return np.asarray(self._derivatives[order](np.asarray(xi, dtype=float)), dtype=float)


def _harmonic(amplitude: float, frequency: float, phase: float) -> List[Component]:
    """Derivatives of amplitude * sin(frequency * xi + phase)."""
    return [
        lambda xi, m=m: amplitude * frequency**m * np.sin(frequency * xi + phase + m * np.pi / 2)
        for m in range(MAX_ORDER + 1)
    ]


def _exp_cos(frequency: float) -> List[Component]:
    """Derivatives of exp(cos(frequency * xi))."""

    def derivative(xi: NDArray[np.float64], m: int) -> NDArray[np.float64]:
        theta = frequency * xi
        s, c = np.sin(theta), np.cos(theta)
        g = np.exp(c)
        factor = (
            np.ones_like(theta),
            -s,
            s**2 - c,
            3 * s * c + s - s**3,
            3 * c**2 - 4 * s**2 + c - 6 * s**2 * c + s**4,
        )[m]
        return frequency**m * factor * g

    return [lambda xi, m=m: derivative(xi, m) for m in range(MAX_ORDER + 1)]


def _polynomial(coefficients: Sequence[float]) -> List[Component]:
    """Derivatives of sum(coefficients[i] * xi**i)."""
    poly = np.polynomial.Polynomial(coefficients)
    return [lambda xi, p=poly.deriv(m): p(xi) for m in range(MAX_ORDER + 1)]


def _stack(*components: List[Component]) -> List[Component]:
    return [
        lambda xi, m=m: np.stack(np.broadcast_arrays(*(c[m](xi) for c in components)), axis=-1)
        for m in range(MAX_ORDER + 1)
    ]


def exemplary_curve() -> AnalyticCurve:
    """(1.5 sin 7.2xi, cos 9xi, exp(cos 1.8xi)) on [0, 1]."""
    return AnalyticCurve(
        _stack(_harmonic(1.5, 7.2, 0.0), _harmonic(1.0, 9.0, np.pi / 2), _exp_cos(1.8)),
        description="exemplary",
    )


def exemplary_planar_curve() -> AnalyticCurve:
    """The exemplary curve with its y component set to 0."""
    return AnalyticCurve(
        _stack(_harmonic(1.5, 7.2, 0.0), _polynomial([0.0]), _exp_cos(1.8)),
        description="exemplary-planar",
    )


def line_curve() -> AnalyticCurve:
    return AnalyticCurve(
        _stack(_polynomial([0.0, 1.0]), _polynomial([0.0]), _polynomial([0.0])),
        description="line",
    )


def helix_curve(radius: float = 1.0, turns: float = 1.0, pitch: float = 0.5) -> AnalyticCurve:
    frequency = 2 * np.pi * turns
    return AnalyticCurve(
        _stack(
            _harmonic(radius, frequency, np.pi / 2),
            _harmonic(radius, frequency, 0.0),
            _polynomial([0.0, pitch]),
        ),
        description="helix",
    )


BUILTIN_CURVES: Dict[str, Callable[[], AnalyticCurve]] = {
    "exemplary": exemplary_curve,
    "exemplary-planar": exemplary_planar_curve,
    "line": line_curve,
    "helix": helix_curve,
}


def builtin_curve(name: str) -> AnalyticCurve:
    try:
        return BUILTIN_CURVES[name]()
    except KeyError:
        raise ValueError(
            f"unknown curve '{name}'; choose one of {', '.join(sorted(BUILTIN_CURVES))}"
        ) from None


@lru_cache(maxsize=None)
def stencil_weights(order: int, shift: int) -> NDArray[np.float64]:
    """
    Weights w of f^(order)(x) ~ sum w_k f(x + (k + shift) step) / step^order over
    k = -5..5, from the moment conditions sum w_k z_k^p = p! [p == order].
    """
    nodes = np.arange(-STENCIL_HALF_WIDTH, STENCIL_HALF_WIDTH + 1, dtype=float) + shift
    powers = np.arange(nodes.size)[:, None]
    moments = np.zeros(nodes.size)
    moments[order] = factorial(order)
    weights = np.linalg.solve(nodes[None, :] ** powers, moments)
    weights.setflags(write=False)
    return weights


def finite_difference(
    position: Callable[[NDArray[np.float64]], NDArray[np.float64]],
    xi: ArrayLike,
    order: int,
    step: float,
    domain: Union[Tuple[float, float], None] = None,
) -> NDArray[np.float64]:
    """
    Derivative estimate from 11-point stencils. With a ``domain`` the stencil is
    shifted towards the interior so that every node stays inside it.
    """
    xi_arr = np.atleast_1d(np.asarray(xi, dtype=float))
    shifts = np.zeros(xi_arr.shape, dtype=int)
    if domain is not None:
        low = np.ceil((domain[0] - xi_arr) / step - 1e-9) + STENCIL_HALF_WIDTH
        high = np.floor((domain[1] - xi_arr) / step + 1e-9) - STENCIL_HALF_WIDTH
        shifts = np.minimum(np.maximum(shifts, low), high).astype(int)
    offsets = np.arange(-STENCIL_HALF_WIDTH, STENCIL_HALF_WIDTH + 1)
    result = np.zeros(xi_arr.shape + (3,))
    for shift in np.unique(shifts):
        mask = shifts == shift
        nodes = xi_arr[mask][:, None] + (offsets + shift)[None, :] * step
        values = position(nodes.ravel()).reshape(nodes.shape + (3,))
        weights = stencil_weights(order, int(shift))
        result[mask] = np.einsum("k,mkc->mc", weights, values) / step**order
    return result if np.ndim(xi) else result[0]


class FiniteDifferenceCurve(CurveSource):
    """A position-only curve whose derivatives are estimated with finite differences."""

    def __init__(
        self,
        position: Callable[[NDArray[np.float64]], NDArray[np.float64]],
        domain: Tuple[float, float] = (0.0, 1.0),
        description: str = "finite-difference",
    ) -> None:
        super().__init__(domain, description)
        self._position = position
        self.step = max(1e-4, 1e-3 * self.width)

    def evaluate(self, xi: Union[float, ArrayLike], order: int = 0) -> NDArray[np.float64]:
        if order == 0:
            return np.asarray(self._position(np.asarray(xi, dtype=float)), dtype=float)
        return finite_difference(self._position, xi, order, self.step, self.domain)


class SampledCurve(CurveSource):
    """Quintic spline fit of ordered samples (C4 across knots)."""

    validation_rtol = 1e-2

    def __init__(
        self,
        xi: ArrayLike,
        points: ArrayLike,
        fit_tol: float = 0.0,
        description: str = "samples",
    ) -> None:
        xi_arr = np.asarray(xi, dtype=float)
        points_arr = np.asarray(points, dtype=float)
        if xi_arr.size < MIN_SAMPLES:
            raise InsufficientSamples(f"{xi_arr.size} samples given, at least {MIN_SAMPLES} needed")
        if np.any(np.diff(xi_arr) <= 0.0):
            raise NonMonotonicParameter("sample parameters must be strictly increasing")
        super().__init__((xi_arr[0], xi_arr[-1]), description)
        self.samples = (xi_arr, points_arr)
        self.fit_tol = fit_tol
        self._splines = self._fit(fit_tol * fit_tol * xi_arr.size)
        self.max_residual = self._residual()
        if self.max_residual > fit_tol and fit_tol > 0.0:
            logger.warning(
                f"smoothing fit residual {self.max_residual:.3e} exceeds {fit_tol:.3e}; "
                f"falling back to interpolation"
            )
            self._splines = self._fit(0.0)
            self.max_residual = self._residual()
        logger.info(f"fitted {xi_arr.size} samples, max residual {self.max_residual:.3e}")

    def _fit(self, smoothing: float) -> List[UnivariateSpline]:
        xi, points = self.samples
        return [UnivariateSpline(xi, points[:, c], k=5, s=smoothing) for c in range(3)]

    def _residual(self) -> float:
        xi, points = self.samples
        return float(np.max(np.linalg.norm(self.evaluate(xi) - points, axis=-1)))

    def evaluate(self, xi: Union[float, ArrayLike], order: int = 0) -> NDArray[np.float64]:
        xi_arr = np.asarray(xi, dtype=float)
        return np.stack([spline(xi_arr, nu=order) for spline in self._splines], axis=-1)


def from_samples(
    samples: Sequence[Sample], fit_tol: float = 0.0, description: str = "samples"
) -> SampledCurve:
    if len(samples) < MIN_SAMPLES:
        raise InsufficientSamples(f"{len(samples)} samples given, at least {MIN_SAMPLES} needed")
    xi = np.array([sample[0] for sample in samples], dtype=float)
    points = np.array([sample[1] for sample in samples], dtype=float)
    return SampledCurve(xi, points, fit_tol, description)


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def load_orbit_csv(path: Union[str, Path]) -> List[Sample]:
    """
    Read samples from a CSV file with columns (x, y, z) or (t, x, y, z).

    Rows are comma- or whitespace-separated; a header row is detected by a
    non-numeric first token. Without a t column, xi is uniform by row index on
    [0, 1]; with it, t is mapped affinely onto [0, 1]. Error rows are 1-based
    line numbers of the file, blank lines included.
    """
    numbered = [
        (number, line)
        for number, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1)
        if line.strip()
    ]
    if not numbered:
        raise EmptyFile(f"{path} holds no data")
    numbers, lines = zip(*numbered)
    first_token = re.split(r"[,\s]+", lines[0].strip())[0]
    header_rows = 0 if _is_number(first_token) else 1
    if len(lines) <= header_rows:
        raise EmptyFile(f"{path} holds a header but no data")
    data_line = lines[header_rows]
    separator = {"sep": ","} if "," in data_line else {"sep": r"\s+"}
    try:
        frame = pd.read_csv(
            io.StringIO("\n".join(lines[header_rows:])),
            header=None,
            dtype=str,
            skipinitialspace=True,
            **separator,
        )
    except pd.errors.ParserError as error:
        match = re.search(r"line (\d+)", str(error))
        row = min(int(match.group(1)) if match else 1, len(lines) - header_rows)
        raise ParseError(numbers[header_rows + row - 1], str(error)) from error
    if frame.shape[1] not in (3, 4):
        raise ParseError(numbers[header_rows], f"expected 3 or 4 columns, found {frame.shape[1]}")
    numeric = frame.apply(lambda column: pd.to_numeric(column.str.strip(), errors="coerce"))
    invalid = numeric.isna().any(axis=1).to_numpy()
    if invalid.any():
        index = int(np.argmax(invalid))
        raise ParseError(numbers[header_rows + index], f"cannot parse {frame.iloc[index].tolist()}")
    values = numeric.to_numpy(dtype=float)
    if values.shape[1] == 4:
        t = values[:, 0]
        span = t[-1] - t[0]
        xi = (t - t[0]) / span if span != 0.0 else np.zeros_like(t)
        points = values[:, 1:]
    else:
        xi = np.linspace(0.0, 1.0, len(values)) if len(values) > 1 else np.zeros(1)
        points = values
    logger.info(f"loaded {len(values)} samples from {path}")
    return [(float(x), p) for x, p in zip(xi, points)]


class TransformedCurve(CurveSource):
    """A source moved by a rigid transform."""

    def __init__(self, source: CurveSource, transform: RigidTransform) -> None:
        super().__init__(source.domain, f"transformed:{source.description}")
        self.source = source
        self.transform = transform
        self.validation_rtol = source.validation_rtol

    def evaluate(self, xi: Union[float, ArrayLike], order: int = 0) -> NDArray[np.float64]:
        value = self.source.evaluate(xi, order)
        if order == 0:
            return self.transform.apply_point(value)
        return self.transform.apply_vector(value)


class ReversedCurve(CurveSource):
    """The source traversed backwards over the same domain."""

    def __init__(self, source: CurveSource) -> None:
        super().__init__(source.domain, f"reversed:{source.description}")
        self.source = source
        self.validation_rtol = source.validation_rtol

    def evaluate(self, xi: Union[float, ArrayLike], order: int = 0) -> NDArray[np.float64]:
        mirrored = self.domain[0] + self.domain[1] - np.asarray(xi, dtype=float)
        return (-1.0) ** order * self.source.evaluate(mirrored, order)


class ProjectedCurve(CurveSource):
    """The source with one coordinate set to zero (the y axis by default)."""

    def __init__(self, source: CurveSource, axis: int = 1) -> None:
        super().__init__(source.domain, f"projected:{source.description}")
        self.source = source
        self.validation_rtol = source.validation_rtol
        self._mask = np.ones(3)
        self._mask[axis] = 0.0

    def evaluate(self, xi: Union[float, ArrayLike], order: int = 0) -> NDArray[np.float64]:
        return self.source.evaluate(xi, order) * self._mask


def validate_derivatives(source: CurveSource, n_probe: int = 20) -> float:
    """
    Compare derivatives 1-4 of ``source`` with central finite differences of its
    positions at interior probes. Returns the worst relative deviation and raises
    SourceValidationError when it exceeds the source's ``validation_rtol``.
    """
    step = 1e-2 * source.width
    margin = (STENCIL_HALF_WIDTH + 1) * step
    probes = np.linspace(source.domain[0] + margin, source.domain[1] - margin, n_probe)
    magnitude = float(np.max(np.linalg.norm(source.evaluate(probes), axis=-1)))
    worst = 0.0
    for order in range(1, MAX_ORDER + 1):
        exact = source.evaluate(probes, order)
        estimate = finite_difference(lambda x: source.evaluate(x), probes, order, step)
        scale = max(float(np.max(np.linalg.norm(exact, axis=-1))), magnitude / source.width**order)
        deviation = float(np.max(np.linalg.norm(exact - estimate, axis=-1))) / max(scale, 1e-300)
        logger.debug(f"{source.description}: order {order} deviation {deviation:.3e}")
        worst = max(worst, deviation)
    if worst > source.validation_rtol:
        raise SourceValidationError(
            f"{source.description}: derivatives deviate from finite differences by "
            f"{worst:.3e} (tolerance {source.validation_rtol:.0e})"
        )
    return worst
