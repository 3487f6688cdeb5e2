"""
Degree-17 Pythagorean-hodograph segments.

A segment is fully described by its nine preimage control points and its start
point; hodograph, path and parametric speed are cached at construction and every
derived quantity of the moving coordinate system is computed in closed form.
"""

from dataclasses import dataclass, field
from typing import NamedTuple, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from Phodcos import quat
from Phodcos.bernstein import BernsteinPoly
from Phodcos.coefficients import PATH_DEGREE, PREIMAGE_DEGREE, hodograph_tensor
from Phodcos.errors import SingularSpeed, VanishingPreimage
from Phodcos.quat import TOL_DEG

XiLike = Union[float, ArrayLike]


class FrameSample(NamedTuple):
    """Euler-Rodrigues frame samples; leading axis indexes the sample when xi is an array."""

    R: NDArray[np.float64]
    omega: NDArray[np.float64]
    sigma: NDArray[np.float64]


class GeometrySample(NamedTuple):
    L: NDArray[np.float64]
    kappa: NDArray[np.float64]
    tau: NDArray[np.float64]
    torsion_defined: NDArray[np.bool_]


def _star_matrix(preimage: NDArray[np.float64]) -> NDArray[np.float64]:
    return quat.star(preimage[:, None, :], preimage[None, :, :])


def hodograph_from_preimage(preimage: ArrayLike) -> NDArray[np.float64]:
    """The 17 hodograph control points of a degree-8 preimage."""
    a = np.asarray(preimage, dtype=float)
    return np.einsum("ijk,jkc->ic", hodograph_tensor(), _star_matrix(a))


def speed_from_preimage(preimage: ArrayLike) -> NDArray[np.float64]:
    """The 17 control points of sigma = |A|^2, the same Bernstein product as the hodograph."""
    a = np.asarray(preimage, dtype=float)
    return np.einsum("ijk,jk->i", hodograph_tensor(), a @ a.T)


def path_from_hodograph(hodograph: ArrayLike, p0: ArrayLike) -> NDArray[np.float64]:
    """The 18 path control points p_i = p_0 + (1/17) sum_{j<i} h_j."""
    h = np.asarray(hodograph, dtype=float)
    start = np.asarray(p0, dtype=float)
    steps = np.cumsum(h, axis=0) / PATH_DEGREE
    return np.concatenate([start[None, :], start + steps], axis=0)


@dataclass(frozen=True, eq=False)
class PHSegment:
    """One PH segment over the local parameter xi in [0, 1]."""

    preimage: NDArray[np.float64]
    p0: NDArray[np.float64]
    hodograph: BernsteinPoly = field(init=False, repr=False, compare=False)
    path: BernsteinPoly = field(init=False, repr=False, compare=False)
    sigma: BernsteinPoly = field(init=False, repr=False, compare=False)
    preimage_poly: BernsteinPoly = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        preimage = np.array(self.preimage, dtype=float)
        if preimage.shape != (PREIMAGE_DEGREE + 1, 4):
            raise ValueError(f"expected a (9, 4) preimage, got {preimage.shape}")
        p0 = np.array(self.p0, dtype=float)
        preimage.setflags(write=False)
        p0.setflags(write=False)
        object.__setattr__(self, "preimage", preimage)
        object.__setattr__(self, "p0", p0)
        h = hodograph_from_preimage(preimage)
        object.__setattr__(self, "hodograph", BernsteinPoly(h))
        object.__setattr__(self, "path", BernsteinPoly(path_from_hodograph(h, p0)))
        object.__setattr__(self, "sigma", BernsteinPoly(speed_from_preimage(preimage)))
        object.__setattr__(self, "preimage_poly", BernsteinPoly(preimage))

    @property
    def end_point(self) -> NDArray[np.float64]:
        return self.path.ctrl[-1]

    @property
    def preimage_scale(self) -> float:
        """Largest preimage control point norm; degeneracy tests are relative to it."""
        return float(np.max(np.linalg.norm(self.preimage, axis=-1)))

    @property
    def length(self) -> float:
        return float(self.sigma.integral(0.0, 1.0))

    def evaluate(self, xi: XiLike, order: int = 0) -> NDArray[np.float64]:
        """Path position (order 0) or its derivatives with respect to xi."""
        if order == 0:
            return self.path(xi)
        return self.hodograph.derivative(order - 1)(xi)

    def preimage_at(self, xi: XiLike, order: int = 0) -> NDArray[np.float64]:
        return self.preimage_poly.derivative(order)(xi)

    def erf(self, xi: XiLike) -> FrameSample:
        return erf(self, xi)

    def geometry(self, xi: XiLike) -> GeometrySample:
        return geometry(self, xi)

    def with_fiber_rotation(self, phi: float) -> "PHSegment":
        """Right-multiply every preimage control point by Q(phi); the path is unchanged."""
        return PHSegment(quat.mul(self.preimage, quat.rot_i(phi)), self.p0)

    def negated(self) -> "PHSegment":
        return PHSegment(-self.preimage, self.p0)

    def rotated(self, rotation: ArrayLike, translation: ArrayLike = (0.0, 0.0, 0.0)) -> "PHSegment":
        """The segment moved rigidly: p -> rotation(p) + translation."""
        q = np.asarray(rotation, dtype=float)
        p0 = quat.rotate(q, self.p0) + np.asarray(translation, dtype=float)
        return PHSegment(quat.mul(q, self.preimage), p0)

    def reversed(self) -> "PHSegment":
        """The same path traversed backwards, p_rev(xi) = p(1 - xi)."""
        # right multiplication by j flips the sign of the hodograph
        return PHSegment(quat.mul(self.preimage[::-1], quat.J), self.end_point)


def _frame_and_derivative(
    seg: PHSegment, xi: XiLike
) -> Tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    a = np.atleast_2d(seg.preimage_at(xi))
    da = np.atleast_2d(seg.preimage_at(xi, 1))
    norm2 = np.sum(a * a, axis=-1)
    if np.any(np.sqrt(norm2) <= TOL_DEG * seg.preimage_scale):
        raise VanishingPreimage("the preimage vanishes; the curve has a cusp there")
    dnorm2 = 2.0 * np.sum(a * da, axis=-1)
    columns, derivatives = [], []
    for unit in (quat.I, quat.J, quat.K):
        n = quat.vec(quat.sandwich(a, unit))
        dn = quat.vec(quat.sandwich(da, unit, a) + quat.sandwich(a, unit, da))
        columns.append(n / norm2[:, None])
        derivatives.append((dn * norm2[:, None] - n * dnorm2[:, None]) / norm2[:, None] ** 2)
    return np.stack(columns, axis=-1), np.stack(derivatives, axis=-1), norm2


def erf_derivative(seg: PHSegment, xi: XiLike) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Rotation matrix R = [e1, e2, e3] and its analytic derivative with respect to xi."""
    rotation, d_rotation, _ = _frame_and_derivative(seg, xi)
    if np.ndim(xi) == 0:
        return rotation[0], d_rotation[0]
    return rotation, d_rotation


def erf(seg: PHSegment, xi: XiLike) -> FrameSample:
    """Euler-Rodrigues frame, angular velocity per unit xi and parametric speed."""
    rotation, d_rotation, norm2 = _frame_and_derivative(seg, xi)
    e1, e2, e3 = (rotation[..., i] for i in range(3))
    de1, de2, de3 = (d_rotation[..., i] for i in range(3))
    chi = np.stack(
        [np.sum(de2 * e3, axis=-1), np.sum(de3 * e1, axis=-1), np.sum(de1 * e2, axis=-1)],
        axis=-1,
    )
    omega = np.einsum("mij,mj->mi", rotation, chi)
    if np.ndim(xi) == 0:
        return FrameSample(rotation[0], omega[0], norm2[0])
    return FrameSample(rotation, omega, norm2)


def geometry(seg: PHSegment, xi: XiLike) -> GeometrySample:
    """Arc length from 0, curvature and torsion at xi."""
    d1 = np.atleast_2d(seg.evaluate(xi, 1))
    d2 = np.atleast_2d(seg.evaluate(xi, 2))
    d3 = np.atleast_2d(seg.evaluate(xi, 3))
    speed = np.linalg.norm(d1, axis=-1)
    if np.any(speed <= TOL_DEG * seg.preimage_scale**2):
        raise SingularSpeed("parametric speed vanishes; curvature is undefined there")
    binormal = np.cross(d1, d2)
    binormal_norm = np.linalg.norm(binormal, axis=-1)
    kappa = binormal_norm / speed**3
    # kappa * sigma, invariant under scaling of the segment
    defined = binormal_norm > TOL_DEG * speed**2
    safe = np.where(defined, binormal_norm, 1.0)
    tau = np.where(defined, np.sum(binormal * d3, axis=-1) / safe**2, 0.0)
    length = np.atleast_1d(seg.sigma.integral(0.0, xi))
    if np.ndim(xi) == 0:
        return GeometrySample(length[0], kappa[0], tau[0], defined[0])
    return GeometrySample(length, kappa, tau, defined)
