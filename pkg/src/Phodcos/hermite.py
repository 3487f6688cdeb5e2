"""C4 Hermite interpolation by degree-17 PH segments."""

from dataclasses import dataclass, field, fields, replace
from logging import getLogger
from typing import Iterator, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from Phodcos import quat
from Phodcos.coefficients import (
    MIDDLE,
    PREIMAGE_DEGREE,
    cp_matrix,
    hodograph_weights,
    lemma_weight,
    middle_weight,
    preimage_mean_weights,
)
from Phodcos.errors import DegenerateVelocitySum, InterpolationResidual
from Phodcos.phcurve import PHSegment
from Phodcos.quat import TOL_DEG

logger = getLogger(__name__)

RESIDUAL_RTOL = 1e-9

# k-th derivative of a degree-16 Bernstein polynomial at xi = 0 is
# FALLING[k] * sum (-1)^(k-i) C(k, i) h_i
FALLING = (1, 16, 240, 3360)


def _vector(value: ArrayLike) -> NDArray[np.float64]:
    array = np.array(value, dtype=float)
    if array.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError(f"non-finite component in {array.tolist()}")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class RigidTransform:
    """Rotation by a unit quaternion followed by a translation."""

    rotation: NDArray[np.float64] = field(default_factory=quat.ONE.copy)
    translation: NDArray[np.float64] = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self) -> None:
        rotation = np.array(self.rotation, dtype=float)
        rotation = rotation / np.linalg.norm(rotation)
        object.__setattr__(self, "rotation", rotation)
        object.__setattr__(self, "translation", _vector(self.translation))

    @classmethod
    def from_axis_angle(
        cls, axis: ArrayLike, angle: float, translation: ArrayLike = (0.0, 0.0, 0.0)
    ) -> "RigidTransform":
        return cls(quat.from_axis_angle(axis, angle), np.asarray(translation, dtype=float))

    def apply_vector(self, v: ArrayLike) -> NDArray[np.float64]:
        return quat.rotate(self.rotation, v)

    def apply_point(self, p: ArrayLike) -> NDArray[np.float64]:
        return quat.rotate(self.rotation, p) + self.translation

    def inverse(self) -> "RigidTransform":
        inverse_rotation = quat.conj(self.rotation)
        return RigidTransform(inverse_rotation, -quat.rotate(inverse_rotation, self.translation))

    def compose(self, inner: "RigidTransform") -> "RigidTransform":
        """The transform applying ``inner`` first and then ``self``."""
        return RigidTransform(
            quat.mul(self.rotation, inner.rotation), self.apply_point(inner.translation)
        )


@dataclass(frozen=True, eq=False)
class HermiteC4Data:
    """
    Position and derivatives 1-4 at both ends of a segment, with respect to the
    local parameter (an order-k derivative carries the factor h^k of the segment width).
    """

    p_b: NDArray[np.float64]
    p_e: NDArray[np.float64]
    v_b: NDArray[np.float64]
    v_e: NDArray[np.float64]
    a_b: NDArray[np.float64]
    a_e: NDArray[np.float64]
    j_b: NDArray[np.float64]
    j_e: NDArray[np.float64]
    s_b: NDArray[np.float64]
    s_e: NDArray[np.float64]

    def __post_init__(self) -> None:
        for item in fields(self):
            object.__setattr__(self, item.name, _vector(getattr(self, item.name)))

    @classmethod
    def from_derivatives(cls, begin: ArrayLike, end: ArrayLike) -> "HermiteC4Data":
        """Build from two (5, 3) arrays holding derivatives 0-4 at each end."""
        b = np.asarray(begin, dtype=float)
        e = np.asarray(end, dtype=float)
        return cls(b[0], e[0], b[1], e[1], b[2], e[2], b[3], e[3], b[4], e[4])

    @property
    def begin(self) -> NDArray[np.float64]:
        return np.stack([self.p_b, self.v_b, self.a_b, self.j_b, self.s_b])

    @property
    def end(self) -> NDArray[np.float64]:
        return np.stack([self.p_e, self.v_e, self.a_e, self.j_e, self.s_e])

    def __iter__(self) -> Iterator[NDArray[np.float64]]:
        return (getattr(self, item.name) for item in fields(self))

    @property
    def scale(self) -> float:
        return float(max(np.linalg.norm(v) for v in self))

    def transformed(self, transform: RigidTransform) -> "HermiteC4Data":
        vectors = {
            item.name: transform.apply_vector(getattr(self, item.name))
            for item in fields(self)
            if not item.name.startswith("p_")
        }
        return replace(
            self,
            p_b=transform.apply_point(self.p_b),
            p_e=transform.apply_point(self.p_e),
            **vectors,
        )

    def reversed(self) -> "HermiteC4Data":
        """Data of the reversed curve xi -> 1 - xi: ends swap, odd derivatives flip sign."""
        sign = np.array([1.0, -1.0, 1.0, -1.0, 1.0])[:, None]
        return HermiteC4Data.from_derivatives(sign * self.end, sign * self.begin)


@dataclass(frozen=True)
class InterpolantParams:
    """
    Free parameters of the interpolant family. The all-zero default is the
    order-6 interpolant; theta4 is kept for exercising the solution family.
    """

    theta0: float = 0.0
    tau1: float = 0.0
    tau2: float = 0.0
    tau3: float = 0.0
    theta4: float = 0.0
    tau5: float = 0.0
    tau6: float = 0.0
    tau7: float = 0.0
    theta8: float = 0.0

    def tau(self, index: int) -> float:
        return float(getattr(self, f"tau{index}"))


def to_standard_form(d: HermiteC4Data) -> Tuple[HermiteC4Data, RigidTransform]:
    """
    Move the data so that p_b = 0 and v_b + v_e is a positive multiple of i.

    The returned transform maps standard-form data back to the original pose.
    """
    velocity_sum = d.v_b + d.v_e
    if np.linalg.norm(velocity_sum) <= TOL_DEG:
        raise DegenerateVelocitySum("v_b + v_e vanishes; the segment must be re-split")
    to_standard = RigidTransform(quat.shortest_arc(velocity_sum, [1.0, 0.0, 0.0]))
    to_standard = to_standard.compose(RigidTransform(translation=-d.p_b))
    return d.transformed(to_standard), to_standard.inverse()


def boundary_hodograph_points(
    d: HermiteC4Data,
) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Hodograph control points fixed by the boundary derivatives:
    (h0, h1, h2, h3) and (h13, h14, h15, h16).
    """
    h0 = d.v_b
    h1 = h0 + d.a_b / FALLING[1]
    h2 = d.j_b / FALLING[2] - h0 + 2.0 * h1
    h3 = d.s_b / FALLING[3] + h0 - 3.0 * h1 + 3.0 * h2
    h16 = d.v_e
    h15 = h16 - d.a_e / FALLING[1]
    h14 = d.j_e / FALLING[2] - h16 + 2.0 * h15
    h13 = h16 - 3.0 * h15 + 3.0 * h14 - d.s_e / FALLING[3]
    return np.stack([h0, h1, h2, h3]), np.stack([h13, h14, h15, h16])


def check_interpolation(seg: PHSegment, d: HermiteC4Data) -> float:
    """Largest deviation of the segment's boundary derivatives 0-4 from the data, relative to its scale."""
    begin = np.stack([seg.evaluate(0.0, order) for order in range(5)])
    end = np.stack([seg.evaluate(1.0, order) for order in range(5)])
    deviation = max(
        np.max(np.linalg.norm(begin - d.begin, axis=-1)),
        np.max(np.linalg.norm(end - d.end, axis=-1)),
    )
    return float(deviation / max(d.scale, TOL_DEG))


def _known_terms(preimage: NDArray[np.float64], i: int, unknown: Tuple[int, int]) -> NDArray[np.float64]:
    total = np.zeros(3)
    for j, k, weight in hodograph_weights()[i]:
        if (j, k) != unknown:
            total += float(weight) * quat.star(preimage[j], preimage[k])
    return total


def c4_interpolate(d: HermiteC4Data, params: InterpolantParams = InterpolantParams()) -> PHSegment:
    """The PH segment interpolating all ten boundary vectors of ``d``."""
    standard, back = to_standard_form(d)
    head, tail = boundary_hodograph_points(standard)
    h = {0: head[0], 1: head[1], 2: head[2], 3: head[3]}
    h.update({13: tail[0], 14: tail[1], 15: tail[2], 16: tail[3]})

    n = PREIMAGE_DEGREE
    preimage = np.zeros((n + 1, 4))
    preimage[0] = quat.solve_quadratic_star(h[0], params.theta0)
    preimage[n] = quat.solve_quadratic_star(h[2 * n], params.theta8)
    for k in range(1, MIDDLE):
        # h_k holds the only A_0 star A_k term; h_(16-k) the only A_(8-k) star A_8 term
        rhs = (h[k] - _known_terms(preimage, k, (0, k))) / float(lemma_weight(k, 0))
        preimage[k] = quat.solve_linear_star(preimage[0], rhs, params.tau(k))
        m, i = n - k, 2 * n - k
        rhs = (h[i] - _known_terms(preimage, i, (m, n))) / float(lemma_weight(i, n))
        preimage[m] = quat.solve_linear_star(preimage[n], rhs, params.tau(m))

    stars = quat.star(preimage[:, None, :], preimage[None, :, :])
    c_p = np.einsum("jk,jkc->c", cp_matrix(), stars)
    rhs = float(middle_weight()) * (standard.p_e - standard.p_b) - c_p
    mean = quat.solve_quadratic_star(rhs, params.theta4)
    mu = np.array([float(w) for w in preimage_mean_weights()])
    others = np.einsum("j,jc->c", np.delete(mu, MIDDLE), np.delete(preimage, MIDDLE, axis=0))
    preimage[MIDDLE] = (mean - others) / mu[MIDDLE]
    logger.debug(f"standard-form preimage: {preimage.tolist()}")

    standard_segment = PHSegment(preimage, standard.p_b)
    residual = check_interpolation(standard_segment, standard)
    if residual > RESIDUAL_RTOL:
        raise InterpolationResidual(
            f"boundary data reproduced only to {residual:.3e} (tolerance {RESIDUAL_RTOL:.0e})"
        )
    return standard_segment.rotated(back.rotation, back.translation)
