"""
Quaternion algebra on numpy arrays.

Quaternions are stored as float arrays whose last axis holds the components in
(w, x, y, z) order; vectors (pure quaternions) are stored as arrays whose last
axis holds (x, y, z). All functions broadcast over leading axes.
"""

from typing import Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from Phodcos.errors import DegenerateHodographDirection, DegenerateQuaternion

Quaternion = NDArray[np.float64]
Vector3 = NDArray[np.float64]

TOL_DEG = 1e-9

ONE = np.array([1.0, 0.0, 0.0, 0.0])
I = np.array([0.0, 1.0, 0.0, 0.0])
J = np.array([0.0, 0.0, 1.0, 0.0])
K = np.array([0.0, 0.0, 0.0, 1.0])


def quaternion(w: float, x: float, y: float, z: float) -> Quaternion:
    return np.array([w, x, y, z], dtype=float)


def from_vector(v: ArrayLike) -> Quaternion:
    """Embed vectors as pure quaternions (w = 0)."""
    v = np.asarray(v, dtype=float)
    return np.concatenate([np.zeros(v.shape[:-1] + (1,)), v], axis=-1)


def from_scalar_vector(w: Union[float, ArrayLike], v: ArrayLike) -> Quaternion:
    v = np.asarray(v, dtype=float)
    w = np.broadcast_to(np.asarray(w, dtype=float), v.shape[:-1])
    return np.concatenate([w[..., None], v], axis=-1)


def vec(a: Quaternion) -> Vector3:
    return np.asarray(a)[..., 1:]


def conj(a: Quaternion) -> Quaternion:
    a = np.asarray(a, dtype=float)
    return a * np.array([1.0, -1.0, -1.0, -1.0])


def norm(a: ArrayLike) -> NDArray[np.float64]:
    return np.linalg.norm(np.asarray(a, dtype=float), axis=-1)


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, ax, ay, az = np.moveaxis(a, -1, 0)
    bw, bx, by, bz = np.moveaxis(b, -1, 0)
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def sandwich(a: Quaternion, u: Quaternion, b: Union[Quaternion, None] = None) -> Quaternion:
    """Return a u b* (b defaults to a)."""
    b = a if b is None else b
    return mul(mul(a, u), conj(b))


def star_full(a: Quaternion, b: Quaternion) -> Quaternion:
    """The full quaternion (A i B* + B i A*) / 2; its scalar part vanishes."""
    return 0.5 * (sandwich(a, I, b) + sandwich(b, I, a))


def star(a: Quaternion, b: Quaternion) -> Vector3:
    """Commutative star product A * B, a pure quaternion returned as a vector."""
    return vec(star_full(a, b))


def rot_i(phi: Union[float, ArrayLike]) -> Quaternion:
    """Unit quaternion cos(phi) + i sin(phi)."""
    phi = np.asarray(phi, dtype=float)
    zeros = np.zeros_like(phi)
    return np.stack([np.cos(phi), np.sin(phi), zeros, zeros], axis=-1)


def rotate(q: Quaternion, v: ArrayLike) -> Vector3:
    """Rotate vectors by a unit quaternion: vec(q v q*)."""
    return vec(sandwich(q, from_vector(v)))


def from_axis_angle(axis: ArrayLike, angle: float) -> Quaternion:
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    return from_scalar_vector(np.cos(angle / 2.0), np.sin(angle / 2.0) * axis)


def to_matrix(q: Quaternion) -> NDArray[np.float64]:
    """Rotation matrix of a unit quaternion; columns are the rotated basis vectors."""
    basis = np.eye(3)
    return np.stack([rotate(q, basis[i]) for i in range(3)], axis=-1)


def shortest_arc(u: ArrayLike, target: ArrayLike) -> Quaternion:
    """
    Unit quaternion of the minimal rotation taking the direction of ``u`` onto the
    direction of ``target``.

    In the antiparallel case the rotation is by pi about (0, 1, 0) when that axis is
    perpendicular to ``u``, otherwise about the axis perpendicular to ``u`` closest to it.
    """
    u = np.asarray(u, dtype=float)
    target = np.asarray(target, dtype=float)
    u_hat = u / np.linalg.norm(u)
    t_hat = target / np.linalg.norm(target)
    half = u_hat + t_hat
    if np.linalg.norm(half) <= TOL_DEG:
        axis = np.array([0.0, 1.0, 0.0])
        axis = axis - np.dot(axis, u_hat) * u_hat
        if np.linalg.norm(axis) <= TOL_DEG:
            axis = np.array([0.0, 0.0, 1.0]) - u_hat[2] * u_hat
        return from_axis_angle(axis, np.pi)
    half = half / np.linalg.norm(half)
    q = from_scalar_vector(np.dot(u_hat, half), np.cross(u_hat, half))
    return q / np.linalg.norm(q)


def solve_linear_star(b: Quaternion, a: ArrayLike, tau: float) -> Quaternion:
    """
    Solve X * B = a for X, returning the member of the one-parameter solution
    family selected by ``tau``: X = -(tau + a) B i / |B|^2.
    """
    b = np.asarray(b, dtype=float)
    b_norm = float(norm(b))
    if b_norm <= TOL_DEG:
        raise DegenerateQuaternion(f"|B| = {b_norm:.3e} is below {TOL_DEG:.0e}")
    rhs = from_scalar_vector(tau, a)
    return -mul(mul(rhs, b), I) / b_norm**2


def solve_quadratic_star(a: ArrayLike, phi: float) -> Quaternion:
    """
    Solve X * X = a for X, returning the member of the one-parameter solution
    family selected by ``phi``: X = sqrt|a| (a/|a| + i) / |a/|a| + i| Q(phi).
    """
    a = np.asarray(a, dtype=float)
    a_norm = float(np.linalg.norm(a))
    if a_norm <= TOL_DEG:
        raise DegenerateHodographDirection(f"|a| = {a_norm:.3e} is below {TOL_DEG:.0e}")
    bisector = a / a_norm + np.array([1.0, 0.0, 0.0])
    bisector_norm = float(np.linalg.norm(bisector))
    if bisector_norm <= TOL_DEG:
        raise DegenerateHodographDirection(
            f"a = {a.tolist()} points along -i; the segment must be re-split"
        )
    root = np.sqrt(a_norm) * from_vector(bisector) / bisector_norm
    return mul(root, rot_i(phi))
