"""Bernstein-Bezier polynomials with real, vector or quaternion coefficients."""

from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import comb


@dataclass(frozen=True, eq=False)
class BernsteinPoly:
    """
    Polynomial sum(ctrl[i] * B_i^n(xi)) on [0, 1].

    ``ctrl`` has shape ``(n + 1,) + C`` where ``C`` is the coefficient shape:
    ``()`` for real, ``(3,)`` for vector and ``(4,)`` for quaternion polynomials.
    """

    ctrl: NDArray[np.float64]

    def __post_init__(self) -> None:
        ctrl = np.array(self.ctrl, dtype=float)
        if ctrl.ndim == 0 or ctrl.shape[0] == 0:
            raise ValueError("a Bernstein polynomial needs at least one control point")
        ctrl.setflags(write=False)
        object.__setattr__(self, "ctrl", ctrl)

    @property
    def degree(self) -> int:
        return int(self.ctrl.shape[0]) - 1

    @property
    def coefficient_shape(self) -> tuple:  # type: ignore[type-arg]
        return tuple(self.ctrl.shape[1:])

    def __call__(self, xi: Union[float, ArrayLike]) -> NDArray[np.float64]:
        return self.eval(xi)

    def eval(self, xi: Union[float, ArrayLike]) -> NDArray[np.float64]:
        """
        Evaluate by de Casteljau recursion.

        A scalar ``xi`` returns an array of the coefficient shape; a 1-D array of
        ``m`` parameters returns shape ``(m,) + C``.
        """
        xi_arr = np.asarray(xi, dtype=float)
        scalar = xi_arr.ndim == 0
        t = np.atleast_1d(xi_arr).reshape((-1, 1) + (1,) * len(self.coefficient_shape))
        work = np.broadcast_to(self.ctrl, (t.shape[0],) + self.ctrl.shape)
        for _ in range(self.degree):
            work = (1.0 - t) * work[:, :-1] + t * work[:, 1:]
        values = work[:, 0]
        return values[0] if scalar else values

    def derivative(self, order: int = 1) -> "BernsteinPoly":
        """
        Derivative polynomial; the derivative of a constant is the zero constant.
        """
        poly = self
        for _ in range(order):
            n = poly.degree
            if n == 0:
                poly = BernsteinPoly(np.zeros_like(poly.ctrl))
            else:
                poly = BernsteinPoly(n * np.diff(poly.ctrl, axis=0))
        return poly

    def antiderivative(self) -> "BernsteinPoly":
        """Degree n+1 antiderivative vanishing at xi = 0."""
        n = self.degree
        zero = np.zeros((1,) + self.coefficient_shape)
        cumulative = np.cumsum(self.ctrl, axis=0) / (n + 1)
        return BernsteinPoly(np.concatenate([zero, cumulative], axis=0))

    def integral(
        self, xi_b: Union[float, ArrayLike], xi_e: Union[float, ArrayLike]
    ) -> NDArray[np.float64]:
        """Exact definite integral over [xi_b, xi_e]."""
        primitive = self.antiderivative()
        return primitive.eval(xi_e) - primitive.eval(xi_b)


def basis(n: int, xi: Union[float, ArrayLike]) -> NDArray[np.float64]:
    """Values of B_0^n .. B_n^n at ``xi``; the last axis indexes the basis function."""
    xi_arr = np.asarray(xi, dtype=float)[..., None]
    i = np.arange(n + 1)
    return comb(n, i) * xi_arr**i * (1.0 - xi_arr) ** (n - i)
