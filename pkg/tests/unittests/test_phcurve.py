# pylint: disable="missing-class-docstring", "missing-function-docstring"
import unittest

import numpy as np
from numpy.testing import assert_allclose
from scipy.integrate import quad

from Phodcos import quat
from Phodcos.errors import SingularSpeed, VanishingPreimage
from Phodcos.phcurve import PHSegment, erf_derivative


def random_segment(seed: int) -> PHSegment:
    rng = np.random.default_rng(seed)
    preimage = rng.normal(size=(9, 4)) + np.array([1.0, 0.5, 0.0, 0.0])
    return PHSegment(preimage, rng.normal(size=3))


def straight_segment() -> PHSegment:
    return PHSegment(np.tile(quat.ONE, (9, 1)), np.zeros(3))


class TestConstruction(unittest.TestCase):
    def test_constant_preimage_gives_straight_line(self) -> None:
        segment = straight_segment()
        assert_allclose(segment.evaluate(0.25), [0.25, 0.0, 0.0], atol=1e-15)
        assert_allclose(segment.end_point, [1.0, 0.0, 0.0], atol=1e-15)
        self.assertAlmostEqual(segment.length, 1.0, places=14)

    def test_rejects_wrong_shape(self) -> None:
        with self.assertRaises(ValueError):
            PHSegment(np.zeros((8, 4)), np.zeros(3))

    def test_hodograph_is_derivative_of_path(self) -> None:
        segment = random_segment(1)
        xi, step = 0.37, 1e-6
        numeric = (segment.evaluate(xi + step) - segment.evaluate(xi - step)) / (2 * step)
        assert_allclose(segment.evaluate(xi, 1), numeric, rtol=1e-7, atol=1e-6)

    def test_ph_condition(self) -> None:
        segment = random_segment(2)
        xi = np.linspace(0.0, 1.0, 100)
        speed = np.linalg.norm(segment.evaluate(xi, 1), axis=-1)
        assert_allclose(speed, segment.sigma(xi), rtol=1e-10)
        assert_allclose(segment.sigma(xi), np.sum(segment.preimage_at(xi) ** 2, axis=-1), rtol=1e-12)

    def test_arc_length_matches_quadrature(self) -> None:
        segment = random_segment(3)
        expected, _ = quad(
            lambda t: float(np.linalg.norm(segment.evaluate(t, 1))), 0.0, 1.0, epsabs=0, epsrel=1e-13
        )
        self.assertAlmostEqual(segment.length / expected, 1.0, places=10)


class TestFrame(unittest.TestCase):
    def test_frame_is_adapted_and_orthonormal(self) -> None:
        segment = random_segment(4)
        xi = np.linspace(0.0, 1.0, 11)
        frame = segment.erf(xi)
        tangent = segment.evaluate(xi, 1)
        tangent /= np.linalg.norm(tangent, axis=-1)[:, None]
        assert_allclose(frame.R[:, :, 0], tangent, atol=1e-12)
        for rotation in frame.R:
            assert_allclose(rotation.T @ rotation, np.eye(3), atol=1e-12)
            self.assertAlmostEqual(float(np.linalg.det(rotation)), 1.0, places=12)

    def test_frame_derivative_matches_finite_differences(self) -> None:
        segment = random_segment(5)
        xi, step = 0.61, 1e-6
        _, derivative = erf_derivative(segment, xi)
        ahead, _ = erf_derivative(segment, xi + step)
        behind, _ = erf_derivative(segment, xi - step)
        assert_allclose(derivative, (ahead - behind) / (2 * step), atol=1e-6)

    def test_angular_velocity_reproduces_frame_derivative(self) -> None:
        segment = random_segment(6)
        rotation, derivative = erf_derivative(segment, 0.42)
        omega = segment.erf(0.42).omega
        for column in range(3):
            assert_allclose(derivative[:, column], np.cross(omega, rotation[:, column]), atol=1e-10)

    def test_vanishing_preimage(self) -> None:
        preimage = np.zeros((9, 4))
        preimage[8] = quat.ONE
        segment = PHSegment(preimage, np.zeros(3))
        with self.assertRaises(VanishingPreimage):
            segment.erf(0.0)
        with self.assertRaises(SingularSpeed):
            segment.geometry(0.0)


class TestGeometry(unittest.TestCase):
    def test_straight_line_has_no_curvature(self) -> None:
        sample = straight_segment().geometry(0.5)
        self.assertAlmostEqual(float(sample.L), 0.5, places=14)
        self.assertAlmostEqual(float(sample.kappa), 0.0, places=14)
        self.assertFalse(bool(sample.torsion_defined))
        self.assertEqual(float(sample.tau), 0.0)

    def test_curvature_and_torsion_match_finite_differences(self) -> None:
        segment = random_segment(7)
        xi, step = 0.3, 1e-5
        sample = segment.geometry(xi)

        def tangent(t: float) -> np.ndarray:
            d1 = segment.evaluate(t, 1)
            return d1 / np.linalg.norm(d1)

        speed = np.linalg.norm(segment.evaluate(xi, 1))
        d_tangent = (tangent(xi + step) - tangent(xi - step)) / (2 * step)
        kappa = float(sample.kappa)
        self.assertAlmostEqual(np.linalg.norm(d_tangent) / speed, kappa, delta=1e-6 * max(1.0, kappa))

        def binormal(t: float) -> np.ndarray:
            b = np.cross(segment.evaluate(t, 1), segment.evaluate(t, 2))
            return b / np.linalg.norm(b)

        normal = np.cross(binormal(xi), tangent(xi))
        d_binormal = (binormal(xi + step) - binormal(xi - step)) / (2 * step)
        tau = float(sample.tau)
        self.assertAlmostEqual(-(d_binormal @ normal) / speed, tau, delta=1e-5 * max(1.0, abs(tau)))

    def test_small_segment_keeps_its_torsion(self) -> None:
        segment = random_segment(7)
        small = PHSegment(segment.preimage * 1e-3, segment.p0 * 1e-6)
        xi = np.array([0.1, 0.5, 0.9])
        sample = segment.geometry(xi)
        scaled = small.geometry(xi)
        self.assertTrue(bool(np.all(sample.torsion_defined)))
        self.assertTrue(bool(np.all(scaled.torsion_defined)))
        assert_allclose(scaled.kappa, sample.kappa * 1e6, rtol=1e-9)
        assert_allclose(scaled.tau, sample.tau * 1e6, rtol=1e-9)
        assert_allclose(scaled.L, sample.L * 1e-6, rtol=1e-9)
        assert_allclose(small.erf(xi).R, segment.erf(xi).R, atol=1e-12)


class TestTransformations(unittest.TestCase):
    def test_fiber_rotation_keeps_path(self) -> None:
        segment = random_segment(8)
        xi = np.linspace(0.0, 1.0, 25)
        assert_allclose(segment.with_fiber_rotation(1.3).evaluate(xi), segment.evaluate(xi), atol=1e-12)
        assert_allclose(segment.negated().evaluate(xi), segment.evaluate(xi), atol=1e-12)

    def test_fiber_rotation_rolls_frame(self) -> None:
        segment = random_segment(9)
        phi = 0.4
        before = segment.erf(0.5).R
        after = segment.with_fiber_rotation(phi).erf(0.5).R
        expected = np.cos(2 * phi) * before[:, 1] + np.sin(2 * phi) * before[:, 2]
        assert_allclose(after[:, 1], expected, atol=1e-12)

    def test_rotated_moves_path_rigidly(self) -> None:
        segment = random_segment(10)
        q = quat.from_axis_angle([0.0, 1.0, 0.0], np.pi / 2)
        moved = segment.rotated(q, [-1.0, 0.0, 2.5])
        xi = np.linspace(0.0, 1.0, 9)
        expected = quat.rotate(q, segment.evaluate(xi)) + np.array([-1.0, 0.0, 2.5])
        assert_allclose(moved.evaluate(xi), expected, atol=1e-12)

    def test_reversed_traverses_backwards(self) -> None:
        segment = random_segment(11)
        backward = segment.reversed()
        xi = np.linspace(0.0, 1.0, 13)
        assert_allclose(backward.evaluate(1.0 - xi), segment.evaluate(xi), atol=1e-12)
        assert_allclose(backward.evaluate(1.0 - xi, 1), -segment.evaluate(xi, 1), atol=1e-11)


if __name__ == "__main__":
    unittest.main()
