# pylint: disable="missing-class-docstring", "missing-function-docstring"
import unittest
from fractions import Fraction

import numpy as np
from numpy.testing import assert_allclose

from Phodcos import coefficients, quat

# (denominator, {(j, k): numerator}) of h_i = sum numerator / denominator * (A_j star A_k)
HODOGRAPH_TABLE = {
    0: (1, {(0, 0): 1}),
    1: (1, {(0, 1): 1}),
    2: (15, {(0, 2): 7, (1, 1): 8}),
    3: (10, {(0, 3): 2, (1, 2): 8}),
    4: (65, {(0, 4): 5, (1, 3): 32, (2, 2): 28}),
    5: (39, {(0, 5): 1, (1, 4): 10, (2, 3): 28}),
    6: (143, {(0, 6): 1, (1, 5): 16, (2, 4): 70, (3, 3): 56}),
    7: (715, {(0, 7): 1, (1, 6): 28, (2, 5): 196, (3, 4): 490}),
    8: (6435, {(0, 8): 1, (1, 7): 64, (2, 6): 784, (3, 5): 3136, (4, 4): 2450}),
    9: (715, {(1, 8): 1, (2, 7): 28, (3, 6): 196, (4, 5): 490}),
    10: (143, {(2, 8): 1, (3, 7): 16, (4, 6): 70, (5, 5): 56}),
    11: (39, {(3, 8): 1, (4, 7): 10, (5, 6): 28}),
    12: (65, {(4, 8): 5, (5, 7): 32, (6, 6): 28}),
    13: (10, {(5, 8): 2, (6, 7): 8}),
    14: (15, {(6, 8): 7, (7, 7): 8}),
    15: (1, {(7, 8): 1}),
    16: (1, {(8, 8): 1}),
}

CP_DENOMINATOR = 112633092
CP_TABLE = {
    (0, 0): 147807, (0, 1): 144540, (0, 2): 61908, (0, 3): 19404,
    (0, 5): -6468, (0, 6): -6300, (0, 7): -3636, (0, 8): -1130,
    (1, 1): 72732, (1, 2): 94248, (1, 3): 38808, (1, 5): -17640,
    (1, 6): -18648, (1, 7): -11336, (1, 8): -3636,
    (2, 2): 40572, (2, 3): 41160, (2, 5): -24696, (2, 6): -28616,
    (2, 7): -18648, (2, 8): -6300,
    (3, 3): 12348, (3, 5): -19208, (3, 6): -24696, (3, 7): -17640, (3, 8): -6468,
    (5, 5): 12348, (5, 6): 41160, (5, 7): 38808, (5, 8): 19404,
    (6, 6): 40572, (6, 7): 94248, (6, 8): 61908,
    (7, 7): 72732, (7, 8): 144540,
    (8, 8): 147807,
}  # fmt: skip

RAW_CP_SAMPLE = {
    (0, 0): 147807, (0, 1): 72270, (1, 0): 72270, (0, 8): -565,
    (1, 2): 47124, (2, 3): 20580, (3, 5): -9604, (5, 3): -9604, (6, 2): -14308,
}  # fmt: skip


class TestHodographWeights(unittest.TestCase):
    def test_merged_weights_match_table(self) -> None:
        for i, terms in enumerate(coefficients.hodograph_weights()):
            denominator, numerators = HODOGRAPH_TABLE[i]
            expected = {key: Fraction(n, denominator) for key, n in numerators.items()}
            self.assertEqual({(j, k): w for j, k, w in terms}, expected, f"h_{i}")

    def test_raw_weights_merge_pairwise(self) -> None:
        for raw, merged in zip(coefficients.raw_hodograph_weights(), coefficients.hodograph_weights()):
            lookup = {(j, k): w for j, k, w in raw}
            for j, k, weight in merged:
                expected = lookup[(j, k)] if j == k else lookup[(j, k)] + lookup[(k, j)]
                self.assertEqual(weight, expected)

    def test_weights_of_each_row_sum_to_one(self) -> None:
        for raw in coefficients.raw_hodograph_weights():
            self.assertEqual(sum(w for _, _, w in raw), 1)

    def test_lemma_weight(self) -> None:
        self.assertEqual(coefficients.lemma_weight(3, 0), Fraction(1, 5))
        self.assertEqual(coefficients.lemma_weight(13, 8), Fraction(1, 5))
        self.assertEqual(coefficients.lemma_weight(7, 4), Fraction(490, 715))
        with self.assertRaises(KeyError):
            coefficients.lemma_weight(2, 5)

    def test_tensor_matches_weights(self) -> None:
        tensor = coefficients.hodograph_tensor()
        self.assertEqual(tensor.shape, (17, 9, 9))
        self.assertAlmostEqual(float(tensor[8, 4, 4]), 2450 / 6435, places=15)
        self.assertAlmostEqual(float(tensor[8, 3, 5]), 3136 / 6435 / 2, places=15)
        self.assertFalse(tensor.flags.writeable)


class TestMiddleControlPoint(unittest.TestCase):
    def test_middle_weight(self) -> None:
        self.assertEqual(coefficients.middle_weight(), Fraction(490, 21879))

    def test_preimage_mean_weights(self) -> None:
        expected = (
            Fraction(1, 442), Fraction(5, 663), Fraction(35, 2431), Fraction(49, 2431),
            Fraction(490, 21879),
            Fraction(49, 2431), Fraction(35, 2431), Fraction(5, 663), Fraction(1, 442),
        )  # fmt: skip
        self.assertEqual(coefficients.preimage_mean_weights(), expected)

    def test_cp_weights_match_table(self) -> None:
        scaled = coefficients.as_integers(coefficients.cp_weights(), CP_DENOMINATOR)
        self.assertEqual({(j, k): n for j, k, n in scaled}, CP_TABLE)

    def test_raw_cp_weights_match_expansion(self) -> None:
        scaled = coefficients.as_integers(coefficients.raw_cp_weights(), CP_DENOMINATOR)
        lookup = {(j, k): n for j, k, n in scaled}
        for key, value in RAW_CP_SAMPLE.items():
            self.assertEqual(lookup[key], value, key)
        self.assertNotIn((4, 0), lookup)

    def test_as_integers_rejects_other_denominators(self) -> None:
        with self.assertRaises(ValueError):
            coefficients.as_integers(coefficients.cp_weights(), 442)

    def test_endpoint_identity(self) -> None:
        # A_p star A_p + c_p equals (490/21879)(p_e - p_b) for any preimage
        rng = np.random.default_rng(21)
        preimage = rng.normal(size=(9, 4))
        stars = quat.star(preimage[:, None, :], preimage[None, :, :])
        hodograph = np.einsum("ijk,jkc->ic", coefficients.hodograph_tensor(), stars)
        displacement = hodograph.sum(axis=0) / coefficients.PATH_DEGREE
        mu = np.array([float(w) for w in coefficients.preimage_mean_weights()])
        mean = mu @ preimage
        c_p = np.einsum("jk,jkc->c", coefficients.cp_matrix(), stars)
        assert_allclose(
            quat.star(mean, mean) + c_p, 490 / 21879 * displacement, rtol=1e-12, atol=1e-14
        )


if __name__ == "__main__":
    unittest.main()
