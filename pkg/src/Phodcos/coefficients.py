"""
Exact coefficient tables for degree-8 preimages.

The hodograph of a preimage A(xi) = sum A_j B_j^8(xi) is the Bernstein product
A(xi) i A*(xi), so every hodograph control point is a rational combination of the
products A_j i A_k*. The tables below are derived from that product rule with
``fractions.Fraction`` and are the single source of the constants used by
``phcurve`` and ``hermite``.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Tuple

import numpy as np
from numpy.typing import NDArray

PREIMAGE_DEGREE = 8
HODOGRAPH_DEGREE = 2 * PREIMAGE_DEGREE
PATH_DEGREE = HODOGRAPH_DEGREE + 1
MIDDLE = PREIMAGE_DEGREE // 2

Term = Tuple[int, int, Fraction]


def _product_weight(j: int, k: int) -> Fraction:
    n = PREIMAGE_DEGREE
    return Fraction(comb(n, j) * comb(n, k), comb(2 * n, j + k))


@lru_cache(maxsize=None)
def raw_hodograph_weights() -> Tuple[Tuple[Term, ...], ...]:
    """For each h_i, the terms (j, k, w) of w * A_j i A_k* over ordered pairs j + k = i."""
    n = PREIMAGE_DEGREE
    return tuple(
        tuple(
            (j, i - j, _product_weight(j, i - j))
            for j in range(max(0, i - n), min(i, n) + 1)
        )
        for i in range(HODOGRAPH_DEGREE + 1)
    )


@lru_cache(maxsize=None)
def hodograph_weights() -> Tuple[Tuple[Term, ...], ...]:
    """For each h_i, the terms (j, k, w) of w * (A_j star A_k) with j <= k."""
    tables = []
    for raw in raw_hodograph_weights():
        merged: Dict[Tuple[int, int], Fraction] = {}
        for j, k, weight in raw:
            key = (min(j, k), max(j, k))
            merged[key] = merged.get(key, Fraction(0)) + weight
        tables.append(tuple((j, k, w) for (j, k), w in sorted(merged.items())))
    return tuple(tables)


def lemma_weight(i: int, j: int) -> Fraction:
    """Weight of A_j star A_(i-j) inside h_i."""
    lo, hi = min(j, i - j), max(j, i - j)
    for a, b, weight in hodograph_weights()[i]:
        if (a, b) == (lo, hi):
            return weight
    raise KeyError(f"h_{i} has no A_{lo} star A_{hi} term")


@lru_cache(maxsize=None)
def _endpoint_gram() -> Dict[Tuple[int, int], Fraction]:
    """Coefficients of A_j i A_k* in p_e - p_b = (1/17) sum h_i."""
    gram: Dict[Tuple[int, int], Fraction] = {}
    for raw in raw_hodograph_weights():
        for j, k, weight in raw:
            gram[(j, k)] = gram.get((j, k), Fraction(0)) + weight / PATH_DEGREE
    return gram


@lru_cache(maxsize=None)
def middle_weight() -> Fraction:
    """The factor 490/21879 multiplying p_e - p_b in the A_4 equation."""
    return _endpoint_gram()[(MIDDLE, MIDDLE)]


@lru_cache(maxsize=None)
def preimage_mean_weights() -> Tuple[Fraction, ...]:
    """Weights mu_j of A_p = sum mu_j A_j, the quantity whose star square fixes A_4."""
    gram = _endpoint_gram()
    w = middle_weight()
    return tuple(
        w * gram[(j, MIDDLE)] / gram[(MIDDLE, MIDDLE)] for j in range(PREIMAGE_DEGREE + 1)
    )


@lru_cache(maxsize=None)
def raw_cp_weights() -> Tuple[Term, ...]:
    """
    Terms (j, k, w) of c_p = sum w * A_j i A_k* over ordered pairs with j, k != 4,
    so that A_p star A_p = (490/21879)(p_e - p_b) - c_p.
    """
    gram = _endpoint_gram()
    w = middle_weight()
    g44 = gram[(MIDDLE, MIDDLE)]
    terms = []
    others = [j for j in range(PREIMAGE_DEGREE + 1) if j != MIDDLE]
    for j in others:
        for k in others:
            weight = w * (gram[(j, k)] - gram[(j, MIDDLE)] * gram[(k, MIDDLE)] / g44)
            if weight != 0:
                terms.append((j, k, weight))
    return tuple(terms)


@lru_cache(maxsize=None)
def cp_weights() -> Tuple[Term, ...]:
    """Terms (j, k, w) of c_p = sum w * (A_j star A_k) with j <= k."""
    merged: Dict[Tuple[int, int], Fraction] = {}
    for j, k, weight in raw_cp_weights():
        key = (min(j, k), max(j, k))
        merged[key] = merged.get(key, Fraction(0)) + weight
    return tuple((j, k, w) for (j, k), w in sorted(merged.items()) if w != 0)


def pair_tensor(terms_per_row: Tuple[Tuple[Term, ...], ...]) -> NDArray[np.float64]:
    """Dense float tensor T[row, j, k] from ordered-pair terms, for einsum contraction."""
    size = PREIMAGE_DEGREE + 1
    tensor = np.zeros((len(terms_per_row), size, size))
    for row, terms in enumerate(terms_per_row):
        for j, k, weight in terms:
            tensor[row, j, k] += float(weight)
    return tensor


@lru_cache(maxsize=None)
def hodograph_tensor() -> NDArray[np.float64]:
    tensor = pair_tensor(raw_hodograph_weights())
    tensor.setflags(write=False)
    return tensor


@lru_cache(maxsize=None)
def cp_matrix() -> NDArray[np.float64]:
    tensor = pair_tensor((raw_cp_weights(),))[0]
    tensor.setflags(write=False)
    return tensor


def as_integers(terms: Tuple[Term, ...], denominator: int) -> List[Tuple[int, int, int]]:
    """Scale weights by a common denominator, for comparison with printed tables."""
    scaled = []
    for j, k, weight in terms:
        value = weight * denominator
        if value.denominator != 1:
            raise ValueError(f"weight {weight} of ({j}, {k}) is not a multiple of 1/{denominator}")
        scaled.append((j, k, int(value)))
    return scaled
