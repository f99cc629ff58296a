"""Tests for the moment-based Laplace transform oracle."""

import random
from fractions import Fraction as Q
from math import factorial

import pytest

from latval.geometry import (NotFullDimensional, hull_normalize,
                             scale_polygon, split_pairs)
from latval.group import AffineUnimodular, act_on_polygon, act_on_series, det
from latval.laplace import laplace_plus, polygon_moments, triangle_moment
from latval.series import Series2
from latval.valuation import ValuationSpec, z_polygon

T = hull_normalize([(0, 0), (1, 0), (0, 1)])
SQUARE = hull_normalize([(0, 0), (1, 0), (0, 1), (1, 1)])

CORPUS = [
    T, scale_polygon(T, 2), scale_polygon(T, 3), SQUARE,
    scale_polygon(SQUARE, 2),
    hull_normalize([(0, 0), (2, 0), (0, 2), (0, 1)]),
    hull_normalize([(0, 0), (3, 0), (1, 2), (0, 2)]),
    hull_normalize([(0, 0), (2, 1), (3, 3), (1, 3), (-1, 1)]),
    hull_normalize([(0, 0), (4, 1), (2, 3)]),
    hull_normalize([(1, 1), (3, 2), (2, 4)]),
]


def test_triangle_moment():
    assert triangle_moment(0, 0) == Q(1, 2)
    assert triangle_moment(1, 0) == Q(1, 6)
    assert triangle_moment(1, 1) == Q(1, 24)
    assert triangle_moment(a=2, b=3) == Q(factorial(2) * factorial(3),
                                          factorial(7))
    with pytest.raises(ValueError):
        triangle_moment(-1, 0)


def test_polygon_moments_T():
    table = polygon_moments(T, 5)
    for a in range(6):
        for b in range(6 - a):
            assert table.moment(a, b) == triangle_moment(a, b)


def test_polygon_moments_square_separable():
    table = polygon_moments(SQUARE, 6)
    for a in range(7):
        for b in range(7 - a):
            assert table.moment(a, b) == Q(1, (a + 1) * (b + 1))


def test_moment_zero_is_area():
    from latval.geometry import area2
    for P in CORPUS:
        assert polygon_moments(P, 0).moment(0, 0) == Q(area2(P), 2)


def test_moments_triangulation_independent():
    for P in CORPUS:
        a = polygon_moments(P, 6, "lex")
        b = polygon_moments(P, 6, "alt")
        assert a.values == b.values


def test_laplace_plus_T_coefficients():
    lp = laplace_plus(T, 9)
    for a in range(10):
        for b in range(10 - a):
            assert lp.coeff(a, b) == Q(1, factorial(a + b + 2))


def test_laplace_plus_vanishes_on_lower_dims():
    assert laplace_plus(hull_normalize([(0, 0), (3, 1)]), 8).is_zero()
    assert laplace_plus(hull_normalize([(2, 2)]), 8).is_zero()


def test_minus_two_dilativity():
    for m in (2, 3):
        for P in (T, SQUARE):
            lhs = laplace_plus(scale_polygon(P, m), 10)
            rhs = laplace_plus(P, 10).scale_variables(m).scalar_mul(m * m)
            assert lhs == rhs


def test_additivity_on_splits():
    for P in CORPUS:
        try:
            pairs = split_pairs(P, 3)
        except Exception:
            continue
        whole = laplace_plus(P, 8)
        for P1, P2 in pairs:
            assert whole == laplace_plus(P1, 8) + laplace_plus(P2, 8)


def test_equivariance():
    rng = random.Random(17)
    xis = []
    while len(xis) < 5:
        m = tuple(tuple(rng.randint(-2, 2) for _ in range(2)) for _ in range(2))
        if abs(det(m)) == 1:
            xis.append(AffineUnimodular(m, (rng.randint(-2, 2),
                                            rng.randint(-2, 2))))
    for xi in xis:
        for P in (T, SQUARE):
            lhs = laplace_plus(act_on_polygon(xi, P), 9)
            rhs = act_on_series(xi, laplace_plus(P, 9))
            assert lhs == rhs


def test_oracle_identity_with_engine():
    spec = ValuationSpec(0, None, Series2.constant(1, 12), 12)
    for P in CORPUS:
        assert z_polygon(spec, P) == laplace_plus(P, 11)


def test_requires_full_dimension():
    with pytest.raises(NotFullDimensional):
        polygon_moments(hull_normalize([(0, 0), (1, 0)]), 4)
