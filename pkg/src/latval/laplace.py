"""Exact positive Laplace transform of lattice polygons via moments.

The transform of a polygon P is the entire series

    L(P)(x, y) = sum_{a,b} mu(a, b) / (a! b!) x^a y^b,
    mu(a, b) = integral over P of s^a t^b ds dt.

Moments are computed by triangulating P into unimodular triangles and
pushing the standard-triangle moments forward through each affine frame.
This pipeline is independent of the series engine, which is what makes it
a genuine cross-check for the valuation evaluator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .geometry import (LatticePolygon, NotFullDimensional, area2,
                       unimodular_triangulation)
from .series import DEFAULT_ORDER, Series2

Q = Fraction


def triangle_moment(a: int, b: int) -> Fraction:
    """Moment of s^a t^b over the standard triangle: a! b! / (a+b+2)!."""
    if a < 0 or b < 0:
        raise ValueError("exponents must be non-negative")
    return Q(factorial(a) * factorial(b), factorial(a + b + 2))


@dataclass(frozen=True)
class MomentTable:
    polygon: LatticePolygon
    max_degree: int
    values: dict   # (a, b) -> Fraction

    def moment(self, a: int, b: int) -> Fraction:
        return self.values.get((a, b), Q(0))


def _binomial_powers(v0, c1, c2, n_max):
    """Coefficients of (v0 + c1*u + c2*v)^e in (u, v), for e = 0..n_max."""
    v0, c1, c2 = Q(v0), Q(c1), Q(c2)
    rows = [{(0, 0): Q(1)}]
    for _ in range(n_max):
        prev = rows[-1]
        cur = {}
        for (i, j), c in prev.items():
            for (di, dj, f) in ((0, 0, v0), (1, 0, c1), (0, 1, c2)):
                if f != 0:
                    e = (i + di, j + dj)
                    cur[e] = cur.get(e, Q(0)) + c * f
        rows.append(cur)
    return rows


def polygon_moments(P: LatticePolygon, n_max: int,
                    insertion: str = "lex") -> MomentTable:
    """All moments mu(a, b), a + b <= n_max, summed over a unimodular
    triangulation (each frame has Jacobian 1)."""
    if P.dim != 2:
        raise NotFullDimensional(f"dim {P.dim}")
    tri = unimodular_triangulation(P, insertion)
    values = {(a, b): Q(0) for a in range(n_max + 1)
              for b in range(n_max + 1 - a)}
    base = {(i, j): triangle_moment(i, j)
            for i in range(n_max + 1) for j in range(n_max + 1 - i)}
    for t in tri.triangles:
        v0, v1, v2 = tri.triangle_points(t)
        # s = v0x + (v1x - v0x) u + (v2x - v0x) v, same for t-coordinate
        sx = _binomial_powers(v0[0], v1[0] - v0[0], v2[0] - v0[0], n_max)
        sy = _binomial_powers(v0[1], v1[1] - v0[1], v2[1] - v0[1], n_max)
        for (a, b) in values:
            acc = Q(0)
            for (i1, j1), ca in sx[a].items():
                for (i2, j2), cb in sy[b].items():
                    acc += ca * cb * base[(i1 + i2, j1 + j2)]
            values[(a, b)] += acc
    assert values[(0, 0)] == Q(area2(P), 2)
    return MomentTable(P, n_max, values)


def laplace_plus(P: LatticePolygon, order: int = DEFAULT_ORDER,
                 insertion: str = "lex") -> Series2:
    """The transform as a truncated series; zero on points and segments."""
    if P.dim < 2:
        return Series2.zero(order)
    table = polygon_moments(P, order, insertion)
    return Series2({(a, b): v / (factorial(a) * factorial(b))
                    for (a, b), v in table.values.items()}, order)
