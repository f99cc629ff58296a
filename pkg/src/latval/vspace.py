"""Exact solver for the homogeneous-degree-d parameter spaces.

A degree-d homogeneous polynomial rho(x, y) = sum_k a_k x^{d-k} y^k is a
valid parameter exactly when it satisfies the two linear laws

    (A')  (x + y) rho(x, y - x) = y rho(x, y) + x rho(y, x)
    (E)   rho(x, -2x - y) = rho(x, y)

The space is computed as the kernel of the stacked coefficient matrix over
Q, with a canonical reduced-echelon basis in the monomial order
x^d > x^{d-1} y > ... > y^d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .series import Series2, homogeneous_part

Q = Fraction


def monomials(d: int):
    """Degree-d monomial exponents, leading in x first."""
    return [(d - k, k) for k in range(d + 1)]


def from_coefficients(coeffs, d: int, order=None) -> Series2:
    """Build the homogeneous polynomial sum_k coeffs[k] x^{d-k} y^k."""
    if order is None:
        order = d
    return Series2({(d - k, k): c for k, c in enumerate(coeffs)}, order)


def to_coefficients(rho: Series2, d: int):
    return [rho.coeff(d - k, k) for k in range(d + 1)]


def constraint_matrix(d: int):
    """Rows: one per residual coefficient of (A') in degree d + 1 and of
    (E) in degree d; columns: the d + 1 monomial coefficients."""
    rows = []
    for k in range(d + 1):
        basis = from_coefficients([Q(int(i == k)) for i in range(d + 1)], d)
        # (A') residual, homogeneous of degree d + 1
        lhs = basis.subst_linear((1, 0), (-1, 1)).mul_linear(1, 1)
        rhs = basis.mul_linear(0, 1) \
            + basis.subst_linear((0, 1), (1, 0)).mul_linear(1, 0)
        res_a = lhs - rhs
        # (E) residual, homogeneous of degree d
        res_e = basis.subst_linear((1, 0), (-2, -1)) - basis
        col = [res_a.coeff(d + 1 - j, j) for j in range(d + 2)]
        col += [res_e.coeff(d - j, j) for j in range(d + 1)]
        rows.append(col)
    # rows currently hold columns; transpose
    return [list(r) for r in zip(*rows)]


@dataclass(frozen=True)
class VdBasis:
    degree: int
    vectors: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def polynomials(self, order=None):
        return [from_coefficients(v, self.degree, order) for v in self.vectors]


def vd_basis(d: int) -> VdBasis:
    """Canonical basis of the degree-d solution space."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    mat = constraint_matrix(d)
    kernel = linalg.nullspace(mat, d + 1)
    return VdBasis(d, tuple(tuple(v) for v in kernel))


def predicted_dim(d: int) -> int:
    """Closed-form dimension: 0 for odd d; for even d it is
    floor(d/12) + 1 unless d = 2 mod 12, where it is floor(d/12)."""
    if d % 2 == 1:
        return 0
    if d % 12 == 2:
        return d // 12
    return d // 12 + 1


def dims_table(d_max: int):
    """[(d, computed, predicted)] for d = 0..d_max."""
    out = []
    for d in range(d_max + 1):
        out.append((d, vd_basis(d).dim, predicted_dim(d)))
    return out


def is_solution(rho: Series2) -> bool:
    """Whether a (not necessarily homogeneous) series satisfies (A') and (E)
    up to its valid order."""
    lhs = rho.subst_linear((1, 0), (-1, 1)).mul_linear(1, 1)
    rhs = rho.mul_linear(0, 1) + rho.subst_linear((0, 1), (1, 0)).mul_linear(1, 0)
    if not lhs.eq_up_to(rhs):
        return False
    return rho.subst_linear((1, 0), (-2, -1)).eq_up_to(rho)


def homogeneous_solution_components(rho: Series2):
    """Split a solution series into its homogeneous degree parts, each of
    which is itself a solution; returns [(d, coefficient vector)]."""
    out = []
    for d in range(rho.order + 1):
        part = homogeneous_part(rho, d)
        if not part.is_zero():
            out.append((d, tuple(to_coefficients(part, d))))
    return out


# ---------------------------------------------------------------------------
# the (s, t)-coordinate picture


def st_constraint_matrix(d: int):
    """Constraints on sigma(s, t) of degree d: the transported law

        (A'')  (s + t) sigma(s + t, t - s) = s sigma(s + 2t, s)
                                             + t sigma(2s + t, t)

    together with the reflection invariances sigma(s, t) = sigma(s, -t)
    and sigma(s, t) = sigma(-t, -s)."""
    rows = []
    for k in range(d + 1):
        basis = from_coefficients([Q(int(i == k)) for i in range(d + 1)], d)
        lhs = basis.subst_linear((1, 1), (-1, 1)).mul_linear(1, 1)
        rhs = basis.subst_linear((1, 2), (1, 0)).mul_linear(1, 0) \
            + basis.subst_linear((2, 1), (0, 1)).mul_linear(0, 1)
        res_a = lhs - rhs
        res_1 = basis.subst_linear((1, 0), (0, -1)) - basis
        res_2 = basis.subst_linear((0, -1), (-1, 0)) - basis
        col = [res_a.coeff(d + 1 - j, j) for j in range(d + 2)]
        col += [res_1.coeff(d - j, j) for j in range(d + 1)]
        col += [res_2.coeff(d - j, j) for j in range(d + 1)]
        rows.append(col)
    return [list(r) for r in zip(*rows)]


def st_basis(d: int) -> VdBasis:
    """Canonical basis in the (s, t) coordinates s = 2x + y, t = y."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    kernel = linalg.nullspace(st_constraint_matrix(d), d + 1)
    return VdBasis(d, tuple(tuple(v) for v in kernel))
