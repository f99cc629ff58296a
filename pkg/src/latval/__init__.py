"""Exact-arithmetic toolkit for equivariant valuations on lattice polygons
with values in truncated rational power series."""

from .geometry import LatticePolygon, hull_normalize
from .group import AffineUnimodular
from .laws import LAW_IDS, check_law, dagger, diamond, sharp
from .series import DEFAULT_ORDER, Series1, Series2
from .valuation import ValuationSpec, z_polygon
from .vspace import predicted_dim, st_basis, vd_basis

__all__ = [
    "AffineUnimodular", "DEFAULT_ORDER", "LatticePolygon", "LAW_IDS",
    "Series1", "Series2", "ValuationSpec", "check_law", "dagger", "diamond",
    "hull_normalize", "predicted_dim", "sharp", "st_basis", "vd_basis",
    "z_polygon",
]

__version__ = "0.1.0"
