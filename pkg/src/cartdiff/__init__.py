"""Differential and linearizing combinators on executable models.

Five models share one interface (:class:`cartdiff.category.Model`): exact
polynomials, rational matrices, truncated derivative towers, symbolic smooth
terms and a closed model with function values.  The generic constructions
live in :mod:`cartdiff.combinators`, the law catalogue in :mod:`cartdiff.laws`.
"""
from .biproduct import BIPRODUCT
from .category import Model, Slice, over
from .closed import CLOSED
from .combinators import (d_from_system, d_in_context, l_from_d, lc_from_d, partial_pair,
                          total_l_from_system)
from .kernels import BACKEND
from .laws import LawReport, run_law
from .poly import POLY, parse_poly
from .shapes import ONE, R, Hom, Prod, Shape, ShapeError, fmt, parse_shape
from .smooth import SMOOTH, parse_smooth
from .suites import build_laws, select
from .tower import TOWER

__all__ = [
    "BACKEND", "BIPRODUCT", "CLOSED", "Hom", "LawReport", "Model", "ONE", "POLY", "Prod", "R",
    "SMOOTH", "Shape", "ShapeError", "Slice", "TOWER", "build_laws", "d_from_system",
    "d_in_context", "fmt", "l_from_d", "lc_from_d", "over", "parse_poly", "parse_shape",
    "parse_smooth", "partial_pair", "run_law", "select", "total_l_from_system",
]
