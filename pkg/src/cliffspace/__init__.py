"""Exact computations with graded Clifford section algebras over families of quadrics."""

from __future__ import annotations

from .clifford import CliffordElement, QuadricFamily, clifford_mul, toric_quadrics, universal_family, zero_family
from .exactla import Subspace, SparseMatrix, annihilator, kernel_basis, rank
from .partitions import SchurMultiset, YoungDiagram, schur_dim
from .quadalg import AlgebraPresentation, HilbertSeries, quotient_table

__version__ = "0.1.0"
