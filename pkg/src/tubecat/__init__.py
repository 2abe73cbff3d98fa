"""Numerical engine for non-unitary fusion categories and their cylinder spectra."""

from .category import (
    FusionCategory,
    QParams,
    ConsistencyReport,
    CategoryError,
    build_su2k_category,
    build_fibonacci,
    build_trivial,
    integer_subcategory,
    fusion_product,
    quantum_dimension,
    verify_pentagon,
    verify_involution,
)

__version__ = "0.1.0"
