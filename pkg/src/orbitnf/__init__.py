"""Local normal forms of U(n) acting on U(n+1) coadjoint orbits."""

__version__ = "0.1.0"

from .exactmath import PolyQ, poly_arith, poly_eq, poly_eval, poly_from_roots, rat_parse
from .normalform import (
    DimReport,
    MgsData,
    compute_c,
    compute_C,
    compute_mgs,
    compute_r_squared,
    dimension_report,
)
from .pattern import (
    InterlacingError,
    InterlacingPattern,
    SpectrumPair,
    build_pattern,
    multiset_stats,
    sum_identity_residual,
    validate_interlacing,
)
from .polytope import enumerate_faces, face_invariants, face_representative
from .realization import (
    HermitianMatrix,
    PointSpec,
    build_point_spec,
    charpoly_rhs,
    membership_check,
    moment_projection,
    reduced_identity_check,
    render_numeric,
)

__all__ = [
    "DimReport",
    "HermitianMatrix",
    "InterlacingError",
    "InterlacingPattern",
    "MgsData",
    "PointSpec",
    "PolyQ",
    "SpectrumPair",
    "build_pattern",
    "build_point_spec",
    "charpoly_rhs",
    "compute_C",
    "compute_c",
    "compute_mgs",
    "compute_r_squared",
    "dimension_report",
    "enumerate_faces",
    "face_invariants",
    "face_representative",
    "membership_check",
    "moment_projection",
    "multiset_stats",
    "poly_arith",
    "poly_eq",
    "poly_eval",
    "poly_from_roots",
    "rat_parse",
    "reduced_identity_check",
    "render_numeric",
    "sum_identity_residual",
    "validate_interlacing",
]
