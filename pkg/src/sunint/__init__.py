"""Exact and Monte Carlo moments of Haar-random unitary matrix elements.

The exact layer works over the field of rational functions in the matrix
dimension N: coefficient tables for balanced moments, for the
determinant sector of the special unitary group, and large-N series of
the associated free energies.  The numeric layer draws Haar samples and
cross-checks every exact value statistically.
"""
from .exactmath import (
    N,
    InconsistentSystemError,
    LinearSystemError,
    PolyN,
    RankDeficientError,
    RatFuncN,
    format_poly,
    parse_ratfunc,
    poly_gcd,
    solve_linear_system,
)
from .haar_mc import (
    SPECIAL_UNITARY,
    UNITARY,
    GroupSpec,
    MCEstimate,
    compare,
    estimate_monomial,
    estimate_trace_moment,
    random_source_matrices,
    sample_haar,
)
from .largen import (
    TraceSeries,
    shifted_free_energy_closed,
    shifted_free_energy_fixedpoint,
    shifted_free_energy_from_tables,
    strong_coupling_coeff,
    strong_coupling_series,
)
from .partitions import (
    Partition,
    YoungDiagram,
    catalan,
    character,
    class_size,
    dim_gl,
    dim_sn,
    enumerate_diagrams,
    enumerate_partitions,
)
from .reference import reference_families, reference_table, reference_weights
from .su_shifted import (
    check_shift_identity,
    epsilon_integral,
    eval_shifted,
    shifted_table,
    shifted_table_recursive,
)
from .weingarten import (
    MAX_TENSOR_WEIGHT,
    MAX_WEIGHT,
    CoeffTable,
    SectorError,
    SourceMatrices,
    eval_ordinary,
    monomial_integral,
    weingarten_class_coefficient,
    weingarten_table_character,
    weingarten_table_recursive,
)

__version__ = "0.1.0"

__all__ = [
    "N", "PolyN", "RatFuncN", "poly_gcd", "format_poly", "parse_ratfunc",
    "solve_linear_system", "LinearSystemError", "RankDeficientError",
    "InconsistentSystemError",
    "Partition", "YoungDiagram", "enumerate_partitions",
    "enumerate_diagrams", "class_size", "character", "dim_sn", "dim_gl",
    "catalan",
    "CoeffTable", "SourceMatrices", "SectorError", "MAX_WEIGHT",
    "MAX_TENSOR_WEIGHT", "weingarten_class_coefficient",
    "weingarten_table_character", "weingarten_table_recursive",
    "monomial_integral", "eval_ordinary",
    "epsilon_integral", "shifted_table", "shifted_table_recursive",
    "eval_shifted", "check_shift_identity",
    "TraceSeries", "shifted_free_energy_closed",
    "shifted_free_energy_fixedpoint", "shifted_free_energy_from_tables",
    "strong_coupling_coeff", "strong_coupling_series",
    "GroupSpec", "MCEstimate", "UNITARY", "SPECIAL_UNITARY",
    "sample_haar", "estimate_trace_moment", "estimate_monomial",
    "compare", "random_source_matrices",
    "reference_families", "reference_weights", "reference_table",
]
