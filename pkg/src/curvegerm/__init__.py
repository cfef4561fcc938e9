"""Exact invariants of parameterized plane-curve singularities.

Two independent channels compute the Milnor number of a germ given by
branch parameterizations: the combinatorial route ``2*delta - r + 1`` (with
delta itself computed twice) and the implicit route ``dim O/(g_x, g_y)``.
An integer ledger evaluates the Euler-characteristic relation for Milnor
fibers of functions on parameterized hypersurfaces.
"""

from __future__ import annotations

from .branches import (
    InvariantReport,
    SemigroupData,
    analyze_germ,
    branch_multiplicity,
    cokernel_dimension,
    delta_branch,
    delta_total,
    intersection_multiplicity,
    milnor_from_delta,
    validate_germ,
    value_semigroup,
)
from .errors import (
    DocumentError,
    GermError,
    InconsistentTableError,
    InvalidGermError,
    NonIsolatedError,
    NotRealizableError,
    OracleUnsupportedError,
    RepeatedComponentError,
    UndeterminedError,
)
from .germ import Branch, CurveGerm, germ
from .ledger import (
    MultiplicityPoint,
    RankProfile,
    StratumTable,
    costalk_profile_I,
    degree_range_check,
    euler_star,
    mu_isolated,
    reduced_hyper_euler,
    stalk_profile_I,
    stalk_profile_N,
    stratum_sum_chi,
    unfolding_mu_plane_curve,
)
from .oracle import implicitize_branch, implicitize_curve, local_algebra_dimension, milnor_implicit
from .series import (
    AtLeast,
    BivarPoly,
    TruncatedSeries,
    UniPolyOverBivar,
    poly_eval_series,
    poly_partial,
    series_arith,
    series_order,
    sylvester_resultant,
)

__version__ = "0.1.0"
