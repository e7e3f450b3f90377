"""Exact boundary-region optimization for partitions of a finite set.

Given a partition of ``[n]`` into ``m`` blocks, a subset ``X`` has a boundary
region made of the blocks that ``X`` splits.  This package computes the
expected boundary size under three distributions on subsets, finds the block
sizes that minimize or maximize it, and certifies the inequalities behind the
closed-form answers in exact rational arithmetic.
"""

from .certificates import (
    ComparisonSpec,
    InconclusiveError,
    SignCertificate,
    build_q_minus,
    build_r,
    certify_sign,
    inequality_table,
    verify_comparison,
    verify_extension_lemmas,
    verify_monotonicity,
    verify_second_difference,
)
from .partitions import (
    BudgetExceededError,
    IntegerPartition,
    OptResult,
    UnsupportedCaseError,
    brute_force_optima,
    closed_form_optimal,
    enumerate_partitions,
    objective,
    set_level_optimum,
    theorem4_filter,
)
from .poly import RationalPolynomial, count_roots, integrate_01_shifted
from .rough_core import (
    EnumerationCapError,
    ExpectationReport,
    SetPartition,
    SubsetMask,
    az_analogon_sum,
    az_identity_sum,
    boundary,
    expected_boundary_exhaustive,
    lower_approx,
    set_partitions,
    upper_approx,
)
from .weights import (
    ObjectiveProfile,
    ShapeReport,
    WeightSpec,
    big_f,
    big_f_closed,
    f_via_lemma1,
    g_profile,
    lemma_lower_sum,
    lemma_upper_sum,
    normalizer,
    shape_analysis,
    thu_sum,
    weight_value,
)

__version__ = "0.1.0"
