"""Exact combinatorics behind Type IV superorthogonality.

Chain-parity coefficients on the set-partition lattice, the identity that
trades distinct sums for independent ones, the formal constant of the
direct square-function inequality, and frequency-level tests of s-Type IV
superorthogonality.
"""
from .chains import (
    ChainStats,
    CoefficientValue,
    count_chains,
    d_closed_form,
    d_general,
    d_good_pair,
    d_recursion,
)
from .constants import (
    compute_c_alphas,
    exact_root_constant,
    paper_bound_constant,
    prior_constant,
    reciprocal_type_sum,
    verify_coeff_root_bounds,
)
from .errors import BudgetExceeded, DomainError
from .frequencies import (
    FrequencyFamily,
    build_example_family,
    check_s_type_iv,
    find_additive_structure,
    tuple_vanishes,
    verify_example_properties,
)
from .identity import (
    ConjugationPattern,
    GaussianRational,
    ScalarFamily,
    distinct_sum,
    verify_first_step,
    verify_identity,
    verify_identity_tensor,
    weighted_rhs,
)
from .partitions import (
    PartitionType,
    SetPartition,
    count_partitions_of_type,
    enumerate_coarsenings,
    enumerate_set_partitions,
    partition_function,
    partition_function_upper_bound,
    partition_type,
    refines,
)
from .stirling import (
    StirlingTable,
    falling_factorial,
    stirling2,
    verify_alternating_identity,
    verify_factorial_identity,
)

__version__ = "0.1.0"
