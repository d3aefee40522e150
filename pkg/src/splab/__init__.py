"""Exact computation of restricted partition numbers from conformal-map data.

The package computes λ(N|Q), the number of partitions of N into exactly Q
positive parts, along two independent routes:

* an exact analytic route: ε-ordered products of generalized Schwarzians,
  incomplete Bell polynomials and derivative factors D(n) of a conformal
  map f(z) = h(z)·exp(-i/z), evaluated as truncated Laurent series over
  Gaussian rationals at z = iε, and
* classical combinatorial oracles (a recurrence, a generating-function
  expansion, brute-force enumeration) together with the standard
  floating-point asymptotics.

Every analytic value is cross-checked against the oracles by the test
suite; the ``splab`` CLI exposes the same computations and checks.
"""

from .bell import (
    PoleCancellationError,
    bell_generic,
    bell_of_map,
    complete_bell,
    schwarzian_11,
    schwarzian_compose_check,
    schwarzian_general,
    schwarzian_point_split,
)
from .cache import set_cache_dir
from .conformal import (
    MapSpec,
    builtin_map,
    derivative_ratio,
    h_at_ieps,
    load_map_spec,
    log_derivative,
    resolve_map,
    save_map_spec,
)
from .dfactor import dfactor
from .gaussian import GaussianRational, i_pow
from .laurent import (
    INF,
    LaurentSeries,
    SingularRatioError,
    TruncationInsufficientError,
)
from .oracle import (
    PartitionTable,
    brute_force_partitions,
    dedekind_sum,
    dp_restricted,
    gf_expand,
    hardy_ramanujan,
    rademacher,
)
from .partition import (
    ConventionViolationError,
    TermDescriptor,
    TermValue,
    breakdown_record,
    default_window,
    enumerate_terms,
    epsilon_order,
    evaluate_term,
    lambda_breakdown,
    lambda_cft,
    term_weight,
)

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "i_pow",
    "LaurentSeries",
    "INF",
    "TruncationInsufficientError",
    "SingularRatioError",
    "MapSpec",
    "builtin_map",
    "resolve_map",
    "load_map_spec",
    "save_map_spec",
    "h_at_ieps",
    "log_derivative",
    "derivative_ratio",
    "bell_generic",
    "complete_bell",
    "bell_of_map",
    "schwarzian_11",
    "schwarzian_general",
    "schwarzian_point_split",
    "schwarzian_compose_check",
    "PoleCancellationError",
    "dfactor",
    "TermDescriptor",
    "TermValue",
    "enumerate_terms",
    "term_weight",
    "evaluate_term",
    "epsilon_order",
    "lambda_breakdown",
    "lambda_cft",
    "breakdown_record",
    "default_window",
    "ConventionViolationError",
    "PartitionTable",
    "dp_restricted",
    "gf_expand",
    "brute_force_partitions",
    "hardy_ramanujan",
    "dedekind_sum",
    "rademacher",
    "set_cache_dir",
]
