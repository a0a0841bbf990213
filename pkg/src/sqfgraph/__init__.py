"""Clique covers and exact verification tooling for the coprimality graph on
squarefree integers."""

__version__ = "0.1.0"

from .arith import (
    CoprimeCount,
    asymptotic_coprime_even_count,
    asymptotic_vertex_count,
    coprime_even_counts,
    count_coprime_even_squarefree,
    count_coprime_squarefree,
    density_factor,
    normalized_coprime_even_count,
)
from .cover import (
    CliqueCover,
    CoverFailure,
    StrategyConfig,
    run_capped_greedy,
    run_greedy,
    run_mcf,
    validate_cover,
    write_cover_csv,
)
from .lemma import (
    DEFAULT_BUDGET,
    ErrorBudget,
    VerificationReport,
    combined_tail_bound,
    divisor_product_constants,
    feasibility_threshold,
    negative_moment_bound,
    tail_grid_report,
    verify_choice_scarcity,
    verify_class_counts,
    verify_conflict_bounds,
    verify_conflict_margin,
    verify_degree_deviation,
    verify_divisor_bound,
    verify_feasibility_range,
    verify_normalized_counts,
    verify_reciprocal_sums,
)
from .oracle import (
    ResourceLimitExceeded,
    ShareFactorGraph,
    density_factor_cdf,
    max_independent_set_exact,
    maximum_witness_report,
)
from .sieve import (
    FactorList,
    MobiusTable,
    RangeTooLarge,
    SquarefreeTable,
    build_squarefree_table,
    count_squarefree,
    factor_distinct,
    factored,
    mobius_table,
    primes_up_to,
    stream_squarefree,
)

__all__ = [
    "__version__",
    "CoprimeCount",
    "CliqueCover",
    "CoverFailure",
    "DEFAULT_BUDGET",
    "ErrorBudget",
    "FactorList",
    "MobiusTable",
    "RangeTooLarge",
    "ResourceLimitExceeded",
    "ShareFactorGraph",
    "SquarefreeTable",
    "StrategyConfig",
    "VerificationReport",
    "asymptotic_coprime_even_count",
    "asymptotic_vertex_count",
    "build_squarefree_table",
    "combined_tail_bound",
    "coprime_even_counts",
    "count_coprime_even_squarefree",
    "count_coprime_squarefree",
    "count_squarefree",
    "density_factor",
    "density_factor_cdf",
    "divisor_product_constants",
    "factor_distinct",
    "factored",
    "feasibility_threshold",
    "max_independent_set_exact",
    "maximum_witness_report",
    "mobius_table",
    "negative_moment_bound",
    "normalized_coprime_even_count",
    "primes_up_to",
    "run_capped_greedy",
    "run_greedy",
    "run_mcf",
    "stream_squarefree",
    "tail_grid_report",
    "validate_cover",
    "verify_choice_scarcity",
    "verify_class_counts",
    "verify_conflict_bounds",
    "verify_conflict_margin",
    "verify_degree_deviation",
    "verify_divisor_bound",
    "verify_feasibility_range",
    "verify_normalized_counts",
    "verify_reciprocal_sums",
    "write_cover_csv",
]
