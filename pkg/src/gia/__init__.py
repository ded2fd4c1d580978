"""Group-based interference alignment planner.

Splits M signaling dimensions of a K-user interference channel into user
groups, each running beamforming-optimized interference alignment, so that
the total multiplexing gain is as large as possible.
"""
from .ia_math import (
    DomainError,
    GIAError,
    Instance,
    LadderEntry,
    NotALadderDimension,
    OrthogonalRange,
    binomial,
    feasible_dims,
    format_decimal,
    interference_index,
    invert_dim,
    ladder_dim,
    mg_bf,
    mg_bf_from_streams,
    mg_oia,
    pattern_efficiency,
    pattern_value,
    to_decimal,
    virtual_users,
)
from .patterns import (
    GroupPattern,
    LimitError,
    PatternSet,
    StageError,
    build_pattern_set,
    generate,
    generate_sparse,
    prune,
    sort_by_efficiency,
)
from .solvers import DpTable, Plan, build_table, plan_total_mg, solve_brute, solve_greedy, solve_optimal

__version__ = "0.1.0"
