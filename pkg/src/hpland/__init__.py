"""Hyperparameter loss landscapes as directed graphs.

Construction from evaluated-configuration tables, topography metrics,
local-optima structure, rank-based similarity between landscapes, and
seedable synthetic generators for validation.
"""

__version__ = "0.1.0"

from .errors import (
    EvaluationsError,
    GraphFormatError,
    HplandError,
    InputError,
    SchemaError,
)
from .fla import (
    DEFAULT_EPSILON,
    FlaReport,
    NdcResult,
    WalkConfig,
    autocorrelation,
    fla_report,
    loss_assortativity,
    mean_neutrality,
    ndc,
    neutrality_of,
)
from .landscape import (
    Landscape,
    Scenario,
    build_landscape,
    fractional_ranks,
    global_optima,
    parse_evaluations,
    rank_losses,
    write_evaluations,
    write_schema,
)
from .localopt import (
    BasinMap,
    EscapeStats,
    LocalOptimaNetwork,
    build_lon,
    escape_improve_rates,
    find_local_optima,
    local_search,
    mean_basin_size,
    write_basin_csv,
)
from .similarity import (
    DEFAULT_GAMMA,
    SimilarityReport,
    compare_report,
    gamma_set,
    shakeup,
    spearman,
    write_pairwise_csv,
)
from .space import (
    Config,
    HyperparameterDecl,
    SearchSpace,
    config_distance,
    configs_at_distance_two,
    n_grid_neighbors,
    neighbors,
    parse_space,
)
from .synthetic import GridFunctionSpec, NkSpec, gen_grid_function, gen_nk

__all__ = [
    "__version__",
    "HplandError",
    "InputError",
    "SchemaError",
    "EvaluationsError",
    "GraphFormatError",
    "HyperparameterDecl",
    "SearchSpace",
    "Config",
    "parse_space",
    "config_distance",
    "neighbors",
    "configs_at_distance_two",
    "n_grid_neighbors",
    "Scenario",
    "Landscape",
    "build_landscape",
    "parse_evaluations",
    "rank_losses",
    "fractional_ranks",
    "global_optima",
    "write_schema",
    "write_evaluations",
    "WalkConfig",
    "FlaReport",
    "NdcResult",
    "DEFAULT_EPSILON",
    "autocorrelation",
    "loss_assortativity",
    "neutrality_of",
    "mean_neutrality",
    "ndc",
    "fla_report",
    "BasinMap",
    "LocalOptimaNetwork",
    "EscapeStats",
    "local_search",
    "find_local_optima",
    "mean_basin_size",
    "build_lon",
    "escape_improve_rates",
    "write_basin_csv",
    "DEFAULT_GAMMA",
    "SimilarityReport",
    "spearman",
    "shakeup",
    "gamma_set",
    "compare_report",
    "write_pairwise_csv",
    "NkSpec",
    "gen_nk",
    "GridFunctionSpec",
    "gen_grid_function",
]
