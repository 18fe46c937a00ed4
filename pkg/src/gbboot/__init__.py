"""Generalized circular block bootstrap with real-valued block sizes.

The package bundles four layers that build on each other: elementary
series utilities, VAR(p) machinery with exact second-order theory, the
generalized circular block bootstrap together with the exact covariance
of its sample mean, and a block-size solver matching the bootstrap trace
to the model trace. On top sit a rank-based copula homogeneity test and
the seasonal standardization pipeline for daily panels, all reachable
from the ``gbboot`` command-line tool.
"""

from .blocksize import (
    STATUS_NO_SOLUTION,
    STATUS_NON_MONOTONE,
    STATUS_SOLVED,
    SolveReport,
    TraceCurve,
    argmin_integer_block_size,
    solve_block_size,
    trace_curve,
)
from .bootstrap import (
    BlockSize,
    BootstrapSample,
    NLaw,
    block_mean_cov,
    block_size,
    cbb_sample,
    gbb_mean_cov_exact,
    gbb_mean_cov_mc,
    gbb_sample,
    n_law,
)
from .copula import (
    HomogeneityReport,
    PseudoSample,
    cvm_statistic,
    cvm_statistic_grid,
    empirical_copula,
    homogeneity_test,
    pseudo_observations,
)
from .errors import (
    GbbootError,
    InsufficientDataError,
    MissingDataError,
    PanelFormatError,
    RankDeficiencyError,
    StationarityError,
)
from .pipeline import (
    DailyPanel,
    DecadePanel,
    SeasonalCurve,
    decade_average,
    load_panel,
    seasonal_curve,
    split_halves,
    standardize,
)
from .series import as_series, circular_index, sample_autocov, sample_mean
from .var import (
    LagSelection,
    LjungBoxResult,
    VarModel,
    autocov,
    companion,
    fit_var,
    gamma_y0,
    is_stationary,
    ljung_box,
    mean_cov_trace_limit,
    residuals,
    select_lag_aic,
    simulate,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "GbbootError",
    "InsufficientDataError",
    "MissingDataError",
    "PanelFormatError",
    "RankDeficiencyError",
    "StationarityError",
    "as_series",
    "sample_mean",
    "circular_index",
    "sample_autocov",
    "VarModel",
    "LagSelection",
    "LjungBoxResult",
    "fit_var",
    "select_lag_aic",
    "companion",
    "is_stationary",
    "gamma_y0",
    "autocov",
    "mean_cov_trace_limit",
    "simulate",
    "residuals",
    "ljung_box",
    "BlockSize",
    "NLaw",
    "BootstrapSample",
    "block_size",
    "n_law",
    "cbb_sample",
    "gbb_sample",
    "block_mean_cov",
    "gbb_mean_cov_exact",
    "gbb_mean_cov_mc",
    "TraceCurve",
    "SolveReport",
    "trace_curve",
    "solve_block_size",
    "argmin_integer_block_size",
    "STATUS_SOLVED",
    "STATUS_NO_SOLUTION",
    "STATUS_NON_MONOTONE",
    "PseudoSample",
    "HomogeneityReport",
    "pseudo_observations",
    "empirical_copula",
    "cvm_statistic",
    "cvm_statistic_grid",
    "homogeneity_test",
    "DailyPanel",
    "SeasonalCurve",
    "DecadePanel",
    "load_panel",
    "seasonal_curve",
    "standardize",
    "decade_average",
    "split_halves",
]
