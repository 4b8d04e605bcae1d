"""Least-squares inference for linear models with stationary dependent errors.

Pieces: design regularity diagnostics, OLS with nested-model RSS, lag-window
spectral density / long-run variance estimation, corrected Fisher tests, and
a seeded Monte Carlo harness for size and power tables.
"""

from .design import (
    DesignMatrix,
    column_correlations,
    column_norms,
    limit_column_correlation,
    limit_correlation_matrix,
    lindeberg_ratios,
    regularity_report,
)
from .errors import (
    DegenerateFitError,
    NonpositiveLrvError,
    NumericalError,
    RankDeficientDesignError,
)
from .inference import (
    Reference,
    TestMethod,
    TestResult,
    chi2_sf,
    fisher_classic,
    fisher_corrected,
    studentize,
)
from .montecarlo import (
    ExperimentSpec,
    TableResult,
    acf_report,
    build_design,
    replication_seed,
    run_experiment,
)
from .ols import FitResult, fit, nested_rss
from .processes import (
    ProcessConfig,
    intermittent_map,
    simulate,
    simulate_ar1_nonmixing,
    simulate_batch,
    simulate_intermittent,
    simulate_linear_process,
)
from .spectral import (
    AcfEstimate,
    AcfSource,
    LrvEstimate,
    autocovariance,
    autocovariances,
    default_bandwidth,
    lag_window,
    long_run_variance,
    spectral_density,
)

__version__ = "0.1.0"

__all__ = [
    "DesignMatrix",
    "column_norms",
    "lindeberg_ratios",
    "column_correlations",
    "regularity_report",
    "limit_column_correlation",
    "limit_correlation_matrix",
    "FitResult",
    "fit",
    "nested_rss",
    "AcfEstimate",
    "AcfSource",
    "LrvEstimate",
    "lag_window",
    "autocovariance",
    "autocovariances",
    "spectral_density",
    "default_bandwidth",
    "long_run_variance",
    "TestMethod",
    "Reference",
    "TestResult",
    "chi2_sf",
    "fisher_classic",
    "fisher_corrected",
    "studentize",
    "ProcessConfig",
    "simulate",
    "simulate_batch",
    "simulate_ar1_nonmixing",
    "intermittent_map",
    "simulate_intermittent",
    "simulate_linear_process",
    "ExperimentSpec",
    "TableResult",
    "build_design",
    "replication_seed",
    "run_experiment",
    "acf_report",
    "NumericalError",
    "RankDeficientDesignError",
    "DegenerateFitError",
    "NonpositiveLrvError",
]
