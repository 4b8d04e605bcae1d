"""Fixed-design diagnostics for regression with dependent errors.

A design is usable when its column norms grow, no single row dominates a
column (a Lindeberg-type condition), and the normalized lagged cross-products
between columns stabilize across lags.  When those cross-products do not
depend on the lag the design is called *regular*, and the asymptotic
covariance of the least-squares estimator collapses to
(sum of error autocovariances) * R(0)^{-1}, where R(0) is the limit of the
normalized Gram matrix.

For pure power columns x_i = i^alpha the limit cross-products have a closed
form, implemented in :func:`limit_column_correlation`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DesignMatrix",
    "DesignDiagnostics",
    "RegularityReport",
    "column_norms",
    "lindeberg_ratios",
    "column_correlations",
    "diagnostics",
    "regularity_report",
    "limit_column_correlation",
    "limit_correlation_matrix",
]

# Relative eigenvalue threshold below which R(0) is reported singular.
_PD_RTOL = 1e-10


@dataclass(frozen=True)
class DesignMatrix:
    """An n x p fixed design with validated entries.

    Raises ValueError on non-finite entries, n < p, or an all-zero column
    (whose norm would make column scaling undefined).
    """

    values: np.ndarray

    def __post_init__(self):
        arr = np.atleast_2d(np.asarray(self.values, dtype=float))
        if arr.ndim != 2:
            raise ValueError("design must be a 2-d array")
        n, p = arr.shape
        if p < 1 or n < p:
            raise ValueError(f"need n >= p >= 1, got n={n}, p={p}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("design entries must be finite")
        norms = np.linalg.norm(arr, axis=0)
        zero = np.flatnonzero(norms == 0.0)
        if zero.size:
            raise ValueError(f"column {zero[0]} of the design is identically zero")
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]


def _as_design(X) -> DesignMatrix:
    return X if isinstance(X, DesignMatrix) else DesignMatrix(np.asarray(X))


def column_norms(X) -> np.ndarray:
    """Euclidean norm of each design column; strictly positive by construction."""
    X = _as_design(X)
    return np.linalg.norm(X.values, axis=0)


def lindeberg_ratios(X) -> np.ndarray:
    """max_i |x_ij| / ||x_j|| per column; values in (0, 1].

    A ratio near 1 means one row carries essentially all of the column's
    mass, which breaks the Lindeberg-type design condition.
    """
    X = _as_design(X)
    return np.abs(X.values).max(axis=0) / column_norms(X)


def column_correlations(X, lag: int) -> np.ndarray:
    """Normalized lagged cross-products between columns.

    Entry (j, l) is sum_{m=1..n-lag} x_{m,j} x_{m+lag,l} / (||x_j|| ||x_l||).
    All entries lie in [-1, 1] by Cauchy-Schwarz; at lag 0 the matrix is the
    normalized Gram matrix (symmetric positive semidefinite).
    """
    X = _as_design(X)
    if not 0 <= lag <= X.n - 1:
        raise ValueError(f"lag must be in [0, {X.n - 1}], got {lag}")
    A = X.values
    d = column_norms(X)
    if lag == 0:
        prod = A.T @ A
    else:
        prod = A[:-lag].T @ A[lag:]
    return prod / np.outer(d, d)


@dataclass(frozen=True)
class DesignDiagnostics:
    """Raw design quantities at a set of lags."""

    col_norms: np.ndarray
    lindeberg: np.ndarray
    correlations: dict[int, np.ndarray]  # lag -> p x p matrix

    @property
    def gram(self) -> np.ndarray:
        """Normalized Gram matrix (lag-0 correlations)."""
        return self.correlations[0]


def diagnostics(X, lags) -> DesignDiagnostics:
    X = _as_design(X)
    lags = sorted(set(int(k) for k in lags) | {0})
    corr = {k: column_correlations(X, k) for k in lags}
    return DesignDiagnostics(
        col_norms=column_norms(X),
        lindeberg=lindeberg_ratios(X),
        correlations=corr,
    )


@dataclass(frozen=True)
class RegularityReport:
    """Finite-n check of the regular-design conditions.

    deviations[k] is the max-abs entrywise difference between the lag-k and
    lag-0 correlation matrices; the design looks regular (at this n) when
    every deviation is below ``tol``.  min_eigenvalue refers to the lag-0
    matrix, whose positive definiteness the inference relies on.
    """

    tol: float
    deviations: dict[int, float]
    regular_within_tol: dict[int, bool]
    lindeberg: np.ndarray
    min_eigenvalue: float
    max_eigenvalue: float
    positive_definite: bool
    diagnostics: DesignDiagnostics = field(repr=False)

    @property
    def regular(self) -> bool:
        return all(self.regular_within_tol.values())

    def to_dict(self) -> dict:
        return {
            "tol": self.tol,
            "deviations": {str(k): v for k, v in self.deviations.items()},
            "regular_within_tol": {
                str(k): v for k, v in self.regular_within_tol.items()
            },
            "regular": self.regular,
            "lindeberg_ratios": self.lindeberg.tolist(),
            "min_eigenvalue": self.min_eigenvalue,
            "max_eigenvalue": self.max_eigenvalue,
            "positive_definite": self.positive_definite,
        }


def regularity_report(X, lags, tol: float = 0.01) -> RegularityReport:
    diag = diagnostics(X, lags)
    base = diag.gram
    deviations = {
        k: float(np.max(np.abs(m - base))) for k, m in diag.correlations.items()
    }
    eigs = np.linalg.eigvalsh(base)
    lo, hi = float(eigs[0]), float(eigs[-1])
    return RegularityReport(
        tol=tol,
        deviations=deviations,
        regular_within_tol={k: d <= tol for k, d in deviations.items()},
        lindeberg=diag.lindeberg,
        min_eigenvalue=lo,
        max_eigenvalue=hi,
        positive_definite=lo > _PD_RTOL * hi,
        diagnostics=diag,
    )


def limit_column_correlation(alpha_j: float, alpha_l: float) -> float:
    """Limit correlation between power columns i^alpha_j and i^alpha_l.

    Valid for exponents > -1/2; the limit does not depend on the lag, so a
    design made of such columns is regular.
    """
    if alpha_j <= -0.5 or alpha_l <= -0.5:
        raise ValueError("power-column exponents must be > -1/2")
    return (
        np.sqrt(2 * alpha_j + 1) * np.sqrt(2 * alpha_l + 1) / (alpha_j + alpha_l + 1)
    )


@dataclass(frozen=True)
class LimitCorrelationMatrix:
    """Closed-form limit Gram matrix for power columns, with a PD check.

    Two equal exponents make the matrix singular (rank drops); that is
    reported through ``positive_definite`` rather than raised.
    """

    matrix: np.ndarray
    min_eigenvalue: float
    positive_definite: bool


def limit_correlation_matrix(alphas) -> LimitCorrelationMatrix:
    alphas = [float(a) for a in alphas]
    p = len(alphas)
    m = np.empty((p, p))
    for j in range(p):
        for l in range(p):
            m[j, l] = limit_column_correlation(alphas[j], alphas[l])
    eigs = np.linalg.eigvalsh(m)
    lo, hi = float(eigs[0]), float(eigs[-1])
    return LimitCorrelationMatrix(
        matrix=m, min_eigenvalue=lo, positive_definite=lo > _PD_RTOL * hi
    )
