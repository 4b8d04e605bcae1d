"""Ordinary least squares with an explicit rank check, plus nested-model RSS."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .design import DesignMatrix, column_norms
from .errors import RankDeficientDesignError

__all__ = ["FitResult", "fit", "nested_rss"]

_RANK_RTOL = 1e-10


@dataclass(frozen=True)
class FitResult:
    beta_hat: np.ndarray
    residuals: np.ndarray
    rss: float
    col_norms: np.ndarray

    @property
    def n(self) -> int:
        return self.residuals.shape[0]

    @property
    def p(self) -> int:
        return self.beta_hat.shape[0]

    def to_dict(self) -> dict:
        return {
            "beta_hat": self.beta_hat.tolist(),
            "residuals": self.residuals.tolist(),
            "rss": self.rss,
            "col_norms": self.col_norms.tolist(),
        }


def fit(X, Y) -> FitResult:
    """Least-squares fit via QR.

    Raises RankDeficientDesignError when a diagonal entry of R falls below
    1e-10 times the corresponding column norm.
    """
    X = X if isinstance(X, DesignMatrix) else DesignMatrix(np.asarray(X))
    y = np.asarray(Y, dtype=float).reshape(-1)
    if y.shape[0] != X.n:
        raise ValueError(f"response length {y.shape[0]} != design rows {X.n}")
    d = column_norms(X)
    Q, R = np.linalg.qr(X.values)
    rdiag = np.abs(np.diag(R))
    bad = np.flatnonzero(rdiag <= _RANK_RTOL * d)
    if bad.size:
        raise RankDeficientDesignError(
            f"design is numerically rank deficient at column {bad[0]}"
        )
    beta = np.linalg.solve(R, Q.T @ y)
    resid = y - X.values @ beta
    return FitResult(
        beta_hat=beta,
        residuals=resid,
        rss=float(resid @ resid),
        col_norms=d,
    )


def nested_rss(X, tested_cols, Y, allow_empty_null: bool = False):
    """RSS of the full model and of the null model dropping ``tested_cols``.

    ``tested_cols`` are the (0-based) indices of the coefficients constrained
    to zero under the null.  With every column tested the null model is
    empty; that is rejected unless ``allow_empty_null`` is set, in which case
    RSS0 = ||Y||^2.

    Returns (rss_full, rss_null) from two independent fits.
    """
    X = X if isinstance(X, DesignMatrix) else DesignMatrix(np.asarray(X))
    y = np.asarray(Y, dtype=float).reshape(-1)
    tested = sorted(set(int(j) for j in tested_cols))
    if any(j < 0 or j >= X.p for j in tested):
        raise ValueError(f"tested column indices must be in [0, {X.p - 1}]")
    if not tested:
        raise ValueError("tested column set is empty")
    keep = [j for j in range(X.p) if j not in tested]
    rss_full = fit(X, y).rss
    if keep:
        rss_null = fit(DesignMatrix(X.values[:, keep]), y).rss
    elif allow_empty_null:
        rss_null = float(y @ y)
    else:
        raise ValueError(
            "null model has no columns; pass allow_empty_null=True to test "
            "against the zero model"
        )
    return rss_full, rss_null
