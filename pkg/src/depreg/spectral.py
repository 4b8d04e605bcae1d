"""Lag-window spectral density and long-run variance estimation.

Sample autocovariances use the 1/n divisor at every lag (not 1/(n-k)), which
keeps the implied Toeplitz quadratic form positive semidefinite.  The
spectral estimator weights them with a flat-top trapezoidal lag window:
weight 1 up to the bandwidth, linear decay to zero at twice the bandwidth.

The long-run variance sum_{k in Z} gamma(k) = 2*pi*f(0) is estimated either
from the density at frequency zero or by a plain truncated covariance sum.
The truncated sum comes in two flavours: ``symmetrized`` adds each positive
lag twice (consistent with the two-sided series), the literal one-sided sum
does not.  The symmetrized form is the correct chi-square calibration and is
the default.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "AcfSource",
    "AcfEstimate",
    "LrvEstimate",
    "lag_window",
    "autocovariance",
    "autocovariances",
    "spectral_density",
    "default_bandwidth",
    "long_run_variance",
]


class AcfSource(enum.Enum):
    RAW_SERIES = "raw_series"
    RESIDUALS = "residuals"


def lag_window(x) -> np.ndarray | float:
    """Flat-top trapezoidal weight: 1 on |x|<=1, 2-|x| on [1,2], 0 beyond."""
    ax = np.abs(np.asarray(x, dtype=float))
    out = np.clip(2.0 - ax, 0.0, 1.0)
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(out)
    return out


def autocovariance(series, lag: int) -> float:
    """(1/n) * sum_{j=1..n-|lag|} s_j s_{j+|lag|}; no mean-centering.

    Series simulated from the zero-mean error model, or residuals of a model
    containing an intercept, need no centering.
    """
    s = np.asarray(series, dtype=float).reshape(-1)
    n = s.shape[0]
    k = abs(int(lag))
    if k >= n:
        raise ValueError(f"|lag| must be < n={n}, got {lag}")
    if k == 0:
        return float(s @ s) / n
    return float(s[:-k] @ s[k:]) / n


@dataclass(frozen=True)
class AcfEstimate:
    """Autocovariances (lag 0..K) with the 1/n divisor, plus their origin."""

    values: np.ndarray
    n: int
    source: AcfSource

    def __post_init__(self):
        object.__setattr__(
            self, "values", np.asarray(self.values, dtype=float).reshape(-1)
        )

    @property
    def max_lag(self) -> int:
        return self.values.shape[0] - 1


def autocovariances(
    series, max_lag: int, source: AcfSource = AcfSource.RAW_SERIES
) -> AcfEstimate:
    s = np.asarray(series, dtype=float).reshape(-1)
    n = s.shape[0]
    if not 0 <= max_lag <= n - 1:
        raise ValueError(f"max_lag must be in [0, {n - 1}], got {max_lag}")
    vals = np.empty(max_lag + 1)
    for k in range(max_lag + 1):
        vals[k] = (s[: n - k] @ s[k:]) / n if k else (s @ s) / n
    return AcfEstimate(values=vals, n=n, source=source)


def _check_bandwidth(n: int, bandwidth: int) -> int:
    c = int(bandwidth)
    if c < 1 or 2 * c > n - 1:
        raise ValueError(
            f"bandwidth must satisfy 1 <= c and 2c <= n-1 (n={n}), got {bandwidth}"
        )
    return c


def spectral_density(residuals, bandwidth: int, freq) -> np.ndarray | float:
    """Lag-window density estimate f*(freq), freq in [-pi, pi] (scalar or array).

    Real cosine form; the covariance sum truncates at twice the bandwidth
    where the window support ends.
    """
    r = np.asarray(residuals, dtype=float).reshape(-1)
    n = r.shape[0]
    c = _check_bandwidth(n, bandwidth)
    kmax = min(2 * c, n - 1)
    acf = autocovariances(r, kmax, AcfSource.RESIDUALS).values
    lam = np.asarray(freq, dtype=float)
    ks = np.arange(1, kmax + 1)
    w = lag_window(ks / c) * acf[1:]
    vals = (acf[0] + 2.0 * np.cos(np.multiply.outer(lam, ks)) @ w) / (2.0 * np.pi)
    if np.ndim(freq) == 0:
        return float(vals)
    return vals


def default_bandwidth(n: int, delta: float = 2.0) -> int:
    """Bandwidth growing like n^{0.9*delta/(delta+2)}.

    ``delta`` is the extra moment margin of the errors (E|e|^{2+delta} finite,
    delta in (0, 2]); the exponent keeps c^{1+delta/2}/n^{delta/2} -> 0, the
    sufficient consistency condition.  Clamped to [1, (n-1)/2].
    """
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    if not 0 < delta <= 2:
        raise ValueError(f"delta must be in (0, 2], got {delta}")
    c = math.floor(n ** (0.9 * delta / (delta + 2.0)))
    return max(1, min(c, (n - 1) // 2))


class LrvMethod(enum.Enum):
    KERNEL_F0 = "kernel_f0"
    TRUNCATED = "truncated"


@dataclass(frozen=True)
class LrvEstimate:
    """Estimate of the long-run variance sum_{k in Z} gamma(k).

    A flat-top window can produce a nonpositive value; that is flagged here
    and rejected later by the test statistics, not raised at estimation time.
    """

    value: float
    method: LrvMethod
    bandwidth: int  # c_n for the kernel method, a_n for the truncated sum
    symmetrized: bool = True

    @property
    def nonpositive(self) -> bool:
        return self.value <= 0.0


def long_run_variance(
    residuals,
    *,
    method: str | LrvMethod = LrvMethod.KERNEL_F0,
    bandwidth: int | None = None,
    max_lag: int | None = None,
    symmetrized: bool = True,
) -> LrvEstimate:
    """Estimate sum_k gamma(k) from a residual (or raw) series.

    kernel_f0: 2*pi*f*(0) at the given (or default) bandwidth ``bandwidth``.
    truncated: gamma_0 + [2*]sum_{k=1..max_lag} gamma_k, doubled when
    ``symmetrized`` (the default; the one-sided sum is kept for comparison).
    """
    r = np.asarray(residuals, dtype=float).reshape(-1)
    n = r.shape[0]
    method = LrvMethod(method)
    if method is LrvMethod.KERNEL_F0:
        c = default_bandwidth(n) if bandwidth is None else bandwidth
        c = _check_bandwidth(n, c)
        value = 2.0 * np.pi * spectral_density(r, c, 0.0)
        return LrvEstimate(value=float(value), method=method, bandwidth=c)
    if max_lag is None:
        raise ValueError("truncated method requires max_lag")
    a = int(max_lag)
    if not 0 <= a <= n - 1:
        raise ValueError(f"max_lag must be in [0, {n - 1}], got {max_lag}")
    acf = autocovariances(r, a, AcfSource.RESIDUALS).values
    tail = acf[1:].sum()
    value = acf[0] + (2.0 * tail if symmetrized else tail)
    return LrvEstimate(
        value=float(value), method=method, bandwidth=a, symmetrized=symmetrized
    )
