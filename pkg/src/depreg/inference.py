"""Classic and dependence-corrected Fisher tests.

With short-range dependent errors the classic F statistic keeps its
numerator but its denominator RSS/(n-p) must be replaced by an estimate of
the long-run variance sum_k gamma(k).  Both statistics share the asymptotic
reference chi2(q)/q with q the number of tested coefficients; the exact
Fisher(q, n-p) reference is retained for the i.i.d. Gaussian sanity path of
the classic test.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy import special, stats

from .errors import DegenerateFitError, NonpositiveLrvError
from .ols import FitResult
from .spectral import LrvEstimate, LrvMethod

__all__ = [
    "TestMethod",
    "Reference",
    "TestResult",
    "chi2_sf",
    "fisher_classic",
    "fisher_corrected",
    "studentize",
]

# rss0 < rss by at most this relative amount is treated as round-off.
_NESTING_RTOL = 1e-9
_SQRT_EIG_RTOL = 1e-12


class TestMethod(enum.Enum):
    __test__ = False  # not a pytest class

    CLASSIC_F = "classic_F"
    CORRECTED_KERNEL = "corrected_kernel"
    CORRECTED_TRUNCATED = "corrected_truncated"


class Reference(enum.Enum):
    CHI2_OVER_DOF = "chi2_over_dof"
    FISHER = "fisher"


@dataclass(frozen=True)
class TestResult:
    __test__ = False  # not a pytest class

    statistic: float
    numerator_dof: int
    method: TestMethod
    p_value: float
    reference: Reference

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "numerator_dof": self.numerator_dof,
            "method": self.method.value,
            "p_value": self.p_value,
            "reference": self.reference.value,
        }


def chi2_sf(x: float, k: int) -> float:
    """Upper-tail probability of chi-square with k dof."""
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    if int(k) < 1:
        raise ValueError(f"dof must be >= 1, got {k}")
    return float(special.gammaincc(k / 2.0, x / 2.0))


def _rss_gap(rss0: float, rss: float) -> float:
    if rss0 < rss:
        if rss0 - rss >= -_NESTING_RTOL * max(rss0, 1.0):
            return 0.0
        raise ValueError(f"rss0={rss0} < rss={rss} beyond round-off: not nested fits")
    return rss0 - rss


def fisher_classic(
    rss0: float,
    rss: float,
    n: int,
    p: int,
    p0: int,
    reference: str | Reference = Reference.CHI2_OVER_DOF,
) -> TestResult:
    """Uncorrected F statistic (rss0-rss)/(q * rss/(n-p)), q = p - p0.

    Default p-value from the asymptotic chi2(q)/q reference; pass
    reference="fisher" for the exact Fisher(q, n-p) law valid under
    i.i.d. Gaussian errors.
    """
    if not n > p > p0 >= 0:
        raise ValueError(f"need n > p > p0 >= 0, got n={n}, p={p}, p0={p0}")
    if rss <= 0 or rss <= 1e-12 * rss0:
        raise DegenerateFitError(
            "rss is zero (up to round-off): noiseless fit, test undefined"
        )
    q = p - p0
    stat = _rss_gap(rss0, rss) / (q * (rss / (n - p)))
    reference = Reference(reference)
    if reference is Reference.FISHER:
        pv = float(stats.f.sf(stat, q, n - p))
    else:
        pv = chi2_sf(q * stat, q)
    return TestResult(
        statistic=float(stat),
        numerator_dof=q,
        method=TestMethod.CLASSIC_F,
        p_value=pv,
        reference=reference,
    )


def fisher_corrected(
    rss0: float, rss: float, lrv: LrvEstimate, p: int, p0: int
) -> TestResult:
    """Corrected statistic (rss0-rss)/(q * LRV-estimate), chi2(q)/q reference."""
    if not p > p0 >= 0:
        raise ValueError(f"need p > p0 >= 0, got p={p}, p0={p0}")
    if lrv.nonpositive:
        raise NonpositiveLrvError(
            f"long-run variance estimate {lrv.value} is not positive; "
            "increase the bandwidth/truncation lag or inspect the residual ACF"
        )
    q = p - p0
    stat = _rss_gap(rss0, rss) / (q * lrv.value)
    method = (
        TestMethod.CORRECTED_KERNEL
        if lrv.method is LrvMethod.KERNEL_F0
        else TestMethod.CORRECTED_TRUNCATED
    )
    return TestResult(
        statistic=float(stat),
        numerator_dof=q,
        method=method,
        p_value=chi2_sf(q * stat, q),
        reference=Reference.CHI2_OVER_DOF,
    )


def _sym_sqrt(m: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(m)
    floor = _SQRT_EIG_RTOL * vals[-1]
    if vals[0] <= floor:
        raise ValueError("matrix is not positive definite; cannot take square root")
    return (vecs * np.sqrt(vals)) @ vecs.T


def studentize(fit: FitResult, r0: np.ndarray, lrv: LrvEstimate, beta0) -> np.ndarray:
    """Asymptotically standard-normal vector R0^{1/2} D (beta_hat - beta0)/sqrt(lrv).

    ``r0`` is the limit (or finite-n) normalized Gram matrix and D the
    diagonal of column norms carried by the fit.
    """
    if lrv.nonpositive:
        raise NonpositiveLrvError(
            f"long-run variance estimate {lrv.value} is not positive"
        )
    r0 = np.asarray(r0, dtype=float)
    b0 = np.asarray(beta0, dtype=float).reshape(-1)
    if b0.shape[0] != fit.p:
        raise ValueError(f"beta0 length {b0.shape[0]} != p={fit.p}")
    root = _sym_sqrt(r0)
    return root @ (fit.col_norms * (fit.beta_hat - b0)) / np.sqrt(lrv.value)
