import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from depreg.design import (
    DesignMatrix,
    column_correlations,
    column_norms,
    limit_column_correlation,
    limit_correlation_matrix,
    lindeberg_ratios,
    regularity_report,
)

SUM_SQ_1000 = 333_833_500  # sum of i^2, i = 1..1000


def power_design(n, alphas):
    i = np.arange(1, n + 1, dtype=float)
    return DesignMatrix(np.column_stack([i**a for a in alphas]))


class TestDesignMatrix:
    def test_rejects_zero_column(self):
        with pytest.raises(ValueError, match="zero"):
            DesignMatrix(np.array([[1.0, 0.0], [2.0, 0.0]]))

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError, match="finite"):
            DesignMatrix(np.array([[1.0], [np.nan]]))

    def test_rejects_wide(self):
        with pytest.raises(ValueError):
            DesignMatrix(np.ones((2, 3)))


class TestColumnNorms:
    def test_identity(self):
        np.testing.assert_allclose(column_norms(np.eye(3)), [1, 1, 1])

    def test_constant_column(self):
        X = np.ones((100, 1))
        assert column_norms(X)[0] == 10.0

    def test_linear_column_exact_sum(self):
        X = power_design(1000, [1.0])
        assert column_norms(X)[0] == pytest.approx(np.sqrt(SUM_SQ_1000), rel=1e-14)


class TestLindebergRatios:
    def test_constant_column(self):
        assert lindeberg_ratios(np.ones((100, 1)))[0] == pytest.approx(0.1)

    def test_linear_column(self):
        X = power_design(1000, [1.0])
        expected = 1000.0 / np.sqrt(SUM_SQ_1000)
        assert lindeberg_ratios(X)[0] == pytest.approx(expected, rel=1e-14)

    def test_one_hot_column_flags_failure(self):
        col = np.zeros(50)
        col[-1] = 1.0
        assert lindeberg_ratios(col[:, None])[0] == 1.0


class TestColumnCorrelations:
    def test_identity_lag0(self):
        np.testing.assert_allclose(column_correlations(np.eye(3), 0), np.eye(3))

    def test_constant_and_linear_near_limit(self):
        n = 10**5
        X = power_design(n, [0.0, 1.0])
        got = column_correlations(X, 0)[0, 1]
        assert got == pytest.approx(np.sqrt(3) / 2, abs=1e-4)

    def test_constant_column_lag1(self):
        got = column_correlations(np.ones((100, 1)), 1)
        assert got[0, 0] == pytest.approx(99 / 100, rel=1e-14)

    def test_lag_out_of_range(self):
        with pytest.raises(ValueError):
            column_correlations(np.eye(3), 3)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(5)
        X = DesignMatrix(rng.normal(size=(40, 3)))
        d = column_norms(X)
        for k in (0, 1, 7, 39):
            got = column_correlations(X, k)
            n = X.n
            expected = np.array(
                [
                    [
                        sum(X.values[m, j] * X.values[m + k, l] for m in range(n - k))
                        / (d[j] * d[l])
                        for l in range(3)
                    ]
                    for j in range(3)
                ]
            )
            np.testing.assert_allclose(got, expected, atol=1e-12)

    @settings(max_examples=25, deadline=None)
    @given(
        arrays(np.float64, (12, 2), elements=st.floats(-5, 5)),
        st.integers(0, 11),
    )
    def test_cauchy_schwarz_and_psd(self, raw, k):
        raw[0] += 1e-3  # keep columns away from identically zero
        try:
            X = DesignMatrix(raw)
        except ValueError:
            return
        assert np.all(np.abs(column_correlations(X, k)) <= 1 + 1e-9)
        eigs = np.linalg.eigvalsh(column_correlations(X, 0))
        assert eigs.min() >= -1e-9


class TestRegularityReport:
    def test_identity_not_regular(self):
        report = regularity_report(np.eye(3), [0, 1])
        assert report.deviations[1] == pytest.approx(1.0)
        assert not report.regular

    def test_constant_linear_regular(self):
        X = power_design(10**5, [0.0, 1.0])
        report = regularity_report(X, range(6), tol=0.01)
        assert report.regular
        assert report.positive_definite

    def test_anova_block_deviations_small(self):
        n = 2000
        a = np.concatenate([np.ones(n // 2), np.zeros(n // 2)])
        X = DesignMatrix(np.column_stack([a, 1 - a]))
        report = regularity_report(X, [0, 1, 2, 3])
        for k in (1, 2, 3):
            assert report.deviations[k] <= 3 * k / n


class TestLimitCorrelation:
    def test_closed_form_values(self):
        assert limit_column_correlation(0, 0) == 1.0
        assert limit_column_correlation(0, 1) == pytest.approx(np.sqrt(3) / 2)
        assert limit_column_correlation(1, 1) == pytest.approx(1.0)

    @pytest.mark.parametrize("alpha", [-0.4, 0.0, 0.5, 1.0, 3.7])
    def test_equal_exponents_give_one(self, alpha):
        assert limit_column_correlation(alpha, alpha) == pytest.approx(1.0, abs=1e-15)

    def test_rejects_small_exponent(self):
        with pytest.raises(ValueError):
            limit_column_correlation(-0.5, 1.0)

    def test_matrix_two_exponents(self):
        res = limit_correlation_matrix([0, 1])
        expected = np.array([[1, np.sqrt(3) / 2], [np.sqrt(3) / 2, 1]])
        np.testing.assert_allclose(res.matrix, expected)
        eigs = np.linalg.eigvalsh(res.matrix)
        np.testing.assert_allclose(eigs, [1 - np.sqrt(3) / 2, 1 + np.sqrt(3) / 2])
        assert res.positive_definite

    def test_duplicate_exponents_flagged_singular(self):
        res = limit_correlation_matrix([1, 1])
        np.testing.assert_allclose(res.matrix, np.ones((2, 2)))
        assert not res.positive_definite

    def test_three_exponents(self):
        res = limit_correlation_matrix([0, 1, 2])
        assert res.matrix[0, 2] == pytest.approx(np.sqrt(5) / 3)
        assert res.positive_definite


class TestConvergenceToLimit:
    def test_power_columns_match_closed_form(self):
        alphas = [0.0, 0.5, 1.0, 2.0]
        X = power_design(10**5, alphas)
        limit = limit_correlation_matrix(alphas).matrix
        for k in range(6):
            np.testing.assert_allclose(column_correlations(X, k), limit, atol=1e-2)
