import csv
import io
import json

import numpy as np
import pytest

from depreg.montecarlo import (
    ExperimentSpec,
    acf_report,
    build_design,
    replication_seed,
    run_experiment,
)
from depreg.processes import ProcessConfig

AR1 = ProcessConfig(kind="ar1_nonmixing", scale=10.0)


def ar1_spec(**overrides):
    base = dict(
        design_kind="intercept_linear",
        beta=(3.0, 0.0),
        process=AR1,
        n_values=(200,),
        null_cols=(1,),
        max_lag=3,
        replications=200,
        master_seed=17,
    )
    base.update(overrides)
    return ExperimentSpec(**base)


class TestBuildDesign:
    def test_intercept_linear(self):
        X = build_design("intercept_linear", 3)
        np.testing.assert_allclose(X.values, [[1, 1], [1, 2], [1, 3]])

    def test_intercept_quadratic_row(self):
        X = build_design("intercept_quadratic", 12)
        np.testing.assert_allclose(X.values[9], [1, 10, 100])

    def test_intercept_sqrt_log_first_row(self):
        X = build_design("intercept_sqrt_log", 5)
        np.testing.assert_allclose(X.values[0], [1, 1, 0])

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            build_design("cubic", 10)


class TestSpecValidation:
    def test_beta_length_checked(self):
        with pytest.raises(ValueError, match="beta"):
            ar1_spec(beta=(3.0, 0.0, 1.0))

    def test_null_cols_checked(self):
        with pytest.raises(ValueError):
            ar1_spec(null_cols=(5,))
        with pytest.raises(ValueError):
            ar1_spec(null_cols=())
        with pytest.raises(ValueError):
            ar1_spec(null_cols=(0, 1))

    def test_alpha_checked(self):
        with pytest.raises(ValueError):
            ar1_spec(alpha=1.5)

    def test_dict_roundtrip(self):
        spec = ar1_spec()
        assert ExperimentSpec.from_dict(json.loads(json.dumps(spec.to_dict()))) == spec


class TestSeeds:
    def test_distinct_streams(self):
        a = np.random.default_rng(replication_seed(1, 100, 0)).random(4)
        b = np.random.default_rng(replication_seed(1, 100, 1)).random(4)
        c = np.random.default_rng(replication_seed(1, 200, 0)).random(4)
        assert not np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_reproducible(self):
        a = np.random.default_rng(replication_seed(1, 100, 5)).random(4)
        b = np.random.default_rng(replication_seed(1, 100, 5)).random(4)
        np.testing.assert_array_equal(a, b)


class TestRunExperiment:
    def test_deterministic(self):
        spec = ar1_spec()
        r1 = run_experiment(spec)
        r2 = run_experiment(spec)
        assert r1.rows == r2.rows

    def test_row_shape(self):
        result = run_experiment(ar1_spec(n_values=(100, 200)))
        assert [row.n for row in result.rows] == [100, 200]
        for row in result.rows:
            assert 0.0 <= row.rejection_frequency <= 1.0

    def test_binomial_stability_across_master_seeds(self):
        n_reps = 400
        f1 = run_experiment(ar1_spec(replications=n_reps, master_seed=1)).rows[0]
        f2 = run_experiment(ar1_spec(replications=n_reps, master_seed=2)).rows[0]
        pooled = (f1.rejection_frequency + f2.rejection_frequency) / 2
        band = 4 * np.sqrt(pooled * (1 - pooled) / n_reps)
        assert abs(f1.rejection_frequency - f2.rejection_frequency) <= band

    def test_power_monotone_in_n(self):
        spec = ar1_spec(beta=(3.0, 0.005), n_values=(200, 800), replications=400)
        rows = run_experiment(spec).rows
        assert rows[1].rejection_frequency >= rows[0].rejection_frequency

    def test_nonpositive_lrv_counted_not_hidden(self):
        # MA(1) with coefficients (1, -1) has long-run variance 0; the
        # symmetrized truncated estimate at lag 1 goes nonpositive often
        proc = ProcessConfig(kind="linear_process", coeffs=(1.0, -1.0))
        spec = ar1_spec(process=proc, max_lag=1, replications=100, n_values=(300,))
        row = run_experiment(spec).rows[0]
        assert row.nonpositive_lrv_count > 0
        assert row.rejection_frequency <= 1.0

    def test_classic_path(self):
        proc = ProcessConfig(kind="linear_process", coeffs=(1.0,))
        spec = ar1_spec(
            process=proc, beta=(0.0, 0.0), test="classic", reference="fisher",
            replications=400, n_values=(50,),
        )
        row = run_experiment(spec).rows[0]
        assert row.rejection_frequency == pytest.approx(0.05, abs=0.035)


class TestTableCsv:
    def test_csv_parses_and_echoes_spec(self):
        result = run_experiment(ar1_spec(replications=50))
        text = result.to_csv()
        lines = text.splitlines()
        assert lines[0].startswith("# spec: ")
        echoed = json.loads(lines[0][len("# spec: "):])
        assert ExperimentSpec.from_dict(echoed) == result.spec
        reader = csv.DictReader(io.StringIO("\n".join(lines[1:])))
        rows = list(reader)
        assert len(rows) == 1
        assert int(rows[0]["n"]) == 200
        float(rows[0]["freq"])  # parseable full-precision value


class TestAcfReport:
    def test_zero_series(self):
        pairs = acf_report(np.zeros(50), 5)
        assert pairs == [(k, 0.0) for k in range(6)]

    def test_ar1_residual_decay(self):
        spec = ar1_spec(n_values=(600,))
        pairs = dict(acf_report(spec, 8, n=600))
        ratios = [pairs[k] / pairs[0] for k in range(9)]
        assert ratios[1] == pytest.approx(0.5, abs=0.12)
        assert all(abs(r) < 0.15 for r in ratios[4:])

    def test_intermittent_residual_decay_slower(self):
        pm = ProcessConfig(kind="intermittent", gamma=0.25, scale=10.0)
        spec = ar1_spec(process=pm, n_values=(2000,))
        pairs = dict(acf_report(spec, 8, n=2000))
        assert pairs[3] / pairs[0] > 0.125
