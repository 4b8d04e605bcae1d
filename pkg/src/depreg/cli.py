"""Command-line surface.

Subcommands: simulate, fit, test, table, acf, diagnose.  Delimited outputs
carry '#'-prefixed metadata lines echoing the resolved configuration (seed
included) so every file is reproducible from its own header.  Exit codes:
0 success, 1 usage/configuration error, 2 numerical error (rank deficiency,
degenerate fit, nonpositive long-run variance).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import montecarlo, ols, processes, spectral
from .design import DesignMatrix, regularity_report
from .errors import NumericalError
from .inference import fisher_classic, fisher_corrected

__all__ = ["main", "run"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _write_series_csv(path, values, config: dict):
    with _open_out(path) as fh:
        fh.write(f"# config: {json.dumps(config, separators=(',', ':'))}\n")
        fh.write("value\n")
        for v in values:
            fh.write(_fmt(v) + "\n")


def _open_out(path):
    if path is None or path == "-":
        return _StdoutGuard()
    return open(path, "w", encoding="utf-8", newline="")


class _StdoutGuard:
    """File-like wrapper around stdout that survives a with-block."""

    def __enter__(self):
        return sys.stdout

    def __exit__(self, *exc):
        return False


def _read_table(path, response: str | None):
    """Read a headered CSV; returns (y or None, design array, design column names)."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(row for row in fh if not row.startswith("#"))
        header = next(reader)
        rows = [[float(x) for x in row] for row in reader if row]
    data = np.asarray(rows)
    if response is None:
        return None, data, header
    if response not in header:
        raise _UsageError(f"response column {response!r} not found in {header}")
    yi = header.index(response)
    keep = [j for j in range(len(header)) if j != yi]
    return data[:, yi], data[:, keep], [header[j] for j in keep]


def _parse_int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _parse_float_list(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip()]


def _build_parser() -> _Parser:
    parser = _Parser(prog="depreg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="simulate an error process to CSV")
    sim.add_argument("--kind", required=True,
                     choices=["ar1", "intermittent", "linear"])
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--seed", type=int, required=True)
    sim.add_argument("--gamma", type=float, default=0.25)
    sim.add_argument("--burn-in", type=int, default=None)
    sim.add_argument("--scale", type=float, default=1.0)
    sim.add_argument("--coeffs", type=str, default="1")
    sim.add_argument("--innovation", default="gaussian",
                     choices=["gaussian", "rademacher", "uniform"])
    sim.add_argument("--post-map", default="identity",
                     choices=["identity", "abs", "squared"])
    sim.add_argument("--output", "-o", default="-")

    fit_p = sub.add_parser("fit", help="least-squares fit of a CSV dataset to JSON")
    fit_p.add_argument("--data", required=True)
    fit_p.add_argument("--response", default="y")
    fit_p.add_argument("--output", "-o", default="-")

    test_p = sub.add_parser(
        "test", help="classic and corrected Fisher tests on a CSV dataset"
    )
    test_p.add_argument("--data", required=True)
    test_p.add_argument("--response", default="y")
    test_p.add_argument("--null-cols", required=True,
                        help="comma-separated 0-based design columns tested")
    test_p.add_argument("--lrv-method", default="truncated",
                        choices=["truncated", "kernel"])
    test_p.add_argument("--max-lag", type=int, default=0)
    test_p.add_argument("--bandwidth", type=int, default=None)
    test_p.add_argument("--literal-sum", action="store_true",
                        help="one-sided truncated sum instead of symmetrized")
    test_p.add_argument("--output", "-o", default="-")

    table = sub.add_parser(
        "table", help="run a Monte Carlo experiment from a JSON config"
    )
    table.add_argument("--config", required=True)
    table.add_argument("--replications", type=int, default=None)
    table.add_argument("--master-seed", type=int, default=None)
    table.add_argument("--n-values", type=str, default=None)
    table.add_argument("--max-lag", type=int, default=None)
    table.add_argument("--alpha", type=float, default=None)
    table.add_argument("--output", "-o", default="-")
    table.add_argument("--spec-echo", default=None,
                       help="write the resolved spec as JSON to this path")
    table.add_argument("--plot", default=None, help="render the table to a PNG")

    acf = sub.add_parser("acf", help="residual/series autocovariances to CSV")
    acf.add_argument("--config", default=None,
                     help="experiment JSON; simulates one fit and reports residual ACF")
    acf.add_argument("--data", default=None, help="series CSV (column 'value')")
    acf.add_argument("--column", default="value")
    acf.add_argument("--n", type=int, default=None)
    acf.add_argument("--max-lag", type=int, required=True)
    acf.add_argument("--output", "-o", default="-")
    acf.add_argument("--plot", default=None, help="render the ACF to a PNG")

    diag = sub.add_parser("diagnose", help="design regularity report to JSON")
    diag.add_argument("--data", required=True, help="design CSV (all columns used)")
    diag.add_argument("--lags", default="0,1,2,3,4,5")
    diag.add_argument("--tol", type=float, default=0.01)
    diag.add_argument("--output", "-o", default="-")

    return parser


def _cmd_simulate(args) -> int:
    kind = {"ar1": "ar1_nonmixing", "intermittent": "intermittent",
            "linear": "linear_process"}[args.kind]
    cfg = processes.ProcessConfig(
        kind=kind,
        gamma=args.gamma if kind == "intermittent" else None,
        coeffs=tuple(_parse_float_list(args.coeffs)) if kind == "linear_process" else None,
        innovation=args.innovation,
        post_map=args.post_map,
        scale=args.scale,
        burn_in=args.burn_in,
        seed=args.seed,
    )
    values = processes.simulate(cfg, args.n, args.seed)
    meta = cfg.to_dict() | {"n": args.n, "seed": args.seed}
    _write_series_csv(args.output, values, meta)
    return 0


def _cmd_fit(args) -> int:
    y, X, names = _read_table(args.data, args.response)
    result = ols.fit(DesignMatrix(X), y)
    payload = result.to_dict() | {
        "design_columns": names,
        "config": {"data": args.data, "response": args.response},
    }
    with _open_out(args.output) as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    return 0


def _cmd_test(args) -> int:
    y, X, names = _read_table(args.data, args.response)
    design = DesignMatrix(X)
    tested = _parse_int_list(args.null_cols)
    rss_full, rss_null = ols.nested_rss(design, tested, y)
    full = ols.fit(design, y)
    p, p0 = design.p, design.p - len(set(tested))
    classic = fisher_classic(rss_null, rss_full, design.n, p, p0)
    if args.lrv_method == "truncated":
        lrv = spectral.long_run_variance(
            full.residuals, method="truncated", max_lag=args.max_lag,
            symmetrized=not args.literal_sum,
        )
    else:
        lrv = spectral.long_run_variance(
            full.residuals, method="kernel_f0", bandwidth=args.bandwidth
        )
    corrected = fisher_corrected(rss_null, rss_full, lrv, p, p0)
    payload = {
        "classic": classic.to_dict(),
        "corrected": corrected.to_dict(),
        "lrv": {
            "value": lrv.value,
            "method": lrv.method.value,
            "bandwidth": lrv.bandwidth,
            "symmetrized": lrv.symmetrized,
            "nonpositive": lrv.nonpositive,
        },
        "rss_full": rss_full,
        "rss_null": rss_null,
        "config": {
            "data": args.data, "response": args.response,
            "null_cols": tested, "lrv_method": args.lrv_method,
            "max_lag": args.max_lag, "bandwidth": args.bandwidth,
            "symmetrized": not args.literal_sum,
        },
    }
    with _open_out(args.output) as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    return 0


def _load_spec(args) -> montecarlo.ExperimentSpec:
    with open(args.config, encoding="utf-8") as fh:
        doc = json.load(fh)
    # flags win over config values
    if getattr(args, "replications", None) is not None:
        doc["replications"] = args.replications
    if getattr(args, "master_seed", None) is not None:
        doc["master_seed"] = args.master_seed
    if getattr(args, "n_values", None) is not None:
        doc["n_values"] = _parse_int_list(args.n_values)
    if getattr(args, "max_lag", None) is not None:
        doc["max_lag"] = args.max_lag
    if getattr(args, "alpha", None) is not None:
        doc["alpha"] = args.alpha
    return montecarlo.ExperimentSpec.from_dict(doc)


def _cmd_table(args) -> int:
    spec = _load_spec(args)
    result = montecarlo.run_experiment(spec)
    with _open_out(args.output) as fh:
        fh.write(result.to_csv())
    if args.spec_echo:
        with open(args.spec_echo, "w", encoding="utf-8") as fh:
            fh.write(result.spec_json())
            fh.write("\n")
    if args.plot:
        from .plotting import save_table_figure

        save_table_figure(result, args.plot)
    return 0


def _cmd_acf(args) -> int:
    if (args.config is None) == (args.data is None):
        raise _UsageError("pass exactly one of --config or --data")
    if args.config is not None:
        spec = _load_spec(argparse.Namespace(config=args.config))
        pairs = montecarlo.acf_report(spec, args.max_lag, n=args.n)
        meta = spec.to_dict() | {"max_lag": args.max_lag, "n": args.n}
    else:
        _, data, names = _read_table(args.data, None)
        if args.column not in names:
            raise _UsageError(f"column {args.column!r} not found in {names}")
        series = data[:, names.index(args.column)]
        pairs = montecarlo.acf_report(series, args.max_lag)
        meta = {"data": args.data, "column": args.column, "max_lag": args.max_lag}
    with _open_out(args.output) as fh:
        fh.write(f"# config: {json.dumps(meta, separators=(',', ':'))}\n")
        fh.write("lag,autocovariance\n")
        for k, v in pairs:
            fh.write(f"{k},{_fmt(v)}\n")
    if args.plot:
        from .plotting import save_acf_figure

        save_acf_figure(pairs, args.plot)
    return 0


def _cmd_diagnose(args) -> int:
    _, X, _ = _read_table(args.data, None)
    report = regularity_report(DesignMatrix(X), _parse_int_list(args.lags), args.tol)
    payload = report.to_dict() | {
        "config": {"data": args.data, "lags": _parse_int_list(args.lags),
                   "tol": args.tol},
    }
    with _open_out(args.output) as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "fit": _cmd_fit,
    "test": _cmd_test,
    "table": _cmd_table,
    "acf": _cmd_acf,
    "diagnose": _cmd_diagnose,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"depreg: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"depreg: numerical error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        print(f"depreg: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
