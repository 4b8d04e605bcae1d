"""Figure rendering for the CLI report path (written next to the CSV output)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["save_acf_figure", "save_table_figure"]


def save_acf_figure(pairs, path, title: str = "Residual autocovariances"):
    """Stem plot of (lag, autocovariance) pairs."""
    lags = [k for k, _ in pairs]
    vals = [v for _, v in pairs]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.stem(lags, vals, basefmt="C7-")
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.set_xlabel("lag")
    ax.set_ylabel("autocovariance")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_table_figure(result, path):
    """Rejection frequency against sample size, with the nominal level marked."""
    ns = [row.n for row in result.rows]
    freqs = [row.rejection_frequency for row in result.rows]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(ns, freqs, "o-", label="rejection frequency")
    ax.axhline(
        result.spec.alpha, color="C3", ls="--", lw=1.0,
        label=f"nominal {result.spec.alpha:g}",
    )
    ax.set_xlabel("sample size n")
    ax.set_ylabel("rejection frequency")
    ax.set_ylim(0.0, max(1.0, max(freqs) * 1.05))
    ax.set_title(f"{result.spec.design_kind}, {result.spec.process.kind}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
