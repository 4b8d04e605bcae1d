"""Seeded simulators for the stationary error processes used in the studies.

Three families:

* a non-mixing AR(1) chain e_{k+1} = (e_k + u_{k+1})/2 with +-1/2 coin-flip
  innovations and uniform stationary law on [-1/2, 1/2];
* orbits of the intermittent interval map x -> x(1+(2x)^g) / 2x-1, whose
  dependence decays only polynomially (short-range regime g < 1/2);
* truncated functions of linear processes built from i.i.d. innovations.

All simulators are deterministic given a seed (numpy PCG64 via default_rng;
a seed may be an int or a SeedSequence).  The batch entry point runs many
replications at once, each replication drawing only from its own seed, so
results are independent of batching.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.signal import lfilter

__all__ = [
    "ProcessConfig",
    "simulate",
    "simulate_batch",
    "simulate_ar1_nonmixing",
    "intermittent_map",
    "simulate_intermittent",
    "simulate_linear_process",
]

DEFAULT_INTERMITTENT_BURN_IN = 10_000

_KINDS = ("ar1_nonmixing", "intermittent", "linear_process")
_INNOVATIONS = ("gaussian", "rademacher", "uniform")
_POST_MAPS = ("identity", "abs", "squared")


@dataclass(frozen=True)
class ProcessConfig:
    """Declarative description of an error process.

    ``scale`` multiplies the simulated series (the studies use 10 to inflate
    the error variance).  ``burn_in`` defaults to 0 except for the
    intermittent map, where the invariant density has no closed form and the
    orbit is started from Uniform[0,1] and burned in.
    """

    kind: str
    gamma: float | None = None
    coeffs: tuple[float, ...] | None = None
    innovation: str = "gaussian"
    post_map: str = "identity"
    scale: float = 1.0
    burn_in: int | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown process kind {self.kind!r}; expected {_KINDS}")
        if self.scale <= 0:
            raise ValueError(f"scale must be > 0, got {self.scale}")
        if self.burn_in is not None and self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")
        if self.kind == "intermittent":
            if self.gamma is None or not 0 < self.gamma < 0.5:
                raise ValueError(
                    "intermittent map exponent must lie in (0, 1/2): beyond 1/2 "
                    "the orbit is long-range dependent and out of scope"
                )
        if self.kind == "linear_process":
            if not self.coeffs:
                raise ValueError("linear_process requires a nonempty coeffs tuple")
            object.__setattr__(self, "coeffs", tuple(float(a) for a in self.coeffs))
            if self.innovation not in _INNOVATIONS:
                raise ValueError(f"innovation must be one of {_INNOVATIONS}")
            if self.post_map not in _POST_MAPS:
                raise ValueError(f"post_map must be one of {_POST_MAPS}")

    @property
    def effective_burn_in(self) -> int:
        if self.burn_in is not None:
            return self.burn_in
        return DEFAULT_INTERMITTENT_BURN_IN if self.kind == "intermittent" else 0

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "scale": self.scale}
        if self.gamma is not None:
            d["gamma"] = self.gamma
        if self.coeffs is not None:
            d["coeffs"] = list(self.coeffs)
        if self.kind == "linear_process":
            d["innovation"] = self.innovation
            d["post_map"] = self.post_map
        if self.burn_in is not None:
            d["burn_in"] = self.burn_in
        if self.seed is not None:
            d["seed"] = self.seed
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ProcessConfig":
        d = dict(d)
        if "coeffs" in d and d["coeffs"] is not None:
            d["coeffs"] = tuple(d["coeffs"])
        return cls(**d)


def _ar1_paths(n: int, seeds) -> np.ndarray:
    reps = len(seeds)
    start = np.empty(reps)
    innov = np.empty((reps, n - 1)) if n > 1 else None
    for i, s in enumerate(seeds):
        rng = np.random.default_rng(s)
        start[i] = rng.uniform(-0.5, 0.5)
        if n > 1:
            innov[i] = np.where(rng.random(n - 1) < 0.5, -0.5, 0.5)
    if n == 1:
        return start[:, None]
    # e_{k+1} = 0.5 e_k + 0.5 u_{k+1}, run as a linear filter per row
    tail, _ = lfilter([0.5], [1.0, -0.5], innov, axis=1, zi=(0.5 * start)[:, None])
    return np.concatenate([start[:, None], tail], axis=1)


def simulate_ar1_nonmixing(n: int, seed) -> np.ndarray:
    """One path of the non-mixing AR(1) chain; every value lies in [-1/2, 1/2]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _ar1_paths(n, [seed])[0]


def intermittent_map(x, gamma: float):
    """One application of the intermittent map (neutral fixed point at 0)."""
    if not 0 < gamma < 1:
        raise ValueError(f"map exponent must be in (0, 1), got {gamma}")
    ax = np.asarray(x, dtype=float)
    if np.any(ax < 0.0) or np.any(ax > 1.0):
        raise ValueError("map argument must lie in [0, 1]")
    out = _apply_map(ax, gamma)
    return float(out) if np.ndim(x) == 0 else out


def _apply_map(x: np.ndarray, gamma: float) -> np.ndarray:
    # x(1 + 2^g x^g) on [0, 1/2), 2x - 1 on [1/2, 1]
    return np.where(x < 0.5, x * (1.0 + (2.0 * x) ** gamma), 2.0 * x - 1.0)


def _intermittent_paths(
    n: int, gamma: float, burn_in: int, seeds, x0: float | None = None
) -> np.ndarray:
    if not 0 < gamma < 0.5:
        raise ValueError(
            "map exponent must lie in (0, 1/2): beyond 1/2 the orbit is "
            "long-range dependent and out of scope"
        )
    if x0 is None:
        x = np.array([np.random.default_rng(s).uniform(0.0, 1.0) for s in seeds])
    else:
        if not 0.0 <= x0 <= 1.0:
            raise ValueError("x0 must lie in [0, 1]")
        x = np.full(len(seeds), float(x0))
    for _ in range(burn_in):
        x = _apply_map(x, gamma)
    out = np.empty((len(seeds), n))
    for t in range(n):
        x = _apply_map(x, gamma)
        out[:, t] = x
    return out


def simulate_intermittent(
    n: int,
    gamma: float,
    burn_in: int = DEFAULT_INTERMITTENT_BURN_IN,
    seed=None,
    x0: float | None = None,
) -> np.ndarray:
    """Orbit of the intermittent map after burn-in.

    The start point is drawn from Uniform[0,1] (or forced via ``x0`` for
    deterministic-orbit checks; note 0 is absorbing, so forcing values whose
    orbit hits 0 exactly yields a constant tail).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return _intermittent_paths(n, gamma, burn_in, [seed], x0=x0)[0]


def _draw_innovations(rng, count: int, innovation: str) -> np.ndarray:
    if innovation == "gaussian":
        return rng.standard_normal(count)
    if innovation == "rademacher":
        return np.where(rng.random(count) < 0.5, -1.0, 1.0)
    if innovation == "uniform":
        return rng.uniform(-0.5, 0.5, count)
    raise ValueError(f"innovation must be one of {_INNOVATIONS}")


def _linear_paths(
    n: int, coeffs, innovation: str, post_map: str, seeds
) -> np.ndarray:
    a = np.asarray(coeffs, dtype=float)
    if a.size == 0:
        raise ValueError("coeffs must be nonempty")
    m = a.size - 1
    out = np.empty((len(seeds), n))
    for i, s in enumerate(seeds):
        rng = np.random.default_rng(s)
        e = _draw_innovations(rng, n + m, innovation)
        core = np.convolve(e, a, mode="valid")
        if post_map == "abs":
            core = np.abs(core)
        elif post_map == "squared":
            core = core**2
        elif post_map != "identity":
            raise ValueError(f"post_map must be one of {_POST_MAPS}")
        out[i] = core - core.mean()
    return out


def simulate_linear_process(
    n: int,
    coeffs,
    innovation: str = "gaussian",
    post_map: str = "identity",
    seed=None,
) -> np.ndarray:
    """f(sum_i a_i u_{k-i}) centered by its empirical mean over the window.

    ``coeffs`` is the finite truncation (a_0..a_m) of a summable coefficient
    sequence; enough extra innovations are drawn so all n outputs are fully
    covered by the moving window.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return _linear_paths(n, coeffs, innovation, post_map, [seed])[0]


def simulate_batch(config: ProcessConfig, n: int, seeds) -> np.ndarray:
    """Simulate one scaled path per seed; row r depends only on seeds[r]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if config.kind == "ar1_nonmixing":
        paths = _ar1_paths(n, seeds)
    elif config.kind == "intermittent":
        paths = _intermittent_paths(n, config.gamma, config.effective_burn_in, seeds)
    else:
        paths = _linear_paths(n, config.coeffs, config.innovation, config.post_map, seeds)
    return config.scale * paths


def simulate(config: ProcessConfig, n: int, seed=None) -> np.ndarray:
    """One scaled path; ``seed`` overrides the seed stored in the config."""
    if seed is None:
        seed = config.seed
    return simulate_batch(config, n, [seed])[0]
