"""Mackey-Glass benchmark series.

Integrates the delay differential equation

    ds/dt = beta * s(t - tau) / (1 + s(t - tau)^n) - Gamma * s(t)

with fixed-step classical Runge-Kutta; delayed values are read from the
stored internal-step history by linear interpolation.  At the benchmark
parameters (beta = 0.2, Gamma = 0.1, tau = 17, n = 10) the sampled series
is chaotic; it is normalized to [0, 1] before entering the reservoir.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DivergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class MGConfig:
    beta: float = 0.2
    gamma_loss: float = 0.1
    tau: float = 17.0
    n_exp: float = 10.0
    dt_sample: float = 3.0
    oversample: int = 30
    history_value: float = 1.2
    transient: int = 1000

    def __post_init__(self):
        if self.tau < 0:
            raise ValueError(f"tau must be nonnegative, got {self.tau}")
        if not self.dt_sample > 0:
            raise ValueError(f"dt_sample must be positive, got {self.dt_sample}")
        if self.oversample < 1:
            raise ValueError(f"oversample must be >= 1, got {self.oversample}")
        if self.transient < 0:
            raise ValueError(f"transient must be nonnegative, got {self.transient}")


def integrate(cfg: MGConfig, n_samples: int) -> np.ndarray:
    """Return ``n_samples`` values at multiples of dt_sample, transient removed."""
    if n_samples <= 0:
        raise ValueError(f"n_samples must be positive, got {n_samples}")
    h = cfg.dt_sample / cfg.oversample
    n_internal = (cfg.transient + n_samples - 1) * cfg.oversample
    lag = cfg.tau / h
    buf = np.empty(n_internal + 1)
    buf[0] = cfg.history_value

    def delayed(idx: float) -> float:
        # index into the internal-step history; constant before t = 0
        if idx <= 0.0:
            return cfg.history_value
        i0 = int(idx)
        frac = idx - i0
        if frac == 0.0:
            return buf[i0]
        return buf[i0] * (1.0 - frac) + buf[i0 + 1] * frac

    beta, gamma, nexp = cfg.beta, cfg.gamma_loss, cfg.n_exp

    def rhs(s: float, s_delayed: float) -> float:
        return beta * s_delayed / (1.0 + s_delayed**nexp) - gamma * s

    delay_free = cfg.tau == 0.0
    if not delay_free and lag < 1.0:
        raise ValueError(
            f"delay tau={cfg.tau} shorter than the internal step {h}; "
            "increase oversample"
        )

    for k in range(n_internal):
        s = buf[k]
        if delay_free:
            k1 = rhs(s, s)
            s2 = s + 0.5 * h * k1
            k2 = rhs(s2, s2)
            s3 = s + 0.5 * h * k2
            k3 = rhs(s3, s3)
            s4 = s + h * k3
            k4 = rhs(s4, s4)
        else:
            sd0 = delayed(k - lag)
            sd_half = delayed(k + 0.5 - lag)
            sd1 = delayed(k + 1.0 - lag)
            k1 = rhs(s, sd0)
            k2 = rhs(s + 0.5 * h * k1, sd_half)
            k3 = rhs(s + 0.5 * h * k2, sd_half)
            k4 = rhs(s + h * k3, sd1)
        s_next = s + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if abs(s_next) > 1e6:
            raise DivergenceError(f"series diverged at internal step {k + 1}")
        buf[k + 1] = s_next

    return buf[:: cfg.oversample][cfg.transient : cfg.transient + n_samples].copy()


@dataclass(frozen=True)
class NormalizedSeries:
    """Min-max normalized series remembering the affine map for round trips."""

    values: np.ndarray
    minimum: float
    maximum: float

    def denormalize(self, x) -> np.ndarray:
        return self.minimum + np.asarray(x, dtype=float) * (self.maximum - self.minimum)


def normalize(series: np.ndarray) -> NormalizedSeries:
    """Affine map of a non-constant series onto [0, 1]."""
    s = np.asarray(series, dtype=float)
    lo, hi = float(np.min(s)), float(np.max(s))
    if hi == lo:
        raise ValueError("cannot normalize a constant series (zero range)")
    return NormalizedSeries((s - lo) / (hi - lo), lo, hi)
