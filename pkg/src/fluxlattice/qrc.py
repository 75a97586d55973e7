"""Frequency-encoded quantum reservoir computing on a flux-qubit network.

Each normalized input ``s in [0, 1]`` selects a drive frequency
``omega = omega_min + s (omega_max - omega_min)``.  The network starts in
the ground state of H0, is driven for ``t_max`` with
``f(t) = A sin(omega t)``, and the qubit currents ``<sigma_z^(i)>`` are
read at ``n_t`` equally spaced instants.  The flattened measurements plus
a trailing constant slot form the feature vector ``m_k`` (dimension
``d * n_t + 1``).

Memory of past inputs enters through the linear recursion

    r_k = gamma * S^{n_S} r_{k-1} + B m_k,        r_0 = 0,

where S is the cyclic shift on R^{l_r} and B embeds the feature vector by
interleaving zeros with stride ``floor(l_r / len(m))``.  A linear readout
``w`` trained by least squares maps reservoir states to targets; chaotic
series are forecast closed-loop by feeding each (clamped) prediction back
as the next input, and scored by the Valid Prediction Time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import PropagationConfig, default_step, propagate_batch, sigma_z_expectations
from .network import NetworkSpec, build_hamiltonian, drive_diagonal
from .spectra import diagonalize


@dataclass(frozen=True)
class ReservoirConfig:
    """Reservoir and encoding parameters (defaults follow the benchmark runs)."""

    gamma: float = 0.6
    n_shift: int = 1
    l_r: int = 400
    n_t: int = 6
    omega_min: float = 0.2
    omega_max: float = 0.6
    drive_amplitude: float = 1e-3
    t_max: float | None = None
    washout: int = 50
    bias_mode: str = "bias"  # "bias": trailing slot is 1; "input": trailing slot is s
    step: float | None = None
    sigma_x_features: bool = False

    def __post_init__(self):
        if not 0 < self.gamma < 1:
            raise ValueError(f"gamma must be in (0, 1), got {self.gamma}")
        if not self.omega_min < self.omega_max:
            raise ValueError("omega_min must be below omega_max")
        if not self.omega_min > 0:
            raise ValueError("omega_min must be positive")
        if self.n_t < 2:
            raise ValueError("need at least 2 sample instants")
        if self.drive_amplitude < 0:
            raise ValueError("drive_amplitude must be nonnegative")
        if self.washout < 0:
            raise ValueError("washout must be nonnegative")
        if self.bias_mode not in ("bias", "input"):
            raise ValueError(f"unknown bias_mode {self.bias_mode!r}")

    @property
    def duration(self) -> float:
        """Drive window per input; one period of omega_min unless overridden."""
        return 2.0 * math.pi / self.omega_min if self.t_max is None else self.t_max

    @property
    def propagation_step(self) -> float:
        return default_step(self.omega_max) if self.step is None else self.step

    def sample_times(self) -> tuple:
        """The n_t equally spaced measurement instants t_j = j t_max / (n_t - 1)."""
        return tuple(j * self.duration / (self.n_t - 1) for j in range(self.n_t))

    def feature_length(self, n_qubits: int) -> int:
        d = 2 * n_qubits if self.sigma_x_features else n_qubits
        return d * self.n_t + 1

    def validate_dimensions(self, n_qubits: int) -> None:
        if self.l_r < self.feature_length(n_qubits):
            raise ValueError(
                f"l_r={self.l_r} smaller than the feature dimension "
                f"{self.feature_length(n_qubits)}"
            )


def encode_frequency(s: float, cfg: ReservoirConfig) -> float:
    """Map a normalized input in [0, 1] linearly onto the encoding band."""
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"input {s} outside [0, 1]; clamp before encoding")
    return cfg.omega_min + s * (cfg.omega_max - cfg.omega_min)


def decode_frequency(omega: float, cfg: ReservoirConfig) -> float:
    """Inverse of :func:`encode_frequency`."""
    return (omega - cfg.omega_min) / (cfg.omega_max - cfg.omega_min)


class FeatureKernel:
    """Reusable machinery for measuring feature vectors on one network.

    Holds the Hamiltonian, its ground state and the drive coupling so that
    repeated measurements (training sets, closed-loop forecasts) skip the
    rebuild.  All propagations share one midpoint time grid.
    """

    def __init__(self, spec: NetworkSpec, cfg: ReservoirConfig):
        cfg.validate_dimensions(spec.n_qubits)
        self.spec = spec
        self.cfg = cfg
        self.h0 = build_hamiltonian(spec)
        self.ground = diagonalize(self.h0).ground_state()
        self.coupling = np.diag(drive_diagonal(spec))
        self.config = PropagationConfig(
            cfg.propagation_step, cfg.duration, cfg.sample_times()
        )
        if cfg.sigma_x_features:
            from .pauli import embed_single_site

            n = spec.n_qubits
            self._x_ops = [embed_single_site("sigma_x", i, n) for i in range(1, n + 1)]
        else:
            self._x_ops = None

    def measure_batch(self, inputs: np.ndarray) -> np.ndarray:
        """Feature matrix (len(inputs), d*n_t + 1) for normalized inputs."""
        s = np.asarray(inputs, dtype=float)
        if np.any((s < 0) | (s > 1)):
            raise ValueError("inputs must lie in [0, 1]; clamp before encoding")
        omegas = self.cfg.omega_min + s * (self.cfg.omega_max - self.cfg.omega_min)
        states = propagate_batch(
            self.h0, self.coupling, self.cfg.drive_amplitude, omegas, self.config, self.ground
        )
        n = self.spec.n_qubits
        blocks = []
        for st in states:
            z = sigma_z_expectations(st, n)
            if self._x_ops is not None:
                x = np.stack([np.real(np.sum(st.conj() * (op @ st), axis=0)) for op in self._x_ops], axis=1)
                z = np.concatenate([z, x], axis=1)
            blocks.append(z)
        feats = np.concatenate(blocks, axis=1)
        trailing = np.ones((s.size, 1)) if self.cfg.bias_mode == "bias" else s[:, None]
        return np.concatenate([feats, trailing], axis=1)

    def measure(self, s: float) -> np.ndarray:
        return self.measure_batch(np.array([s]))[0]


def measure_features(spec: NetworkSpec, omega: float, cfg: ReservoirConfig) -> np.ndarray:
    """Feature vector for one drive frequency (kernel built on the fly)."""
    kernel = FeatureKernel(spec, cfg)
    return kernel.measure(decode_frequency(omega, cfg))


def shift(r: np.ndarray, n_shift: int) -> np.ndarray:
    """Cyclic shift: entry i of the result is r[(i + n_shift) mod l_r]."""
    return np.roll(np.asarray(r), -n_shift)


def lengthen(m: np.ndarray, l_r: int) -> np.ndarray:
    """Embed a feature vector into R^l_r, interleaving zeros at fixed stride."""
    m = np.asarray(m, dtype=float)
    if l_r < m.size:
        raise ValueError(f"l_r={l_r} smaller than the feature dimension {m.size}")
    stride = l_r // m.size
    out = np.zeros(l_r)
    out[np.arange(m.size) * stride] = m
    return out


def unlengthen(r: np.ndarray, n_features: int) -> np.ndarray:
    """Read back the stride positions written by :func:`lengthen`."""
    r = np.asarray(r)
    stride = r.size // n_features
    return r[np.arange(n_features) * stride].copy()


def reservoir_step(r_prev: np.ndarray, m: np.ndarray, cfg: ReservoirConfig) -> np.ndarray:
    """One recursion step ``gamma * S^n_S r + B m``."""
    r_prev = np.asarray(r_prev, dtype=float)
    return cfg.gamma * shift(r_prev, cfg.n_shift) + lengthen(m, r_prev.size)


def run_reservoir(features: np.ndarray, cfg: ReservoirConfig) -> np.ndarray:
    """Stack of reservoir states r_1..r_K for a feature matrix (K, len(m))."""
    features = np.asarray(features, dtype=float)
    k, _ = features.shape
    states = np.empty((k, cfg.l_r))
    r = np.zeros(cfg.l_r)
    for i in range(k):
        r = reservoir_step(r, features[i], cfg)
        states[i] = r
    return states


@dataclass(frozen=True)
class Readout:
    """Trained linear readout weights."""

    weights: np.ndarray

    def predict(self, r: np.ndarray) -> float:
        return float(self.weights @ np.asarray(r))


#: Relative singular-value cutoff of the least-squares solve.
LSTSQ_RCOND = 1e-10


def train_readout(states: np.ndarray, targets: np.ndarray) -> Readout:
    """Minimum-norm least-squares readout (pseudo-inverse with SV cutoff).

    Coincides with the normal-equations solution ``(R^T R)^-1 R^T y``
    whenever ``R^T R`` is well conditioned, but stays finite when the
    interleaved zero columns make it singular.
    """
    r = np.asarray(states, dtype=float)
    y = np.asarray(targets, dtype=float)
    if r.ndim != 2 or r.shape[0] == 0:
        raise ValueError("states must be a non-empty 2-d matrix")
    if r.shape[0] != y.shape[0]:
        raise ValueError("states and targets disagree on the number of rows")
    if not np.any(r):
        raise ValueError("cannot train a readout on an all-zero state matrix")
    w, *_ = np.linalg.lstsq(r, y, rcond=LSTSQ_RCOND)
    return Readout(w)


def forecast_closed_loop(
    spec: NetworkSpec,
    cfg: ReservoirConfig,
    readout: Readout,
    warm_state: np.ndarray,
    last_input: float,
    horizon: int,
    kernel: FeatureKernel | None = None,
) -> np.ndarray:
    """Multi-step forecast by feeding each prediction back as the next input.

    ``warm_state`` is the reservoir state after the final training input
    (``last_input``, which the recursion has already absorbed; it is kept
    in the signature for bookkeeping).  Each iteration predicts
    ``y = w . r``, clamps it to [0, 1], measures the features at the
    encoded frequency and advances the reservoir.  Returns the ``horizon``
    clamped predictions.
    """
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    if kernel is None:
        kernel = FeatureKernel(spec, cfg)
    r = np.asarray(warm_state, dtype=float).copy()
    preds = np.empty(horizon)
    for t in range(horizon):
        y = readout.predict(r)
        if not math.isfinite(y):
            raise FloatingPointError(f"non-finite prediction at forecast step {t}")
        y = min(1.0, max(0.0, y))
        preds[t] = y
        m = kernel.measure(y)
        r = reservoir_step(r, m, cfg)
    return preds


def vpt(predicted: np.ndarray, truth: np.ndarray, epsilon: float, sigma: float) -> int:
    """Valid Prediction Time: steps before the normalized error reaches epsilon.

    Returns the largest T such that ((pred_t - truth_t) / sigma)^2 < eps^2
    for every t <= T, in integer units of the discretized time; the full
    series length if the threshold is never reached.
    """
    p = np.asarray(predicted, dtype=float)
    y = np.asarray(truth, dtype=float)
    if p.shape != y.shape:
        raise ValueError(f"length mismatch: {p.shape} vs {y.shape}")
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    violations = ((p - y) / sigma) ** 2 >= epsilon**2
    if not violations.any():
        return p.size
    return int(np.argmax(violations))


@dataclass(frozen=True)
class SeriesTask:
    """One trained forecasting task: data split, readout, forecast, score."""

    inputs: np.ndarray
    targets: np.ndarray
    readout: Readout
    train_predictions: np.ndarray
    forecast: np.ndarray
    truth: np.ndarray
    vpt: int
    sigma: float
    epsilon: float


def run_series_task(
    spec: NetworkSpec,
    cfg: ReservoirConfig,
    series: np.ndarray,
    n_train: int = 1000,
    horizon: int = 600,
    epsilon: float = 0.3,
    kernel: FeatureKernel | None = None,
) -> SeriesTask:
    """Train on one-step-ahead pairs, then forecast closed loop and score.

    The series (already normalized to [0, 1]) is split as: ``washout``
    inputs discarded from regression, ``n_train`` training pairs
    ``(r_k, s_{k+1})``, one further input absorbed so the forecast starts
    past the last target, then ``horizon`` truth values.  ``sigma`` is the
    standard deviation of the whole supplied series.
    """
    series = np.asarray(series, dtype=float)
    n_in = cfg.washout + n_train + 1
    needed = n_in + horizon
    if series.size < needed:
        raise ValueError(f"series too short: need {needed} samples, got {series.size}")
    if kernel is None:
        kernel = FeatureKernel(spec, cfg)
    inputs = series[:n_in]
    features = kernel.measure_batch(inputs)
    states = run_reservoir(features, cfg)
    rows = states[cfg.washout : n_in - 1]
    targets = series[cfg.washout + 1 : n_in]
    readout = train_readout(rows, targets)
    forecast = forecast_closed_loop(
        spec, cfg, readout, states[-1], float(inputs[-1]), horizon, kernel=kernel
    )
    truth = series[n_in : n_in + horizon]
    sigma = float(series.std())
    score = vpt(forecast, truth, epsilon, sigma)
    return SeriesTask(
        inputs=inputs,
        targets=targets,
        readout=readout,
        train_predictions=rows @ readout.weights,
        forecast=forecast,
        truth=truth,
        vpt=score,
        sigma=sigma,
        epsilon=epsilon,
    )
