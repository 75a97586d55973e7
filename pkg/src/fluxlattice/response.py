"""Linear-response susceptibility in the spectral representation.

For probe operators ``A = sum_i a_i (1+lambda_i) sigma_z^(i)`` and
``B = sum_i b_i (1+lambda_i) sigma_z^(i)`` the zero-temperature response
of ``<A>`` to a weak drive ``f(t) * B`` is

    chi(omega) = sum_{n>0} [ <0|A|n><n|B|0> / (omega - (E_n - E_0) + i eta)
                           - <0|B|n><n|A|0> / (omega + (E_n - E_0) + i eta) ]

with hbar = 1 and a small, finite broadening ``eta`` standing in for the
measurement environment.  The n = 0 term cancels identically and is
skipped.  Poles sit at the excitation gaps; a resonance is visible only
where the matrix-element product is nonzero.

The steady-state time-domain signal is
``delta<A>(t) = A_drive * |chi| * sin(omega t - phi)`` with
``chi = |chi| exp(i phi)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks

from .network import NetworkSpec, drive_diagonal
from .spectra import Spectrum, diagonalize
from . import network as _network

#: Default broadening (units of hbar*omega_0).
DEFAULT_ETA = 2.5e-3

#: Default peak prominence as a fraction of the sweep maximum.
DEFAULT_PROMINENCE = 0.01


@dataclass(frozen=True)
class ResponseProbe:
    """Weight profiles of the observable (A) and the perturbation (B)."""

    a_weights: np.ndarray
    b_weights: np.ndarray
    eta: float = DEFAULT_ETA

    def __post_init__(self):
        object.__setattr__(self, "a_weights", np.asarray(self.a_weights, dtype=float))
        object.__setattr__(self, "b_weights", np.asarray(self.b_weights, dtype=float))
        if not self.eta > 0:
            raise ValueError(f"eta must be positive, got {self.eta}")


def uniform_probe(n: int, eta: float = DEFAULT_ETA) -> ResponseProbe:
    """A = B = total current: homogeneous line coupling."""
    w = _network.uniform_weights(n)
    return ResponseProbe(w, w, eta)


def site_probe(n: int, site: int, eta: float = DEFAULT_ETA) -> ResponseProbe:
    """A = total current, B = single-site drive (1-based site index)."""
    return ResponseProbe(_network.uniform_weights(n), _network.site_weights(n, site), eta)


@dataclass(frozen=True)
class SusceptibilitySample:
    """chi at one (omega, f) point with amplitude/phase accessors."""

    omega: float
    chi: complex
    f: float | None = None

    @property
    def amplitude(self) -> float:
        return abs(self.chi)

    @property
    def phase(self) -> float:
        """Principal-value phase in radians, in (-pi, pi]."""
        return float(np.angle(self.chi))

    @property
    def phase_over_pi(self) -> float:
        """Principal-value phase in units of pi, in (-1, 1]."""
        return self.phase / np.pi


def _matrix_elements(s: Spectrum, probe: ResponseProbe, spec: NetworkSpec):
    """<0|A|n> and <n|B|0> for all n (real for real-symmetric H0)."""
    v0 = s.ground_state()
    a_diag = drive_diagonal(spec, probe.a_weights)
    b_diag = drive_diagonal(spec, probe.b_weights)
    an = s.eigenvectors.T @ (a_diag * v0)
    bn = s.eigenvectors.T @ (b_diag * v0)
    return an, bn


def susceptibility(
    s: Spectrum, probe: ResponseProbe, spec: NetworkSpec, omega: float
) -> complex:
    """chi(omega) from the spectral sum over excited states."""
    return complex(chi_curve(s, probe, spec, np.array([float(omega)]))[0])


def chi_curve(
    s: Spectrum, probe: ResponseProbe, spec: NetworkSpec, omegas: np.ndarray
) -> np.ndarray:
    """Vectorized chi over a frequency grid (no ordering requirement)."""
    an, bn = _matrix_elements(s, probe, spec)
    weight = (an * bn)[1:]
    gaps = s.gaps()[1:]
    w = np.asarray(omegas, dtype=float)[:, None]
    resonant = weight / (w - gaps + 1j * probe.eta)
    antiresonant = weight / (w + gaps + 1j * probe.eta)
    return np.sum(resonant - antiresonant, axis=1)


@dataclass(frozen=True)
class PeakTable:
    """Local maxima of a sweep amplitude above a prominence threshold."""

    indices: np.ndarray
    omegas: np.ndarray
    amplitudes: np.ndarray
    prominences: np.ndarray

    def __len__(self) -> int:
        return self.indices.size


def detect_peaks(
    omegas: np.ndarray, amplitude: np.ndarray, prominence_fraction: float = DEFAULT_PROMINENCE
) -> PeakTable:
    amp = np.asarray(amplitude, dtype=float)
    if amp.size == 0 or np.max(amp) == 0.0:
        empty = np.array([], dtype=int)
        return PeakTable(empty, empty.astype(float), empty.astype(float), empty.astype(float))
    idx, props = find_peaks(amp, prominence=prominence_fraction * np.max(amp))
    return PeakTable(idx, np.asarray(omegas)[idx], amp[idx], props["prominences"])


@dataclass(frozen=True)
class FrequencySweep:
    """chi sampled on an increasing frequency grid, plus derived spectra."""

    omegas: np.ndarray
    chi: np.ndarray
    f: float
    eta: float
    peaks: PeakTable

    @property
    def amplitude(self) -> np.ndarray:
        return np.abs(self.chi)

    @property
    def phase_over_pi(self) -> np.ndarray:
        """Principal value of arg(chi)/pi along the sweep."""
        return np.angle(self.chi) / np.pi

    @property
    def phase_over_pi_unwrapped(self) -> np.ndarray:
        """Phase unwrapped along the sweep (2 pi jump detector), in units of pi."""
        return np.unwrap(np.angle(self.chi)) / np.pi

    @property
    def samples(self) -> list[SusceptibilitySample]:
        return [
            SusceptibilitySample(float(w), complex(c), self.f)
            for w, c in zip(self.omegas, self.chi)
        ]

    def dominant_peak(self) -> float:
        """Location of the most prominent amplitude peak."""
        if len(self.peaks) == 0:
            raise ValueError("sweep has no peaks above the prominence threshold")
        return float(self.peaks.omegas[np.argmax(self.peaks.prominences)])


def sweep_frequency(
    s: Spectrum,
    probe: ResponseProbe,
    spec: NetworkSpec,
    omega_grid: np.ndarray,
    prominence_fraction: float = DEFAULT_PROMINENCE,
) -> FrequencySweep:
    """Evaluate chi over a strictly increasing frequency grid."""
    w = np.asarray(omega_grid, dtype=float)
    if w.size == 0:
        raise ValueError("empty frequency grid")
    if w.size > 1 and not np.all(np.diff(w) > 0):
        raise ValueError("frequency grid must be strictly increasing")
    chi = chi_curve(s, probe, spec, w)
    peaks = detect_peaks(w, np.abs(chi), prominence_fraction)
    return FrequencySweep(w, chi, spec.base.f, probe.eta, peaks)


@dataclass(frozen=True)
class FluxFrequencyMap:
    """chi on a (flux, frequency) grid; row i corresponds to f_grid[i]."""

    f_grid: np.ndarray
    omega_grid: np.ndarray
    chi: np.ndarray
    eta: float

    @property
    def amplitude(self) -> np.ndarray:
        return np.abs(self.chi)

    @property
    def phase_over_pi(self) -> np.ndarray:
        return np.angle(self.chi) / np.pi

    @property
    def phase_over_pi_unwrapped(self) -> np.ndarray:
        """Unwrapped along the frequency axis at each fixed flux."""
        return np.unwrap(np.angle(self.chi), axis=1) / np.pi

    def cut_at_omega(self, omega: float) -> np.ndarray:
        """Amplitude versus flux at the grid frequency closest to ``omega``."""
        k = int(np.argmin(np.abs(self.omega_grid - omega)))
        return self.amplitude[:, k]


def sweep_flux_frequency(
    spec_template: NetworkSpec,
    probe: ResponseProbe,
    f_grid: np.ndarray,
    omega_grid: np.ndarray,
) -> FluxFrequencyMap:
    """Rebuild and rediagonalize the network at each flux, sweep at each."""
    f_grid = np.asarray(f_grid, dtype=float)
    omega_grid = np.asarray(omega_grid, dtype=float)
    if f_grid.size == 0 or omega_grid.size == 0:
        raise ValueError("flux and frequency grids must be non-empty")
    for grid, name in ((f_grid, "flux"), (omega_grid, "frequency")):
        if grid.size > 1 and not np.all(np.diff(grid) > 0):
            raise ValueError(f"{name} grid must be strictly increasing")
    rows = []
    for f in f_grid:
        spec = spec_template.at_flux(float(f))
        s = diagonalize(_network.build_hamiltonian(spec))
        rows.append(chi_curve(s, probe, spec, omega_grid))
    return FluxFrequencyMap(f_grid, omega_grid, np.array(rows), probe.eta)


def time_domain_response(chi: complex, amplitude: float, omega: float, t) -> np.ndarray:
    """Steady-state signal ``A * |chi| * sin(omega t - phi)``."""
    return amplitude * np.abs(chi) * np.sin(omega * np.asarray(t, dtype=float) - np.angle(chi))
