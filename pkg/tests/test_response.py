import numpy as np
import pytest

from fluxlattice.network import build_hamiltonian, isolated_topology, NetworkSpec, site_weights
from fluxlattice.qubit import QubitParams
from fluxlattice.response import (
    ResponseProbe,
    SusceptibilitySample,
    chi_curve,
    site_probe,
    susceptibility,
    sweep_flux_frequency,
    sweep_frequency,
    time_domain_response,
    uniform_probe,
)
from fluxlattice.spectra import diagonalize

from conftest import make_spec

ETA = 2.5e-3
GRID = np.arange(0.001, 1.0001, 0.001)


@pytest.fixture(scope="module")
def single_qubit():
    spec = NetworkSpec(base=QubitParams(delta=0.2, f=0.52), topology=isolated_topology(1))
    s = diagonalize(build_hamiltonian(spec))
    return spec, s


class TestTwoLevelClosedForm:
    def test_static_value(self, single_qubit):
        spec, s = single_qubit
        probe = uniform_probe(1, ETA)
        chi0 = susceptibility(s, probe, spec, 0.0)
        gap = s.eigenvalues[1] - s.eigenvalues[0]
        m = (s.eigenvectors[:, 0] @ (np.array([1.0, -1.0]) * s.eigenvectors[:, 1])) ** 2
        # Evaluating the spectral sum at omega = 0 for A = B = sigma_z gives
        # -2 |<0|z|1>|^2 gap / (gap^2 + eta^2); the response is diamagnetic.
        expected = -2.0 * m * gap / (gap**2 + ETA**2)
        assert chi0.imag == pytest.approx(0.0, abs=1e-12)
        assert chi0.real == pytest.approx(expected, abs=1e-12)

    def test_resonance_height_scales_with_inverse_eta(self, single_qubit):
        spec, s = single_qubit
        gap = s.eigenvalues[1] - s.eigenvalues[0]
        chi_res = susceptibility(s, uniform_probe(1, ETA), spec, gap)
        m = (s.eigenvectors[:, 0] @ (np.array([1.0, -1.0]) * s.eigenvectors[:, 1])) ** 2
        assert abs(chi_res) == pytest.approx(m / ETA, rel=2e-2)


class TestSweeps:
    def test_uncoupled_single_lorentzian(self, uncoupled_spec, uncoupled_spectrum):
        sweep = sweep_frequency(uncoupled_spectrum, uniform_probe(5, ETA), uncoupled_spec, GRID)
        assert len(sweep.peaks) == 1
        assert sweep.dominant_peak() == pytest.approx(0.402, abs=0.005)

    def test_coupled_multi_resonance(self, la_spec, la_spectrum):
        sweep = sweep_frequency(la_spectrum, uniform_probe(5, ETA), la_spec, GRID)
        dominant = sweep.dominant_peak()
        assert dominant == pytest.approx(0.18, abs=0.02)
        assert np.any(sweep.peaks.omegas > dominant)

    def test_phase_step_at_main_resonance(self, la_spec, la_spectrum):
        # phase rolls from -pi below the resonance to ~0 above it
        sweep = sweep_frequency(la_spectrum, uniform_probe(5, ETA), la_spec, GRID)
        peak = sweep.dominant_peak()
        below = np.searchsorted(sweep.omegas, peak - 0.02)
        above = np.searchsorted(sweep.omegas, peak + 0.02)
        step = sweep.phase_over_pi_unwrapped[above] - sweep.phase_over_pi_unwrapped[below]
        assert abs(step) == pytest.approx(1.0, abs=0.15)

    def test_zero_probe_gives_zero(self, la_spec, la_spectrum):
        probe = ResponseProbe(np.zeros(5), np.zeros(5), ETA)
        sweep = sweep_frequency(la_spectrum, probe, la_spec, GRID[:100])
        np.testing.assert_array_equal(sweep.chi, np.zeros(100))
        assert len(sweep.peaks) == 0

    def test_grid_validation(self, la_spec, la_spectrum):
        probe = uniform_probe(5, ETA)
        with pytest.raises(ValueError):
            sweep_frequency(la_spectrum, probe, la_spec, np.array([]))
        with pytest.raises(ValueError):
            sweep_frequency(la_spectrum, probe, la_spec, np.array([0.2, 0.1]))


class TestAnalyticProperties:
    def test_conjugation_under_frequency_reversal(self, la_spec, la_spectrum):
        probe = uniform_probe(5, ETA)
        omegas = np.array([0.05, 0.18, 0.3, 0.7])
        plus = chi_curve(la_spectrum, probe, la_spec, omegas)
        minus = chi_curve(la_spectrum, probe, la_spec, -omegas)
        np.testing.assert_allclose(minus, np.conj(plus), atol=1e-12)

    def test_dissipative_sign(self, la_spec, la_spectrum):
        chi = chi_curve(la_spectrum, uniform_probe(5, ETA), la_spec, GRID)
        assert np.all(chi.imag <= 0)

    def test_high_frequency_decay(self, la_spec, la_spectrum):
        probe = uniform_probe(5, ETA)
        sweep = sweep_frequency(la_spectrum, probe, la_spec, GRID)
        tail = abs(susceptibility(la_spectrum, probe, la_spec, 10.0))
        assert tail < 1e-2 * sweep.amplitude.max()

    def test_peaks_sit_on_bright_gaps(self, la_spec, la_spectrum):
        from fluxlattice.network import drive_diagonal

        probe = uniform_probe(5, ETA)
        sweep = sweep_frequency(la_spectrum, probe, la_spec, GRID)
        v0 = la_spectrum.ground_state()
        an = la_spectrum.eigenvectors.T @ (drive_diagonal(la_spec, np.ones(5)) * v0)
        weights = an[1:] ** 2
        gaps = la_spectrum.gaps()[1:]
        bright = gaps[weights > 1e-12]
        for peak_omega in sweep.peaks.omegas:
            assert np.min(np.abs(bright - peak_omega)) < 2 * ETA

    def test_probe_exchange_symmetry(self, la_spec, la_spectrum, ca_spec, ca_spectrum):
        omegas = np.array([0.1, 0.18, 0.45, 0.8])
        for spec, s in ((la_spec, la_spectrum), (ca_spec, ca_spectrum)):
            ab = ResponseProbe(np.ones(5), site_weights(5, 5), ETA)
            ba = ResponseProbe(site_weights(5, 5), np.ones(5), ETA)
            np.testing.assert_allclose(
                chi_curve(s, ab, spec, omegas), chi_curve(s, ba, spec, omegas), atol=1e-12
            )

    def test_eta_must_be_positive(self):
        with pytest.raises(ValueError):
            ResponseProbe(np.ones(5), np.ones(5), 0.0)


@pytest.fixture(scope="module")
def small_map(la_spec):
    f_grid = np.linspace(0.40, 0.60, 41)
    omega_grid = np.linspace(0.02, 0.8, 160)
    return sweep_flux_frequency(la_spec, uniform_probe(5, ETA), f_grid, omega_grid)


class TestFluxFrequencyMap:
    def test_low_frequency_cut_single_peak(self, small_map):
        cut = small_map.cut_at_omega(0.1)
        from scipy.signal import find_peaks

        peaks, _ = find_peaks(cut, prominence=0.01 * cut.max())
        assert len(peaks) == 1
        assert small_map.f_grid[peaks[0]] == pytest.approx(0.5, abs=0.02)

    def test_high_frequency_cut_splits_symmetrically(self, small_map):
        # the single low-frequency peak is replaced by symmetric peak pairs
        # straddling f = 1/2 (the dominant pair, plus a satellite pair from
        # the collective modes)
        cut = small_map.cut_at_omega(0.5)
        from scipy.signal import find_peaks

        peaks, _ = find_peaks(cut, prominence=0.01 * cut.max())
        centers = small_map.f_grid[peaks]
        assert len(peaks) >= 2 and len(peaks) % 2 == 0
        assert not np.any(np.abs(centers - 0.5) < 0.01)
        np.testing.assert_allclose(centers + centers[::-1], 1.0, atol=0.01)
        tallest = np.argsort(cut[peaks])[-2:]
        assert centers[tallest[0]] + centers[tallest[1]] == pytest.approx(1.0, abs=0.01)

    def test_map_flux_reflection_symmetry(self, small_map):
        amp = small_map.amplitude
        np.testing.assert_allclose(amp, amp[::-1, :], atol=1e-10)

    def test_grid_validation(self, la_spec):
        probe = uniform_probe(5, ETA)
        with pytest.raises(ValueError):
            sweep_flux_frequency(la_spec, probe, np.array([]), GRID[:10])


class TestTimeDomain:
    def test_in_phase_for_real_positive_chi(self):
        t = np.linspace(0, 10, 101)
        out = time_domain_response(2.0 + 0j, 0.5, 0.3, t)
        np.testing.assert_allclose(out, 1.0 * np.sin(0.3 * t), atol=1e-14)

    def test_quarter_period_lag_for_imaginary_chi(self):
        t = np.linspace(0, 10, 101)
        out = time_domain_response(3.0j, 1.0, 0.5, t)
        np.testing.assert_allclose(out, 3.0 * np.sin(0.5 * t - np.pi / 2), atol=1e-14)


class TestSampleType:
    def test_amplitude_and_phase_accessors(self):
        s = SusceptibilitySample(0.3, 1.0 - 1.0j)
        assert s.amplitude == pytest.approx(np.sqrt(2))
        assert s.phase_over_pi == pytest.approx(-0.25)
        assert -1.0 < s.phase_over_pi <= 1.0

    def test_sweep_exposes_samples(self, la_spec, la_spectrum):
        sweep = sweep_frequency(la_spectrum, uniform_probe(5, ETA), la_spec, GRID[:5])
        samples = sweep.samples
        assert len(samples) == 5
        assert samples[2].omega == pytest.approx(GRID[2])
