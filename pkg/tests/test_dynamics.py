import math

import numpy as np
import pytest

from fluxlattice.dynamics import (
    DriveSpec,
    PropagationConfig,
    StepFamily,
    default_step,
    driven_observable_scan,
    extract_harmonic,
    propagate,
    propagate_batch,
    sigma_z_expectations,
)
from fluxlattice.network import build_drive_operator, build_hamiltonian
from fluxlattice.spectra import diagonalize

from conftest import make_spec

T_MAX = 2 * math.pi / 0.2
SAMPLES = tuple(j * T_MAX / 5 for j in range(6))


@pytest.fixture(scope="module")
def la_system(la_spec):
    h0 = build_hamiltonian(la_spec)
    s = diagonalize(h0)
    c = build_drive_operator(la_spec)
    return la_spec, h0, s, c


class TestConfigs:
    def test_step_positive(self):
        with pytest.raises(ValueError):
            PropagationConfig(0.0, 1.0, (0.5,))

    def test_samples_inside_window(self):
        with pytest.raises(ValueError):
            PropagationConfig(0.1, 1.0, (1.5,))
        with pytest.raises(ValueError):
            PropagationConfig(0.1, 1.0, (0.8, 0.2))

    def test_drive_validation(self):
        with pytest.raises(ValueError):
            DriveSpec(-1.0, 0.2, np.eye(2))
        with pytest.raises(ValueError):
            DriveSpec(1.0, 0.0, np.eye(2))

    def test_default_step(self):
        assert default_step(0.6) == pytest.approx(2 * math.pi / (2560 * 0.6))


class TestStationaryCases:
    def test_undriven_ground_state_is_stationary(self, la_system):
        spec, h0, s, c = la_system
        config = PropagationConfig(0.05, T_MAX, SAMPLES)
        drive = DriveSpec(0.0, 0.2, c)
        states = propagate(h0, drive, config, s.ground_state())
        z0 = sigma_z_expectations(np.array([states[0]]).T, 5)
        for st in states[1:]:
            z = sigma_z_expectations(np.array([st]).T, 5)
            np.testing.assert_allclose(z, z0, atol=1e-12)

    def test_undriven_eigenvector_acquires_phase_only(self, la_system):
        spec, h0, s, c = la_system
        k = 3
        config = PropagationConfig(0.05, T_MAX, SAMPLES)
        drive = DriveSpec(0.0, 0.2, c)
        states = propagate(h0, drive, config, s.eigenvectors[:, k])
        for t, st in zip(SAMPLES, states):
            expected = np.exp(-1j * s.eigenvalues[k] * t) * s.eigenvectors[:, k]
            np.testing.assert_allclose(st, expected, atol=1e-10)

    def test_norms_conserved(self, la_system):
        spec, h0, s, c = la_system
        config = PropagationConfig(default_step(0.6), T_MAX, SAMPLES)
        drive = DriveSpec(1e-3, 0.43, c)
        states = propagate(h0, drive, config, s.ground_state())
        for st in states:
            assert abs(np.linalg.norm(st) - 1.0) < 1e-10


class TestStepFamily:
    def test_matches_exact_exponential(self, la_system):
        spec, h0, s, c = la_system
        h = 0.004
        fam = StepFamily(h0, c, h, 1e-3)
        rng = np.random.default_rng(11)
        eye = np.eye(32, dtype=complex)
        for g in 1e-3 * rng.uniform(-1, 1, 8):
            w, q = np.linalg.eigh(h0 + g * c)
            exact = (q * np.exp(-1j * h * w)) @ q.T
            approx = fam.apply(np.array([g]), eye)
            assert np.max(np.abs(exact - approx)) < 1e-13

    def test_zero_amplitude_family(self, la_system):
        spec, h0, s, c = la_system
        fam = StepFamily(h0, c, 0.01, 0.0)
        assert fam.degree == 0
        w, q = np.linalg.eigh(h0)
        exact = (q * np.exp(-1j * 0.01 * w)) @ q.T
        approx = fam.apply(np.array([0.0]), np.eye(32, dtype=complex))
        assert np.max(np.abs(exact - approx)) < 1e-13

    def test_strong_drive_rejected(self, la_system):
        spec, h0, s, c = la_system
        with pytest.raises(ValueError):
            StepFamily(h0, c, 1.0, 100.0)

    def test_batch_path_matches_per_step_eigh(self, la_system):
        spec, h0, s, c = la_system
        config = PropagationConfig(T_MAX / 512, T_MAX, SAMPLES)
        drive = DriveSpec(1e-3, 0.37, c)
        single = propagate(h0, drive, config, s.ground_state())
        batch = propagate_batch(h0, c, 1e-3, np.array([0.37]), config, s.ground_state())
        for a, b in zip(single, batch):
            assert np.max(np.abs(a - b[:, 0])) < 1e-12


class TestConvergence:
    def test_second_order_in_step(self, la_system):
        # midpoint rule: halving the step shrinks the observable change 4x
        spec, h0, s, c = la_system
        def run(n):
            config = PropagationConfig(T_MAX / n, T_MAX, SAMPLES)
            states = propagate_batch(h0, c, 1e-3, np.array([0.6]), config, s.ground_state())
            return np.concatenate([sigma_z_expectations(st, 5).ravel() for st in states])

        base = run(240)
        half = run(480)
        quarter = run(960)
        err1 = np.max(np.abs(base - half))
        err2 = np.max(np.abs(half - quarter))
        assert err1 / err2 == pytest.approx(4.0, rel=0.2)

    def test_weak_drive_keeps_ground_state_overlap(self, la_system):
        spec, h0, s, c = la_system
        config = PropagationConfig(default_step(0.6), T_MAX, (T_MAX,))
        g = s.ground_state()
        (final,) = propagate_batch(h0, c, 1e-3, np.array([0.2, 0.4, 0.6]), config, g)
        overlaps = np.abs(g.conj() @ final)
        assert np.all(overlaps > 0.99)


class TestDrivenScan:
    def test_zero_amplitude_scan_is_flat(self, la_spec):
        omegas = np.linspace(0.2, 0.6, 5)
        scan = driven_observable_scan(la_spec, omegas, T_MAX, 0.0, step=0.05)
        s = diagonalize(build_hamiltonian(la_spec))
        from fluxlattice.spectra import loop_currents

        static = loop_currents(s, 0, la_spec)
        for row in scan:
            np.testing.assert_allclose(row, static, atol=1e-12)

    def test_scan_shape_and_structure(self, la_spec):
        omegas = np.linspace(0.2, 0.6, 9)
        scan = driven_observable_scan(la_spec, omegas, T_MAX, 1e-3, step=T_MAX / 1024)
        assert scan.shape == (9, 5)
        # a weak drive perturbs the currents but does not flatten them
        assert np.ptp(scan, axis=0).max() > 1e-4

    def test_scan_shows_resonant_peaks_and_dips(self):
        # chain at the reservoir working point: responses vary across
        # qubits and are non-monotone in the drive frequency
        spec = make_spec("linear", f=0.45, delta_profile=np.linspace(0.18, 0.22, 5))
        omegas = np.linspace(0.2, 0.6, 33)
        scan = driven_observable_scan(spec, omegas, T_MAX, 1e-3, step=T_MAX / 2048)
        swings = np.sum(np.abs(np.diff(np.sign(np.diff(scan, axis=0)), axis=0)) > 0, axis=0)
        assert swings.max() >= 2
        spread = np.ptp(scan, axis=1)
        assert spread.max() > 1e-3


class TestHarmonicExtraction:
    def test_synthetic_signal_recovery(self):
        t = np.linspace(0.0, 400.0, 20001)
        omega, amp, phase = 0.31, 2.5e-4, 0.7
        y = amp * np.sin(omega * t - phase)
        a, p = extract_harmonic(t, y, omega)
        assert a == pytest.approx(amp, rel=1e-4)
        assert p == pytest.approx(phase, abs=1e-4)

    def test_rejects_nothing_but_measures_leakage(self):
        # a contaminating line far from omega barely moves the estimate
        t = np.linspace(0.0, 400.0, 20001)
        y = 1e-3 * np.sin(0.31 * t - 0.2) + 5e-4 * np.sin(0.9 * t + 0.4)
        a, p = extract_harmonic(t, y, 0.31)
        assert a == pytest.approx(1e-3, rel=1e-4)
        assert p == pytest.approx(0.2, abs=1e-4)
