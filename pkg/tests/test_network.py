import numpy as np
import pytest

from fluxlattice.network import (
    DisorderRealization,
    NetworkSpec,
    Topology,
    build_drive_operator,
    build_hamiltonian,
    cross_topology,
    inhomogeneous_deltas,
    isolated_topology,
    linear_topology,
    sample_disorder,
    site_weights,
    uniform_weights,
)
from fluxlattice.pauli import embed_single_site
from fluxlattice.qubit import QubitParams

from conftest import make_spec


def permutation_on_basis(perm, n):
    """Basis-index permutation induced by relabeling qubits (1-based perm)."""
    dim = 2**n
    out = np.empty(dim, dtype=int)
    for b in range(dim):
        new = 0
        for q in range(1, n + 1):
            bit = (b >> (n - q)) & 1
            new |= bit << (n - perm[q - 1])
        out[new] = b
    return out


class TestTopologies:
    def test_linear_paper_chain(self):
        t = linear_topology(5, -0.2)
        assert sorted(t.edges()) == [(1, 2, -0.2), (2, 3, -0.2), (3, 4, -0.2), (4, 5, -0.2)]

    def test_linear_two_qubits(self):
        assert list(linear_topology(2, -0.2).edges()) == [(1, 2, -0.2)]

    def test_linear_uncoupled_limit(self):
        t = linear_topology(5, -1e-6)
        assert all(m == -1e-6 for _, _, m in t.edges())

    def test_cross_star_on_qubit_2(self):
        t = cross_topology(-0.2)
        degrees = (np.abs(t.coupling) > 0).sum(axis=0)
        np.testing.assert_array_equal(degrees, [1, 4, 1, 1, 1])
        assert int((t.coupling != 0).sum()) == 8  # 4 undirected edges

    def test_cross_symmetric(self):
        t = cross_topology(-0.2)
        np.testing.assert_array_equal(t.coupling, t.coupling.T)

    def test_cross_uncoupled_limit(self):
        t = cross_topology(-1e-6)
        assert sorted(t.edges()) == [(1, 2, -1e-6), (2, 3, -1e-6), (2, 4, -1e-6), (2, 5, -1e-6)]

    def test_isolated_topology_is_empty(self):
        assert list(isolated_topology(5).edges()) == []

    def test_positive_coupling_rejected(self):
        with pytest.raises(ValueError):
            linear_topology(5, 0.2)
        with pytest.raises(ValueError):
            cross_topology(1e-9)

    def test_topology_invariants_enforced(self):
        bad = np.zeros((2, 2))
        bad[0, 1] = -0.1  # asymmetric
        with pytest.raises(ValueError):
            Topology(2, bad)
        with pytest.raises(ValueError):
            Topology(2, np.diag([-0.1, 0.0]))


class TestDeltaProfiles:
    def test_no_dispersion(self):
        np.testing.assert_array_equal(inhomogeneous_deltas(0.2, 0.0, 5), np.full(5, 0.2))

    def test_paper_dispersion(self):
        np.testing.assert_allclose(
            inhomogeneous_deltas(0.2, 0.1, 5), [0.18, 0.19, 0.20, 0.21, 0.22], atol=1e-15
        )

    def test_two_point_endpoints(self):
        np.testing.assert_array_equal(inhomogeneous_deltas(1.0, 0.5, 2), [0.5, 1.5])

    def test_dispersion_bounds(self):
        with pytest.raises(ValueError):
            inhomogeneous_deltas(0.2, 1.0, 5)


class TestHamiltonian:
    def test_single_qubit_matrix(self):
        spec = NetworkSpec(
            base=QubitParams(delta=0.2, f=0.52), topology=isolated_topology(1)
        )
        np.testing.assert_allclose(
            build_hamiltonian(spec), [[-0.02, -0.2], [-0.2, 0.02]], atol=1e-15
        )

    def test_five_qubit_dimension(self, la_spec):
        assert build_hamiltonian(la_spec).shape == (32, 32)

    def test_zero_disorder_equals_disorder_off(self, la_spec):
        zero = DisorderRealization(np.zeros(5), np.zeros(5), seed=0)
        with_zero = NetworkSpec(
            base=la_spec.base, topology=la_spec.topology, disorder=zero
        )
        np.testing.assert_array_equal(build_hamiltonian(la_spec), build_hamiltonian(with_zero))

    def test_real_symmetric_exactly(self, la_spec):
        h = build_hamiltonian(la_spec)
        assert h.dtype == np.float64
        np.testing.assert_array_equal(h, h.T)

    def test_matches_brute_force_for_disordered_chain(self):
        # independent construction straight from embedded operators
        dis = sample_disorder(7, 0.1, 3)
        spec = NetworkSpec(
            base=QubitParams(delta=0.2, f=0.52),
            topology=linear_topology(3, -0.2),
            delta_profile=np.array([0.18, 0.20, 0.22]),
            disorder=dis,
        )
        n = 3
        brute = np.zeros((8, 8))
        for i in range(n):
            eps = (1 + dis.lam[i]) * 0.02
            d = spec.delta_profile[i] * (1 + dis.mu[i])
            brute -= eps * embed_single_site("sigma_z", i + 1, n)
            brute -= d * embed_single_site("sigma_x", i + 1, n)
        for i, j in ((0, 1), (1, 2)):
            brute += (
                -0.2
                * (1 + dis.lam[i])
                * (1 + dis.lam[j])
                * embed_single_site("sigma_z", i + 1, n)
                @ embed_single_site("sigma_z", j + 1, n)
            )
        np.testing.assert_allclose(build_hamiltonian(spec), brute, atol=1e-14)

    def test_spin_flip_symmetry_at_half_flux(self):
        spec = make_spec("linear", f=0.5)
        h = build_hamiltonian(spec)
        p = np.eye(32)
        for i in range(1, 6):
            p = p @ embed_single_site("sigma_x", i, 5)
        assert np.max(np.abs(h @ p - p @ h)) < 1e-12

    def test_chain_reflection_symmetry(self, la_spec):
        h = build_hamiltonian(la_spec)
        perm = permutation_on_basis([5, 4, 3, 2, 1], 5)
        np.testing.assert_allclose(h[np.ix_(perm, perm)], h, atol=1e-14)

    def test_cross_peripheral_permutation_symmetry(self, ca_spec):
        h = build_hamiltonian(ca_spec)
        for relabel in ([3, 2, 1, 4, 5], [4, 2, 5, 1, 3]):  # swap and 3-cycle
            perm = permutation_on_basis(relabel, 5)
            np.testing.assert_allclose(h[np.ix_(perm, perm)], h, atol=1e-14)


class TestDriveOperator:
    def test_uniform_profile(self, la_spec):
        expected = sum(embed_single_site("sigma_z", i, 5) for i in range(1, 6))
        np.testing.assert_array_equal(build_drive_operator(la_spec), expected)

    def test_fifth_qubit_profile(self):
        spec = make_spec("cross", drive_weights=site_weights(5, 5))
        np.testing.assert_array_equal(
            build_drive_operator(spec), embed_single_site("sigma_z", 5, 5)
        )

    def test_disordered_profile_weights(self):
        dis = sample_disorder(3, 0.1, 5)
        spec = make_spec("linear", disorder=dis)
        expected = sum(
            (1 + dis.lam[i - 1]) * embed_single_site("sigma_z", i, 5) for i in range(1, 6)
        )
        np.testing.assert_allclose(build_drive_operator(spec), expected, atol=1e-15)


class TestNetworkSpec:
    def test_vector_length_validation(self):
        with pytest.raises(ValueError):
            NetworkSpec(
                base=QubitParams(),
                topology=linear_topology(3, -0.2),
                delta_profile=np.ones(4),
            )
        with pytest.raises(ValueError):
            NetworkSpec(
                base=QubitParams(),
                topology=linear_topology(3, -0.2),
                drive_weights=np.ones(2),
            )

    def test_loop_current_positivity(self):
        dis = DisorderRealization(np.array([-1.5, 0.0]), np.zeros(2), seed=0)
        with pytest.raises(ValueError):
            NetworkSpec(base=QubitParams(), topology=linear_topology(2, -0.2), disorder=dis)

    def test_default_profiles(self, la_spec):
        np.testing.assert_array_equal(la_spec.delta_profile, np.full(5, 0.2))
        np.testing.assert_array_equal(la_spec.drive_weights, uniform_weights(5))
