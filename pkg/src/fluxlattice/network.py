"""Network assembly: topologies, disorder, Hamiltonian and drive operator.

The network Hamiltonian of ``n`` inductively coupled flux qubits is

    H0 = sum_i -(eps_i sigma_z^(i) + delta_i sigma_x^(i))
         + 1/2 sum_{i != j} m_ij (1+lambda_i)(1+lambda_j) sigma_z^(i) sigma_z^(j)

with ``eps_i = i_s (1+lambda_i) (f - 1/2)``, per-qubit tunneling energies
``delta_i = delta_profile_i * (1+mu_i)`` and mutual-inductance energies
``m_ij = M_ij I_S^2 < 0`` stored directly (the figures of merit are
parameterized by the coupling energy, not by M and I_S separately).

A transmission line drive enters as ``H_I(t) = f(t) * C`` with
``C = sum_i w_i (1+lambda_i) sigma_z^(i)``; the scalar prefactors of the
physical mutual inductance are absorbed into ``f(t) = A sin(omega t)``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .pauli import MAX_QUBITS, embed_single_site, sigma_z_diagonal
from .qubit import QubitParams
from .rng import Xoshiro256PlusPlus


@dataclass(frozen=True)
class Topology:
    """Symmetric coupling-energy matrix with zero diagonal.

    Nonzero entries are the mutual-inductance energies ``m_ij`` and must be
    negative (a circulating current induces an opposing flux in its
    neighbors).
    """

    n_qubits: int
    coupling: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coupling, dtype=float)
        if c.shape != (self.n_qubits, self.n_qubits):
            raise ValueError(f"coupling must be {self.n_qubits}x{self.n_qubits}")
        if not np.array_equal(c, c.T):
            raise ValueError("coupling matrix must be exactly symmetric")
        if np.any(np.diag(c) != 0.0):
            raise ValueError("coupling diagonal must be exactly zero")
        if np.any(c > 0.0):
            raise ValueError("coupling energies must be negative (or zero)")
        object.__setattr__(self, "coupling", c)

    def edges(self):
        """Yield (i, j, m_ij) for i < j with m_ij != 0, 1-based indices."""
        for i in range(self.n_qubits):
            for j in range(i + 1, self.n_qubits):
                if self.coupling[i, j] != 0.0:
                    yield i + 1, j + 1, self.coupling[i, j]


def linear_topology(n: int, coupling_energy: float) -> Topology:
    """Nearest-neighbor chain: edges (i, i+1) for i = 1..n-1."""
    if n < 2:
        raise ValueError("a chain needs at least 2 qubits")
    if not coupling_energy < 0:
        raise ValueError(f"coupling energy must be negative, got {coupling_energy}")
    c = np.zeros((n, n))
    for i in range(n - 1):
        c[i, i + 1] = c[i + 1, i] = coupling_energy
    return Topology(n, c)


def cross_topology(coupling_energy: float) -> Topology:
    """Five-qubit star with qubit 2 central: edges (2,1), (2,3), (2,4), (2,5)."""
    if not coupling_energy < 0:
        raise ValueError(f"coupling energy must be negative, got {coupling_energy}")
    c = np.zeros((5, 5))
    for j in (0, 2, 3, 4):
        c[1, j] = c[j, 1] = coupling_energy
    return Topology(5, c)


def isolated_topology(n: int) -> Topology:
    """No couplings at all (the strict m -> 0 limit of either geometry)."""
    if n < 1:
        raise ValueError("need at least 1 qubit")
    return Topology(n, np.zeros((n, n)))


@dataclass(frozen=True)
class DisorderRealization:
    """Fractional shifts of the loop currents (lambda) and tunneling (mu)."""

    lam: np.ndarray
    mu: np.ndarray
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "lam", np.asarray(self.lam, dtype=float))
        object.__setattr__(self, "mu", np.asarray(self.mu, dtype=float))
        if self.lam.shape != self.mu.shape or self.lam.ndim != 1:
            raise ValueError("lambda and mu must be 1-d vectors of equal length")


def sample_disorder(seed: int, amplitude: float, n: int) -> DisorderRealization:
    """Draw lambda_1..lambda_n then mu_1..mu_n uniformly from [-amplitude, amplitude].

    The stream order is fixed; identical seeds reproduce identical vectors
    on any platform.  ``amplitude`` must sit in [0, 1) so that the
    effective loop currents ``i_s (1+lambda_i)`` stay positive.
    """
    if not 0 <= amplitude < 1:
        raise ValueError(f"amplitude must be in [0, 1), got {amplitude}")
    rng = Xoshiro256PlusPlus(seed)
    lam = np.array([rng.uniform(-amplitude, amplitude) for _ in range(n)])
    mu = np.array([rng.uniform(-amplitude, amplitude) for _ in range(n)])
    return DisorderRealization(lam, mu, seed)


def inhomogeneous_deltas(delta: float, dispersion: float, n: int) -> np.ndarray:
    """n tunneling energies linearly spaced over delta*[1-d, 1+d].

    Qubit 1 receives the smallest value; the assignment order is a fixed
    convention (the physics only pins the set of values).
    """
    if not 0 <= dispersion < 1:
        raise ValueError(f"dispersion must be in [0, 1), got {dispersion}")
    return np.linspace(delta * (1 - dispersion), delta * (1 + dispersion), n)


def uniform_weights(n: int) -> np.ndarray:
    """Homogeneous line-coupling profile (every qubit equally driven)."""
    return np.ones(n)


def site_weights(n: int, site: int) -> np.ndarray:
    """Profile coupling the line to a single qubit (1-based index)."""
    if not 1 <= site <= n:
        raise ValueError(f"site={site} out of range 1..{n}")
    w = np.zeros(n)
    w[site - 1] = 1.0
    return w


@dataclass(frozen=True)
class NetworkSpec:
    """Full physical description of a driven flux-qubit network."""

    base: QubitParams
    topology: Topology
    delta_profile: np.ndarray = None
    drive_weights: np.ndarray = None
    disorder: DisorderRealization | None = None

    def __post_init__(self):
        n = self.topology.n_qubits
        if n > MAX_QUBITS:
            raise ValueError(f"n_qubits={n} exceeds the dense-storage guard {MAX_QUBITS}")
        dp = self.delta_profile
        dp = np.full(n, self.base.delta) if dp is None else np.asarray(dp, dtype=float)
        dw = self.drive_weights
        dw = uniform_weights(n) if dw is None else np.asarray(dw, dtype=float)
        if dp.shape != (n,):
            raise ValueError(f"delta_profile must have length {n}")
        if dw.shape != (n,):
            raise ValueError(f"drive_weights must have length {n}")
        if self.disorder is not None and self.disorder.lam.shape != (n,):
            raise ValueError(f"disorder vectors must have length {n}")
        object.__setattr__(self, "delta_profile", dp)
        object.__setattr__(self, "drive_weights", dw)
        if np.any(self.loop_current_factors() <= 0):
            raise ValueError("effective loop currents i_s*(1+lambda) must stay positive")

    @property
    def n_qubits(self) -> int:
        return self.topology.n_qubits

    @property
    def dim(self) -> int:
        return 2**self.topology.n_qubits

    def lam(self) -> np.ndarray:
        n = self.topology.n_qubits
        return self.disorder.lam if self.disorder is not None else np.zeros(n)

    def mu(self) -> np.ndarray:
        n = self.topology.n_qubits
        return self.disorder.mu if self.disorder is not None else np.zeros(n)

    def loop_current_factors(self) -> np.ndarray:
        """Per-qubit effective loop currents ``i_s * (1 + lambda_i)``."""
        return self.base.i_s * (1.0 + self.lam())

    def effective_deltas(self) -> np.ndarray:
        """Per-qubit tunneling energies ``delta_profile_i * (1 + mu_i)``."""
        return self.delta_profile * (1.0 + self.mu())

    def epsilons(self) -> np.ndarray:
        """Per-qubit flux biases ``i_s (1+lambda_i) (f - 1/2)``."""
        return self.loop_current_factors() * (self.base.f - 0.5)

    def at_flux(self, f: float) -> "NetworkSpec":
        """Copy of this spec with the external flux replaced."""
        return replace(self, base=replace(self.base, f=f))


def build_hamiltonian(spec: NetworkSpec) -> np.ndarray:
    """Assemble the dense network Hamiltonian (real symmetric, float64)."""
    n = spec.n_qubits
    eps = spec.epsilons()
    deltas = spec.effective_deltas()
    lam = spec.lam()
    zdiags = [sigma_z_diagonal(i, n) for i in range(1, n + 1)]
    diag = np.zeros(spec.dim)
    for i in range(n):
        diag -= eps[i] * zdiags[i]
    for i1, j1, m in spec.topology.edges():
        i, j = i1 - 1, j1 - 1
        diag += m * (1.0 + lam[i]) * (1.0 + lam[j]) * zdiags[i] * zdiags[j]
    h = np.diag(diag)
    for i in range(n):
        h -= deltas[i] * embed_single_site("sigma_x", i + 1, n)
    return h


def drive_diagonal(spec: NetworkSpec, weights=None) -> np.ndarray:
    """Diagonal of ``sum_i w_i (1+lambda_i) sigma_z^(i)`` as a vector."""
    n = spec.n_qubits
    w = spec.drive_weights if weights is None else np.asarray(weights, dtype=float)
    if w.shape != (n,):
        raise ValueError(f"weights must have length {n}")
    lam = spec.lam()
    diag = np.zeros(spec.dim)
    for i in range(n):
        diag += w[i] * (1.0 + lam[i]) * sigma_z_diagonal(i + 1, n)
    return diag


def build_drive_operator(spec: NetworkSpec, weights=None) -> np.ndarray:
    """Transmission-line coupling operator ``C = sum_i w_i (1+lambda_i) sigma_z^(i)``.

    The driven Hamiltonian is ``H(t) = H0 + f(t) * C``.  By default the
    profile stored in the spec is used; pass ``weights`` to build probe
    operators with a different profile.
    """
    return np.diag(drive_diagonal(spec, weights))
