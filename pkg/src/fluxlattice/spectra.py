"""Exact diagonalization and ground-state observables of network Hamiltonians."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .network import NetworkSpec
from .pauli import sigma_z_diagonal

#: Bottom gap below which the ground state is reported as degenerate.
DEGENERACY_TOL = 1e-12


class DegenerateGroundStateError(ValueError):
    """Ground-state observables are ill-defined when the bottom gap closes."""


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues and orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.size

    @property
    def n_qubits(self) -> int:
        n = int(round(np.log2(self.dim)))
        if 2**n != self.dim:
            raise ValueError(f"dimension {self.dim} is not a power of two")
        return n

    def gaps(self) -> np.ndarray:
        """Excitation energies E_n - E_0."""
        return self.eigenvalues - self.eigenvalues[0]

    def ground_state(self) -> np.ndarray:
        return self.eigenvectors[:, 0]

    def check_ground_unique(self) -> None:
        if self.dim > 1 and self.eigenvalues[1] - self.eigenvalues[0] < DEGENERACY_TOL:
            raise DegenerateGroundStateError(
                f"bottom gap {self.eigenvalues[1] - self.eigenvalues[0]:.3e} "
                f"below {DEGENERACY_TOL}; ground-state observables are ambiguous"
            )


def diagonalize(h: np.ndarray, hermiticity_tol: float = 1e-12) -> Spectrum:
    """Full eigensystem of a Hermitian operator, eigenvalues ascending.

    The phase of each eigenvector is fixed by making its largest-magnitude
    component real and positive, so repeated runs produce identical
    matrices.  Real-symmetric input yields real eigenvectors.
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"operator must be square, got shape {h.shape}")
    if np.max(np.abs(h - h.conj().T)) > hermiticity_tol:
        raise ValueError("operator is not Hermitian within tolerance")
    if np.iscomplexobj(h) and np.max(np.abs(h.imag)) == 0.0:
        h = h.real
    evals, evecs = np.linalg.eigh(h)
    for k in range(evals.size):
        col = evecs[:, k]
        lead = np.argmax(np.abs(col))
        pivot = col[lead]
        if np.iscomplexobj(evecs):
            phase = pivot / abs(pivot)
            evecs[:, k] = col / phase
        elif pivot < 0:
            evecs[:, k] = -col
    return Spectrum(evals, evecs)


def _level_state(s: Spectrum, level: int) -> np.ndarray:
    if not 0 <= level < s.dim:
        raise IndexError(f"level {level} out of range 0..{s.dim - 1}")
    if level == 0:
        s.check_ground_unique()
    return s.eigenvectors[:, level]


def loop_currents(s: Spectrum, level: int, spec: NetworkSpec) -> np.ndarray:
    """Per-qubit currents ``<level| (1+lambda_i) sigma_z^(i) |level>`` in units of I_S."""
    state = _level_state(s, level)
    prob = np.abs(state) ** 2
    n = spec.n_qubits
    lam = spec.lam()
    return np.array(
        [(1.0 + lam[i]) * float(sigma_z_diagonal(i + 1, n) @ prob) for i in range(n)]
    )


def current_correlation(s: Spectrum, level: int, i: int, j: int) -> float:
    """Connected correlator ``<z_i z_j> - <z_i><z_j>`` on eigenstate ``level``.

    Qubit indices are 1-based; the value is in units of I_S^2 for the
    clean (disorder-free) array.
    """
    n = s.n_qubits
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"qubit indices ({i}, {j}) out of range 1..{n}")
    state = _level_state(s, level)
    prob = np.abs(state) ** 2
    zi = sigma_z_diagonal(i, n)
    zj = sigma_z_diagonal(j, n)
    return float((zi * zj) @ prob) - float(zi @ prob) * float(zj @ prob)


def static_flux(s: Spectrum) -> float:
    """Ground-state flux ``sum_i <sigma_z^(i)>`` (proportionality constant 1)."""
    state = _level_state(s, 0)
    prob = np.abs(state) ** 2
    n = s.n_qubits
    return float(sum(sigma_z_diagonal(i, n) @ prob for i in range(1, n + 1)))


def degeneracy_groups(s: Spectrum, tol: float) -> list[list[int]]:
    """Partition levels into maximal runs with consecutive gaps below ``tol``.

    Returns 0-based level indices; singletons are their own groups.
    """
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    groups: list[list[int]] = [[0]]
    for k in range(1, s.dim):
        if s.eigenvalues[k] - s.eigenvalues[k - 1] < tol:
            groups[-1].append(k)
        else:
            groups.append([k])
    return groups
