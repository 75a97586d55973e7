"""Closed-form physics of a single flux qubit.

The two-level Hamiltonian is ``H = -(eps * sigma_z + delta * sigma_x)``
where the flux bias ``eps = i_s * (f - 1/2)`` vanishes at the optimal
point ``f = 1/2``.  Eigenvalues are ``+-sqrt(eps^2 + delta^2)`` and the
persistent-current expectation values in the eigenstates are
``+-i_s * cos(theta)`` with ``cos(theta) = eps / sqrt(eps^2 + delta^2)``.

These formulas double as analytic oracles for the dense diagonalization
in :mod:`fluxlattice.spectra`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pauli import SIGMA_X, SIGMA_Z


class DegenerateQubitError(ValueError):
    """Raised when eps = delta = 0 leaves the mixing angle undefined."""


@dataclass(frozen=True)
class QubitParams:
    """Single-qubit parameters in reduced units (hbar = I_S = Phi_0 = 1).

    i_s : maximum loop current (units of I_S).
    delta : tunneling energy (units of hbar*omega_0); sign allowed.
    f : normalized external flux Phi_ex / Phi_0.
    """

    i_s: float = 1.0
    delta: float = 0.2
    f: float = 0.5

    def __post_init__(self):
        if not self.i_s > 0:
            raise ValueError(f"i_s must be positive, got {self.i_s}")
        if not math.isfinite(self.f):
            raise ValueError(f"f must be finite, got {self.f}")
        if not math.isfinite(self.delta):
            raise ValueError(f"delta must be finite, got {self.delta}")


def epsilon(p: QubitParams) -> float:
    """Flux bias energy ``eps = i_s * (f - 1/2)``."""
    return p.i_s * (p.f - 0.5)


def hamiltonian(p: QubitParams) -> np.ndarray:
    """The 2x2 matrix ``-(eps * sigma_z + delta * sigma_x)``."""
    return -(epsilon(p) * SIGMA_Z + p.delta * SIGMA_X)


@dataclass(frozen=True)
class SingleQubitEigensystem:
    e_minus: float
    e_plus: float
    cos_theta: float
    ground_state: np.ndarray
    excited_state: np.ndarray


def single_qubit_eigensystem(p: QubitParams) -> SingleQubitEigensystem:
    """Closed-form eigensystem of the two-level Hamiltonian.

    The ground state ``sqrt((1+cos)/2)|up> + sqrt((1-cos)/2)|down>`` has
    energy ``-sqrt(eps^2 + delta^2)`` and carries current
    ``+i_s*cos(theta)``; the excited state is orthogonal and carries the
    opposite current.
    """
    eps = epsilon(p)
    e = math.hypot(eps, p.delta)
    if e == 0.0:
        raise DegenerateQubitError("eps = delta = 0: mixing angle is undefined")
    cos_theta = eps / e
    a = math.sqrt((1.0 + cos_theta) / 2.0)
    b = math.sqrt((1.0 - cos_theta) / 2.0)
    ground = np.array([a, b])
    excited = np.array([b, -a])
    if p.delta < 0:
        # sin(theta) = delta/e flips sign; the off-diagonal components follow.
        ground = np.array([a, -b])
        excited = np.array([b, a])
    return SingleQubitEigensystem(-e, e, cos_theta, ground, excited)


def ground_current(p: QubitParams) -> float:
    """Ground-state loop current ``i_s * cos(theta)``; odd about f = 1/2."""
    return p.i_s * single_qubit_eigensystem(p).cos_theta


def excited_current(p: QubitParams) -> float:
    """Excited-state loop current, the negation of the ground-state one."""
    return -ground_current(p)
