"""Dense many-qubit operators built from tensor-product embeddings.

Operators live on the computational basis of ``n`` qubits as plain numpy
arrays of shape ``(2**n, 2**n)``.  Qubit 1 occupies the *leftmost* tensor
factor, so basis index ``b`` carries the state of qubit ``i`` in bit
``n - i`` (qubit 1 is the most significant bit).  With this convention
``sigma_z`` on qubit 1 of a two-qubit register is ``diag(+1, +1, -1, -1)``.

Everything needed for the network Hamiltonians is real (``sigma_x``,
``sigma_z`` and their products), so embedded operators are float64.
State vectors are complex and normalized.

All energies are dimensionless throughout the package: the unit is
``hbar * omega_0 = I_S * Phi_0`` with ``hbar = I_S = Phi_0 = 1``.
"""

from __future__ import annotations

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
IDENTITY_2 = np.eye(2)

_KINDS = {"sigma_x": SIGMA_X, "sigma_z": SIGMA_Z, "identity": IDENTITY_2}

#: Largest register the dense representation accepts (2**14 x 2**14 matrices).
MAX_QUBITS = 14

#: Tolerance below which the imaginary part of an expectation value is noise.
IMAG_TOL = 1e-10


def _check_site(site: int, n_qubits: int) -> None:
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ValueError(
            f"n_qubits={n_qubits} outside the supported range 1..{MAX_QUBITS}"
        )
    if not 1 <= site <= n_qubits:
        raise ValueError(f"site={site} out of range 1..{n_qubits}")


def embed_single_site(kind: str, site: int, n_qubits: int) -> np.ndarray:
    """Embed a single-qubit operator into the full register.

    Returns ``I (x) ... (x) op (x) ... (x) I`` with ``op`` acting on
    ``site`` (1-based, leftmost factor first).

    Parameters
    ----------
    kind : one of ``"sigma_x"``, ``"sigma_z"``, ``"identity"``.
    site : 1-based qubit index.
    n_qubits : register size, at most ``MAX_QUBITS``.
    """
    if kind not in _KINDS:
        raise ValueError(f"unknown operator kind {kind!r}")
    _check_site(site, n_qubits)
    out = np.array([[1.0]])
    for i in range(1, n_qubits + 1):
        out = np.kron(out, _KINDS[kind] if i == site else IDENTITY_2)
    return out


def sigma_z_diagonal(site: int, n_qubits: int) -> np.ndarray:
    """Diagonal of the embedded ``sigma_z`` on ``site`` as a length-2**n vector.

    Equals ``np.diag(embed_single_site("sigma_z", site, n_qubits))`` but is
    computed by bit arithmetic; used on the hot paths where the full matrix
    would be wasteful.
    """
    _check_site(site, n_qubits)
    idx = np.arange(2**n_qubits)
    bits = (idx >> (n_qubits - site)) & 1
    return 1.0 - 2.0 * bits


def weighted_sigma_z_sum(weights) -> np.ndarray:
    """Return ``sum_i w_i sigma_z^(i)`` for the given per-qubit weights.

    The result is Hermitian and diagonal; a zero weight vector gives the
    zero operator.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise ValueError("weights must be a non-empty 1-d vector")
    n = w.size
    diag = np.zeros(2**n)
    for i in range(1, n + 1):
        diag += w[i - 1] * sigma_z_diagonal(i, n)
    return np.diag(diag)


def is_hermitian(op: np.ndarray, tol: float = 1e-12) -> bool:
    """Entrywise Hermiticity check at absolute tolerance ``tol``."""
    return bool(np.max(np.abs(op - op.conj().T)) <= tol)


def check_state(state: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Validate normalization of a state vector and return it as complex."""
    psi = np.asarray(state, dtype=complex)
    if psi.ndim != 1:
        raise ValueError("state must be a 1-d vector")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state norm {norm!r} deviates from 1 beyond {tol}")
    return psi


def expectation(op: np.ndarray, state: np.ndarray) -> float:
    """Real expectation value ``<psi|op|psi>`` of a Hermitian operator.

    Raises if dimensions mismatch or if the imaginary part exceeds
    ``IMAG_TOL`` (which signals a non-Hermitian operator).
    """
    psi = np.asarray(state, dtype=complex)
    if op.shape[0] != op.shape[1] or op.shape[0] != psi.shape[0]:
        raise ValueError(f"dimension mismatch: op {op.shape}, state {psi.shape}")
    val = np.vdot(psi, op @ psi)
    if abs(val.imag) > IMAG_TOL:
        raise ValueError(
            f"expectation has imaginary part {val.imag:.3e}; operator is not Hermitian"
        )
    return float(val.real)
