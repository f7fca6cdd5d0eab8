"""Dense complex linear algebra used by every other module.

Matrices are plain ``numpy.ndarray`` objects and state vectors are 1-d arrays.
Multi-qubit states follow a little-endian convention: bit ``j`` of a basis
index is the occupation (spin up) of site ``j``, so index 0 is the all-down
state, which doubles as the fermionic vacuum.

For generic tensor-product spaces (``kron``, ``partial_trace``) the first
factor is the most significant one, exactly as in :func:`numpy.kron`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import ContractError, SizeError

MAX_KRON_ENTRIES = 2**24
MAX_MATRIX_DIM = 2**14
MAX_STATE_DIM = 2**20

HERMITIAN_TOL = 1e-12
DEGENERACY_TOL = 1e-10


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __iter__(self):
        yield self.eigenvalues
        yield self.eigenvectors


def _scale(m: np.ndarray) -> float:
    return max(1.0, float(np.abs(m).max(initial=0.0)))


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.abs(m - m.conj().T).max(initial=0.0) <= tol * _scale(m))


def _require_hermitian(m: np.ndarray, what: str = "matrix") -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractError(f"{what} must be square, got shape {m.shape}")
    if m.shape[0] > MAX_MATRIX_DIM:
        raise SizeError(f"{what} dimension {m.shape[0]} exceeds {MAX_MATRIX_DIM}")
    if not is_hermitian(m):
        raise ContractError(f"{what} is not Hermitian")
    return m


def _require_state(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi)
    if psi.ndim != 1:
        raise ContractError(f"state vector must be 1-d, got shape {psi.shape}")
    if psi.size > MAX_STATE_DIM:
        raise SizeError(f"state dimension {psi.size} exceeds {MAX_STATE_DIM}")
    return psi


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product ``a ⊗ b`` with a guard on the output size."""
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    entries = a.size * b.size
    if entries > MAX_KRON_ENTRIES:
        raise SizeError(f"kron output would hold {entries} entries (max {MAX_KRON_ENTRIES})")
    return np.kron(a, b)


def kron_all(ops: Sequence[np.ndarray]) -> np.ndarray:
    out = np.atleast_2d(ops[0])
    for op in ops[1:]:
        out = kron(out, op)
    return out


def hermitian_eig(m: np.ndarray) -> EigenResult:
    """Full spectrum of a Hermitian matrix, eigenvalues ascending."""
    m = _require_hermitian(m)
    w, v = np.linalg.eigh(m)
    return EigenResult(w, v)


def fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the leading large amplitude is real positive."""
    mags = np.abs(v)
    i = int(np.argmax(mags >= mags.max() - 1e-12))
    return v * (abs(v[i]) / v[i])


def ground_state(h: np.ndarray, degeneracy_tol: float = DEGENERACY_TOL):
    """Lowest eigenpair of ``h``.

    Returns
    -------
    energy : float
    state : ndarray
        Normalized, with the phase fixed by :func:`fix_phase`.
    degenerate : bool
        True when the gap to the first excited level is below ``degeneracy_tol``.
    """
    h = _require_hermitian(h, "Hamiltonian")
    n = h.shape[0]
    if n == 1:
        return float(h[0, 0].real), np.ones(1, dtype=complex), False
    w, v = scipy.linalg.eigh(h, subset_by_index=[0, 1])
    state = fix_phase(v[:, 0].astype(complex))
    return float(w[0]), state, bool(w[1] - w[0] < degeneracy_tol)


def expectation(psi: np.ndarray, op: np.ndarray) -> float:
    """``<psi|op|psi>`` for Hermitian ``op``; the imaginary residue must vanish."""
    psi = _require_state(psi)
    op = np.asarray(op)
    if op.shape != (psi.size, psi.size):
        raise ContractError(f"operator shape {op.shape} does not match state dim {psi.size}")
    val = np.vdot(psi, op @ psi)
    bound = float(np.abs(op).sum(axis=1).max()) * float(np.vdot(psi, psi).real)
    if abs(val.imag) > HERMITIAN_TOL * max(1.0, bound):
        raise ContractError(f"expectation has imaginary part {val.imag:.3e}; operator not Hermitian")
    return float(val.real)


def partial_trace(psi: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Reduced density matrix of a pure state on the factors listed in ``keep``.

    The kept factors appear in the output in the order given by ``keep``.
    """
    psi = _require_state(psi)
    dims = [int(d) for d in dims]
    if int(np.prod(dims)) != psi.size:
        raise ContractError(f"dims {dims} do not multiply to state dim {psi.size}")
    keep = [int(k) for k in keep]
    if not keep or len(set(keep)) != len(keep) or any(k < 0 or k >= len(dims) for k in keep):
        raise ContractError(f"invalid keep set {keep} for {len(dims)} factors")
    rest = [i for i in range(len(dims)) if i not in keep]
    t = psi.reshape(dims).transpose(keep + rest)
    dk = int(np.prod([dims[k] for k in keep]))
    m = t.reshape(dk, -1)
    return m @ m.conj().T


def evolve(psi: np.ndarray, h: np.ndarray, t: float) -> np.ndarray:
    """``exp(-i h t) |psi>`` through the eigendecomposition of ``h``."""
    psi = _require_state(psi)
    w, v = hermitian_eig(h)
    if v.shape[0] != psi.size:
        raise ContractError("generator and state dimensions differ")
    return v @ (np.exp(-1j * w * t) * (v.conj().T @ psi))


def basis_state(dim: int, index: int) -> np.ndarray:
    e = np.zeros(dim, dtype=complex)
    e[index] = 1.0
    return e


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random pure state."""
    z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return z / np.linalg.norm(z)


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2
