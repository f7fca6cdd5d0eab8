"""Site operators on qubit chains and their Jordan-Wigner fermions.

Single-site matrices are written in the occupation ordering ``(|down>, |up>)``
so that a chain basis index read in binary lists the spins site by site
(bit ``j`` <-> site ``j``).  With this ordering ``sigma_z = diag(-1, 1)`` and
``n_j = (sigma_z^j + 1) / 2`` is simply bit ``j``.
"""
from __future__ import annotations

import numpy as np

from .errors import SizeError
from .linalg import kron_all

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, 1j], [-1j, 0]], dtype=complex)
SIGMA_Z = np.array([[-1, 0], [0, 1]], dtype=complex)
SIGMA_PLUS = np.array([[0, 0], [1, 0]], dtype=complex)  # S_+ = |up><down|
IDENTITY2 = np.eye(2, dtype=complex)

MAX_JW_SITES = 12


def site_operator(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """Embed a one-site operator at ``site`` of an ``n_sites`` chain (little-endian)."""
    d = op.shape[0]
    factors = [op if s == site else np.eye(d, dtype=op.dtype) for s in reversed(range(n_sites))]
    return kron_all(factors)


def jw_string(site: int, n_sites: int) -> np.ndarray:
    """Diagonal of prod_{k<site} (-sigma_z^k) = (-1)^(number of fermions left of site)."""
    idx = np.arange(2**n_sites)
    return 1 - 2 * (_popcount(idx & ((1 << site) - 1)) & 1)


def _popcount(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    out = np.zeros_like(x)
    while np.any(x):
        out += x & 1
        x = x >> 1
    return out


def popcount(x) -> np.ndarray:
    return _popcount(np.asarray(x))


def jw_mode_operators(n_sites: int) -> list[np.ndarray]:
    """Annihilators ``c_j`` as dense ``2^N`` matrices.

    ``c_j^dagger = prod_{k<j} (-sigma_z^k) S_+^j``, hence ``sigma_z^j = 2 n_j - 1``.
    Real-valued, so they are returned as float arrays.
    """
    if n_sites > MAX_JW_SITES:
        raise SizeError(f"dense JW operators limited to {MAX_JW_SITES} sites")
    dim = 2**n_sites
    idx = np.arange(dim)
    ops = []
    for j in range(n_sites):
        string = jw_string(j, n_sites)
        c = np.zeros((dim, dim))
        occupied = (idx >> j) & 1 == 1
        src = idx[occupied]
        c[src ^ (1 << j), src] = string[src]
        ops.append(c)
    return ops


def annihilate(psi: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """Apply ``c_site`` to a chain state vector without building a matrix."""
    idx = np.arange(psi.size)
    occupied = ((idx >> site) & 1) == 1
    sign = 1 - 2 * (_popcount(idx & ((1 << site) - 1)) & 1)
    out = np.zeros_like(psi)
    src = idx[occupied]
    out[src ^ (1 << site)] = sign[src] * psi[src]
    return out


def create(psi: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """Apply ``c_site^dagger`` to a chain state vector."""
    idx = np.arange(psi.size)
    empty = ((idx >> site) & 1) == 0
    sign = 1 - 2 * (_popcount(idx & ((1 << site) - 1)) & 1)
    out = np.zeros_like(psi)
    src = idx[empty]
    out[src | (1 << site)] = sign[src] * psi[src]
    return out
