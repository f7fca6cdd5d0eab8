"""Exact diagonalization of the periodic XY chain in the even Z2 sector.

This is the brute-force side of every cross-check against the closed-form
solution in :mod:`genent.fermions`.  States live in the full ``2^N`` space
(little-endian: bit ``j`` set means site ``j`` is up); site indices are 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from .errors import ContractError, SizeError
from .linalg import DEGENERACY_TOL, fix_phase, partial_trace
from .model import ChainParams, momentum_grid
from .operators import annihilate, create, jw_mode_operators, popcount

MAX_ED_SITES = 14
PSD_TOL = 1e-9

__all__ = [
    "GroundStateResult", "build_hamiltonian", "z2_operator", "ground_state_sector",
    "two_site_rdm", "concurrence", "xx_correlator", "magnetization_x", "jw_mode_operators",
    "site_correlation_matrix", "momentum_correlation_matrix", "momentum_pairing_matrix",
    "purity_uN_from_state", "purity_so2N_from_state", "number_variance_from_state",
]


@dataclass(frozen=True)
class GroundStateResult:
    params: ChainParams
    energy: float
    state: np.ndarray
    z2: int
    degenerate_in_sector: bool
    gap_to_other_sector: float


def _check_size(n_sites: int) -> None:
    if n_sites > MAX_ED_SITES:
        raise SizeError(f"exact diagonalization limited to {MAX_ED_SITES} sites, got {n_sites}")


def _sparse_hamiltonian(p: ChainParams) -> sp.csr_matrix:
    n = p.n_sites
    dim = 2**n
    idx = np.arange(dim)
    rows, cols, vals = [idx], [idx], [(2 * popcount(idx) - n).astype(float)]
    for j in range(n):
        mask = (1 << j) | (1 << ((j + 1) % n))
        bj = (idx >> j) & 1
        bk = (idx >> ((j + 1) % n)) & 1
        # (1+γ) sx sx + (1-γ) sy sy flips both spins: 2γ on aligned pairs, 2 on anti-aligned
        amp = np.where(bj == bk, 2 * p.gamma, 2.0) * (-p.g)
        keep = amp != 0
        rows.append(idx[keep] ^ mask)
        cols.append(idx[keep])
        vals.append(amp[keep])
    h = sp.coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(dim, dim))
    return h.tocsr()


def build_hamiltonian(p: ChainParams) -> np.ndarray:
    """Dense ``2^N`` Hamiltonian.  It is real symmetric, so it is returned as float64."""
    _check_size(p.n_sites)
    return _sparse_hamiltonian(p).toarray()


def z2_operator(n_sites: int) -> np.ndarray:
    """prod_j sigma_z^j, diagonal with entries (-1)^(number of down spins)."""
    _check_size(n_sites)
    idx = np.arange(2**n_sites)
    return np.diag(1.0 - 2.0 * ((n_sites - popcount(idx)) & 1))


def _sector_indices(n_sites: int, z2: int) -> np.ndarray:
    idx = np.arange(2**n_sites)
    down_parity = (n_sites - popcount(idx)) & 1
    return idx[down_parity == (0 if z2 == 1 else 1)]


def ground_state_sector(
    p: ChainParams, degeneracy_tol: float = DEGENERACY_TOL, with_gap: bool = True
) -> GroundStateResult:
    """Lowest eigenstate inside the z2 = +1 block.

    The block is diagonalized densely.  ``gap_to_other_sector`` is the lowest
    z2 = -1 energy minus the returned energy; pass ``with_gap=False`` to skip
    that second diagonalization (the gap is then NaN).
    """
    _check_size(p.n_sites)
    h = _sparse_hamiltonian(p)
    even = _sector_indices(p.n_sites, +1)
    odd = _sector_indices(p.n_sites, -1)
    block = h[even][:, even].toarray()
    w, v = scipy.linalg.eigh(block, subset_by_index=[0, 1])
    if with_gap:
        w_odd = scipy.linalg.eigh(h[odd][:, odd].toarray(), eigvals_only=True, subset_by_index=[0, 0])
    else:
        w_odd = [np.nan]
    state = np.zeros(2**p.n_sites, dtype=complex)
    state[even] = v[:, 0]
    return GroundStateResult(
        params=p,
        energy=float(w[0]),
        state=fix_phase(state),
        z2=1,
        degenerate_in_sector=bool(w[1] - w[0] < degeneracy_tol),
        gap_to_other_sector=float(w_odd[0] - w[0]),
    )


def _check_sites(n: int, *sites: int) -> None:
    for s in sites:
        if not 0 <= s < n:
            raise ContractError(f"site {s} outside chain of {n} sites")


def two_site_rdm(gs: GroundStateResult, i: int, j: int) -> np.ndarray:
    """Reduced density matrix of sites (i, j); basis index = b_i + 2 b_j."""
    n = gs.params.n_sites
    _check_sites(n, i, j)
    if i == j:
        raise ContractError("two_site_rdm needs two distinct sites")
    return partial_trace(gs.state, [2] * n, [n - 1 - j, n - 1 - i])


_SYSY = np.fliplr(np.diag([-1.0, 1.0, 1.0, -1.0]))


def concurrence(rho2: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix."""
    rho2 = np.asarray(rho2, dtype=complex)
    if rho2.shape != (4, 4):
        raise ContractError("concurrence needs a 4x4 density matrix")
    if np.abs(rho2 - rho2.conj().T).max() > PSD_TOL or abs(np.trace(rho2) - 1) > PSD_TOL:
        raise ContractError("not a density matrix (Hermitian, unit trace)")
    if np.linalg.eigvalsh(rho2).min() < -PSD_TOL:
        raise ContractError("density matrix is not positive semidefinite")
    rho_tilde = _SYSY @ rho2.conj() @ _SYSY
    ev = np.linalg.eigvals(rho2 @ rho_tilde).real
    lam = np.sort(np.sqrt(np.clip(ev, 0.0, None)))[::-1]
    return float(np.clip(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0))


def xx_correlator(gs: GroundStateResult, i: int, j: int) -> float:
    """<G| sigma_x^i sigma_x^j |G>."""
    n = gs.params.n_sites
    _check_sites(n, i, j)
    if i == j:
        return 1.0
    idx = np.arange(gs.state.size)
    flipped = gs.state[idx ^ ((1 << i) | (1 << j))]
    return float(np.vdot(gs.state, flipped).real)


def magnetization_x(gs: GroundStateResult) -> float:
    """sqrt of the correlator between site 0 and the farthest site N/2, clamped at 0."""
    n = gs.params.n_sites
    return float(np.sqrt(max(0.0, xx_correlator(gs, 0, n // 2))))


def site_correlation_matrix(gs: GroundStateResult) -> np.ndarray:
    """<c_i^+ c_j> in the site basis."""
    n = gs.params.n_sites
    phi = np.array([annihilate(gs.state, j, n) for j in range(n)])
    return phi.conj() @ phi.T


def _fourier(n: int) -> np.ndarray:
    # c_k^+ = N^-1/2 sum_j exp(-ikj) c_j^+ with sites counted j = 1..N
    k = momentum_grid(n).momenta
    j = np.arange(1, n + 1)
    return np.exp(-1j * np.outer(k, j)) / np.sqrt(n)


def momentum_correlation_matrix(gs: GroundStateResult) -> np.ndarray:
    """<c_k^+ c_k'> on the antiperiodic grid (ascending k)."""
    f = _fourier(gs.params.n_sites)
    return f @ site_correlation_matrix(gs) @ f.conj().T


def momentum_pairing_matrix(gs: GroundStateResult) -> np.ndarray:
    """<c_k^+ c_k'^+> on the antiperiodic grid."""
    n = gs.params.n_sites
    lowered = np.array([annihilate(gs.state, j, n) for j in range(n)])
    raised = np.array([create(gs.state, j, n) for j in range(n)])
    site = lowered.conj() @ raised.T
    f = _fourier(n)
    return f @ site @ f.T


def purity_uN_from_state(gs: GroundStateResult) -> float:
    """u(N) purity over the full basis: (4/N) sum_{k,k'} |<c_k^+ c_k'> - delta/2|^2."""
    n = gs.params.n_sites
    c = momentum_correlation_matrix(gs)
    return float(4.0 / n * np.sum(np.abs(c - np.eye(n) / 2) ** 2))


def purity_so2N_from_state(gs: GroundStateResult) -> float:
    """so(2N) purity including pairing terms, normalized on the vacuum (value N/4)."""
    n = gs.params.n_sites
    c = momentum_correlation_matrix(gs)
    pair = momentum_pairing_matrix(gs)
    return float(4.0 / n * (np.sum(np.abs(c - np.eye(n) / 2) ** 2) + np.sum(np.abs(pair) ** 2)))


def number_variance_from_state(gs: GroundStateResult) -> float:
    """<N^2> - <N>^2 for the total fermion number N = sum_j n_j."""
    prob = np.abs(gs.state) ** 2
    counts = popcount(np.arange(gs.state.size)).astype(float)
    mean = prob @ counts
    return float(prob @ counts**2 - mean**2)
