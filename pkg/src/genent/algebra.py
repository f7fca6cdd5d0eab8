"""Distinguished observable sets, reduced states and the quadratic purity.

A :class:`ObservableBasis` is a trace-orthogonal, commonly normalized set of
traceless Hermitian operators spanning the distinguished algebra.  The
purity of a pure state relative to that algebra is

    P(psi) = K * sum_i <psi|x_i|psi>^2

where the constant ``K`` is fixed once per basis by :func:`calibrate`, so that
a known generalized coherent state (a lowest-weight vector) has ``P = 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import ContractError, DegenerateReferenceError, RankError
from .linalg import basis_state, is_hermitian, kron_all
from .operators import SIGMA_PLUS, SIGMA_X, SIGMA_Y, SIGMA_Z, jw_mode_operators, site_operator

ORTHO_TOL = 1e-10
TRACELESS_TOL = 1e-12
RANK_TOL = 1e-12
PURITY_SLACK = 1e-9

# Spin-1 matrices, basis ordered (|1>, |0>, |-1>).  S_z carries no 1/sqrt2:
# only then do the three share one trace norm and close [S_x, S_y] = i S_z.
SPIN1_X = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / np.sqrt(2)
SPIN1_Y = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex) / np.sqrt(2)
SPIN1_Z = np.array([[1, 0, 0], [0, 0, 0], [0, 0, -1]], dtype=complex)

SPIN_HALF_OPS = (SIGMA_X / 2, SIGMA_Y / 2, SIGMA_Z / 2)
SPIN_ONE_OPS = (SPIN1_X, SPIN1_Y, SPIN1_Z)


def trace_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product tr(a^dagger b)."""
    return np.vdot(a.ravel(), b.ravel())


@dataclass(frozen=True)
class ObservableBasis:
    """Orthogonal basis ``{x_i}`` of a distinguished algebra plus its purity constant."""

    name: str
    elements: tuple
    norm_constant: float | None = None
    _stack: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.elements:
            raise ContractError("a basis needs at least one element")
        stack = np.array([np.asarray(x, dtype=complex) for x in self.elements])
        dim = stack.shape[1]
        if stack.shape[1:] != (dim, dim):
            raise ContractError("basis elements must be square matrices of one size")
        for x in stack:
            if not is_hermitian(x):
                raise ContractError(f"{self.name}: basis element is not Hermitian")
            if abs(np.trace(x)) > TRACELESS_TOL * dim:
                raise ContractError(f"{self.name}: basis element is not traceless")
        gram = np.einsum("aij,bij->ab", stack.conj(), stack).real
        c = gram[0, 0]
        if c <= 0 or np.abs(gram - c * np.eye(len(stack))).max() > ORTHO_TOL * max(c, 1.0):
            raise ContractError(f"{self.name}: elements are not commonly-normalized orthogonal")
        if self.norm_constant is not None and not self.norm_constant > 0:
            raise ContractError("norm_constant must be positive")
        object.__setattr__(self, "elements", tuple(stack))
        object.__setattr__(self, "_stack", stack)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return self._stack.shape[1]

    @property
    def trace_norm(self) -> float:
        """The common value c of tr(x_i x_i)."""
        return float(trace_inner(self._stack[0], self._stack[0]).real)

    @property
    def calibrated(self) -> bool:
        return self.norm_constant is not None


@dataclass(frozen=True)
class ReducedState:
    coords: np.ndarray

    def __len__(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class PurityResult:
    value: float
    basis: str

    def __float__(self) -> float:
        return self.value


def orthonormalize(raw_ops: Sequence[np.ndarray], name: str = "custom", norm: float | None = None) -> ObservableBasis:
    """Modified Gram-Schmidt (two passes) under the trace inner product.

    Every output shares the trace norm ``norm`` (default: that of the first
    input), so an already orthogonal, commonly normalized set comes back
    unchanged.  The result is uncalibrated.
    """
    ops = [np.asarray(x, dtype=complex) for x in raw_ops]
    if not ops:
        raise ContractError("no operators given")
    for x in ops:
        if not is_hermitian(x):
            raise ContractError("orthonormalize expects Hermitian operators")
    target = float(trace_inner(ops[0], ops[0]).real) if norm is None else float(norm)
    if target <= 0:
        raise RankError("first operator has zero trace norm")
    q: list[np.ndarray] = []
    for a in ops:
        a_norm2 = trace_inner(a, a).real
        r = a.copy()
        for _ in range(2):
            for e in q:
                r = r - trace_inner(e, r) * e
        r_norm2 = trace_inner(r, r).real
        # squared residual ratio plays the role of a normalized Gram determinant
        if a_norm2 == 0 or r_norm2 / a_norm2 < RANK_TOL:
            raise RankError("operators are linearly dependent")
        r = (r + r.conj().T) / 2
        q.append(r / np.sqrt(trace_inner(r, r).real))
    return ObservableBasis(name, tuple(e * np.sqrt(target) for e in q))


def reduced_state(psi: np.ndarray, basis: ObservableBasis) -> ReducedState:
    """Expectation values ``<psi|x_i|psi>`` of every basis element."""
    psi = np.asarray(psi)
    if psi.shape != (basis.dim,):
        raise ContractError(f"state dim {psi.shape} does not match basis dim {basis.dim}")
    vals = np.einsum("i,kij,j->k", psi.conj(), basis._stack, psi)
    return ReducedState(vals.real.copy())


def _square_sum(psi: np.ndarray, basis: ObservableBasis) -> float:
    return float(np.sum(reduced_state(psi, basis).coords ** 2))


def calibrate(basis: ObservableBasis, reference_gcs: np.ndarray) -> ObservableBasis:
    """Fix ``K`` so that the given generalized coherent state has purity exactly 1."""
    s = _square_sum(reference_gcs, basis)
    if s < 1e-12:
        raise DegenerateReferenceError(f"{basis.name}: reference has vanishing projection onto the algebra")
    return replace(basis, norm_constant=1.0 / s)


def purity(psi: np.ndarray, basis: ObservableBasis) -> PurityResult:
    if basis.norm_constant is None:
        raise ContractError(f"{basis.name}: basis is not calibrated")
    return PurityResult(basis.norm_constant * _square_sum(psi, basis), basis.name)


def is_generalized_unentangled(psi: np.ndarray, basis: ObservableBasis, tol: float = 1e-9) -> bool:
    return purity(psi, basis).value >= 1.0 - tol


def _parse_spin(spin) -> Fraction:
    s = Fraction(spin).limit_denominator(4) if not isinstance(spin, str) else Fraction(spin)
    if s not in (Fraction(1, 2), Fraction(1)):
        raise ContractError(f"spin must be 1/2 or 1, got {spin}")
    return s


def make_su2_local(num_sites: int, spin=Fraction(1, 2)) -> ObservableBasis:
    """Direct sum of one su(2) per site, ``{S_x^j, S_y^j, S_z^j}``.

    Spin-1/2 sites use ``S = sigma / 2`` in the chain ordering (down, up);
    spin-1 sites use the matrices ``SPIN1_*`` with ordering (|1>, |0>, |-1>).
    Calibrated on the basis state of index 0, a product of extremal weights.
    """
    if num_sites < 1:
        raise ContractError("num_sites must be >= 1")
    s = _parse_spin(spin)
    local = SPIN_HALF_OPS if s == Fraction(1, 2) else SPIN_ONE_OPS
    elements = [site_operator(op, j, num_sites) for j in range(num_sites) for op in local]
    label = "su(2)" if s == Fraction(1, 2) else "su(2)[S=1]"
    basis = ObservableBasis("+".join([label] * num_sites), tuple(elements))
    return calibrate(basis, basis_state(basis.dim, 0))


def gell_mann(dim: int) -> list[np.ndarray]:
    """Generalized Gell-Mann matrices: symmetric, antisymmetric, then diagonal; tr(x^2) = 2."""
    out = []
    for j in range(dim):
        for k in range(j + 1, dim):
            m = np.zeros((dim, dim), dtype=complex)
            m[j, k] = m[k, j] = 1
            out.append(m)
    for j in range(dim):
        for k in range(j + 1, dim):
            m = np.zeros((dim, dim), dtype=complex)
            m[j, k] = -1j
            m[k, j] = 1j
            out.append(m)
    for l in range(1, dim):
        d = np.zeros(dim)
        d[:l] = 1
        d[l] = -l
        out.append(np.diag(d * np.sqrt(2.0 / (l * (l + 1)))).astype(complex))
    return out


def make_full_traceless(dim: int) -> ObservableBasis:
    """All of su(dim): ``dim^2 - 1`` generators.  Every pure state has purity 1."""
    if dim < 2:
        raise ContractError("dim must be >= 2")
    basis = ObservableBasis(f"su({dim})", tuple(gell_mann(dim)))
    return calibrate(basis, basis_state(dim, 0))


def make_local_full(dims: Sequence[int]) -> ObservableBasis:
    """Local observables ``su(d_1) + su(d_2) + ...`` on a tensor product (first factor most significant)."""
    dims = [int(d) for d in dims]
    total = int(np.prod(dims))
    elements = []
    for f, d in enumerate(dims):
        scale = np.sqrt(total // d)
        for g in gell_mann(d):
            factors = [g if i == f else np.eye(di) for i, di in enumerate(dims)]
            elements.append(kron_all(factors) / scale)
    basis = ObservableBasis("+".join(f"su({d})" for d in dims), tuple(elements))
    return calibrate(basis, basis_state(total, 0))


def make_u2_pair_modes() -> ObservableBasis:
    """The number-conserving algebra u(2) of two fermionic modes, as 4x4 matrices.

    ``{(c1^+ c2 + h.c.)/sqrt2, i(c1^+ c2 - h.c.)/sqrt2, n1 - 1/2, n2 - 1/2}``,
    mode 1 living on bit 0.  Calibrated on the one-particle state ``|n1=1, n2=0>``.
    """
    c1, c2 = (c.astype(complex) for c in jw_mode_operators(2))
    hop = c1.conj().T @ c2
    eye = np.eye(4)
    elements = (
        (hop + hop.conj().T) / np.sqrt(2),
        1j * (hop - hop.conj().T) / np.sqrt(2),
        c1.conj().T @ c1 - eye / 2,
        c2.conj().T @ c2 - eye / 2,
    )
    basis = ObservableBasis("u(2)", elements)
    return calibrate(basis, basis_state(4, 0b01))


def make_u2_pair_spins() -> ObservableBasis:
    """The same u(2) written with two spin-1/2 operators.

    The raw spin expressions ``(Sx Sx + Sy Sy)/sqrt2`` and ``(Sx Sy - Sy Sx)/sqrt2``
    carry half the trace norm of ``S_z``; orthonormalizing to unit trace norm
    restores the common normalization.
    """
    sx = [site_operator(SPIN_HALF_OPS[0], j, 2) for j in range(2)]
    sy = [site_operator(SPIN_HALF_OPS[1], j, 2) for j in range(2)]
    sz = [site_operator(SPIN_HALF_OPS[2], j, 2) for j in range(2)]
    raw = [
        (sx[0] @ sx[1] + sy[0] @ sy[1]) / np.sqrt(2),
        (sx[0] @ sy[1] - sy[0] @ sx[1]) / np.sqrt(2),
        sz[0],
        sz[1],
    ]
    basis = orthonormalize(raw, name="u(2)[spin]", norm=1.0)
    return calibrate(basis, basis_state(4, 0b01))


def schmidt_coefficients(psi: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    """Singular values of the ``dim_a x dim_b`` amplitude matrix, descending."""
    psi = np.asarray(psi)
    if psi.ndim != 1 or dim_a * dim_b != psi.size:
        raise ContractError(f"{dim_a} x {dim_b} does not factor a state of dim {psi.size}")
    return np.linalg.svd(psi.reshape(dim_a, dim_b), compute_uv=False)


def bell_state() -> np.ndarray:
    """``(|up,down> - |down,up>)/sqrt2`` with site 1 on bit 0; equals ``(c1^+ - c2^+)/sqrt2 |0>_F``."""
    psi = np.zeros(4, dtype=complex)
    psi[0b01] = 1 / np.sqrt(2)
    psi[0b10] = -1 / np.sqrt(2)
    return psi


__all__ = [
    "ObservableBasis", "ReducedState", "PurityResult", "orthonormalize", "reduced_state",
    "purity", "calibrate", "is_generalized_unentangled", "make_su2_local", "make_full_traceless",
    "make_local_full", "make_u2_pair_modes", "make_u2_pair_spins", "schmidt_coefficients",
    "gell_mann", "bell_state", "SPIN1_X", "SPIN1_Y", "SPIN1_Z", "SIGMA_PLUS",
]
