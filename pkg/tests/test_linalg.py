import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genent.errors import ContractError, SizeError
from genent.linalg import (
    basis_state,
    evolve,
    expectation,
    ground_state,
    hermitian_eig,
    kron,
    partial_trace,
    random_hermitian,
    random_state,
)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)
BELL = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


def brute_kron(a, b):
    m, n = a.shape
    p, q = b.shape
    out = np.zeros((m * p, n * q), dtype=complex)
    for i in range(m):
        for j in range(n):
            for k in range(p):
                for l in range(q):
                    out[i * p + k, j * q + l] = a[i, j] * b[k, l]
    return out


def taylor_expm(h, t, terms=30):
    """exp(-i h t) by scaling and squaring a truncated Taylor series."""
    a = -1j * t * h
    s = max(0, int(np.ceil(np.log2(max(np.abs(a).sum(axis=1).max(), 1e-300)))) + 1)
    a = a / 2**s
    out = np.eye(len(h), dtype=complex)
    term = np.eye(len(h), dtype=complex)
    for n in range(1, terms):
        term = term @ a / n
        out = out + term
    for _ in range(s):
        out = out @ out
    return out


def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_sigma_z_identity():
    assert np.array_equal(kron(SZ, np.eye(2)), np.diag([1, 1, -1, -1]))


def test_kron_matches_index_formula(rng):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    np.testing.assert_allclose(kron(a, b), brute_kron(a, b), atol=1e-15)


def test_kron_size_guard():
    with pytest.raises(SizeError):
        kron(np.eye(2**12), np.eye(2))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_kron_associative(seed, p, q, r):
    rng = np.random.default_rng(seed)
    a, b, c = (rng.normal(size=(d, d + 1)) for d in (p, q, r))
    np.testing.assert_allclose(kron(kron(a, b), c), kron(a, kron(b, c)), atol=1e-14)


def test_eig_sigma_z():
    np.testing.assert_allclose(hermitian_eig(SZ).eigenvalues, [-1, 1])


def test_eig_sigma_x():
    w, v = hermitian_eig(SX)
    np.testing.assert_allclose(w, [-1, 1])
    s = 1 / np.sqrt(2)
    assert abs(abs(np.vdot(v[:, 0], [s, -s])) - 1) < 1e-12
    assert abs(abs(np.vdot(v[:, 1], [s, s])) - 1) < 1e-12


def test_eig_reconstruction(rng):
    m = random_hermitian(8, rng)
    w, v = hermitian_eig(m)
    assert np.all(np.diff(w) >= 0)
    resid = np.linalg.norm(m - v @ np.diag(w) @ v.conj().T)
    assert resid <= 1e-10 * np.linalg.norm(m)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(8), atol=1e-10)
    for i in range(8):
        assert np.linalg.norm(m @ v[:, i] - w[i] * v[:, i]) <= 1e-10 * np.linalg.norm(m, 2)


def test_eig_rejects_non_hermitian():
    with pytest.raises(ContractError):
        hermitian_eig(np.array([[0, 1], [0, 0]]))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 16))
def test_eigenvalue_sum_is_trace(seed, dim):
    m = random_hermitian(dim, np.random.default_rng(seed))
    assert abs(hermitian_eig(m).eigenvalues.sum() - np.trace(m).real) <= 1e-10 * dim


def test_ground_state_diagonal():
    e, psi, deg = ground_state(np.diag([-1.0, 1.0]))
    assert e == pytest.approx(-1)
    np.testing.assert_allclose(psi, [1, 0], atol=1e-14)
    assert not deg


def test_ground_state_minus_sigma_x():
    e, psi, deg = ground_state(-SX)
    assert e == pytest.approx(-1)
    np.testing.assert_allclose(psi, np.array([1, 1]) / np.sqrt(2), atol=1e-12)


def test_ground_state_degenerate_flag():
    assert ground_state(np.zeros((2, 2)), degeneracy_tol=1e-10)[2]


def test_expectation_up():
    assert expectation(basis_state(2, 0), SZ) == 1.0


def test_expectation_bell_marginal():
    assert abs(expectation(BELL, kron(SZ, np.eye(2)))) < 1e-15


def test_expectation_matches_triple_product(rng):
    psi = random_state(6, rng)
    op = random_hermitian(6, rng)
    oracle = (psi.conj()[None, :] @ op @ psi[:, None])[0, 0]
    assert abs(expectation(psi, op) - oracle.real) < 1e-12


def test_expectation_dim_mismatch():
    with pytest.raises(ContractError):
        expectation(basis_state(2, 0), np.eye(3))


def test_partial_trace_product():
    psi = kron(basis_state(2, 0)[:, None], basis_state(2, 1)[:, None]).ravel()
    np.testing.assert_allclose(partial_trace(psi, [2, 2], [0]), np.diag([1, 0]), atol=1e-15)


def test_partial_trace_bell():
    np.testing.assert_allclose(partial_trace(BELL, [2, 2], [0]), np.eye(2) / 2, atol=1e-15)


def test_partial_trace_ghz_against_outer_product_sum():
    ghz = np.zeros(8, dtype=complex)
    ghz[0] = ghz[7] = 1 / np.sqrt(2)
    rho_full = np.outer(ghz, ghz.conj()).reshape(2, 2, 2, 2, 2, 2)
    oracle = np.zeros((4, 4), dtype=complex)
    for a in range(2):
        for b1 in range(2):
            for c1 in range(2):
                for b2 in range(2):
                    for c2 in range(2):
                        oracle[2 * b1 + c1, 2 * b2 + c2] += rho_full[a, b1, c1, a, b2, c2]
    rho = partial_trace(ghz, [2, 2, 2], [1, 2])
    np.testing.assert_allclose(rho, oracle, atol=1e-15)
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(rho))[::-1], [0.5, 0.5, 0, 0], atol=1e-12)


def test_partial_trace_keep_order():
    psi = kron(basis_state(2, 0)[:, None], basis_state(3, 2)[:, None]).ravel()
    rho = partial_trace(psi, [2, 3], [1, 0])
    assert rho.shape == (6, 6) and abs(rho[4, 4] - 1) < 1e-15


@pytest.mark.parametrize("keep", [[], [2], [0, 0], [-1]])
def test_partial_trace_invalid_keep(keep):
    with pytest.raises(ContractError):
        partial_trace(BELL, [2, 2], keep)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.lists(st.integers(2, 3), min_size=2, max_size=4))
def test_partial_trace_is_density_matrix(seed, dims):
    rng = np.random.default_rng(seed)
    psi = random_state(int(np.prod(dims)), rng)
    keep = sorted(rng.choice(len(dims), size=rng.integers(1, len(dims)), replace=False).tolist())
    rho = partial_trace(psi, dims, keep)
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-12)
    assert abs(np.trace(rho) - 1) < 1e-12
    assert np.linalg.eigvalsh(rho).min() >= -1e-12


def test_evolve_zero_time(rng):
    psi = random_state(4, rng)
    np.testing.assert_allclose(evolve(psi, random_hermitian(4, rng), 0.0), psi, atol=1e-14)


def test_evolve_sigma_z_pi():
    psi = np.array([0.6, 0.8], dtype=complex)
    np.testing.assert_allclose(evolve(psi, SZ, np.pi), psi * np.exp([-1j * np.pi, 1j * np.pi]), atol=1e-14)


def test_evolve_against_taylor(rng):
    for _ in range(5):
        h = random_hermitian(6, rng)
        t = rng.uniform(-3, 3)
        psi = random_state(6, rng)
        out = evolve(psi, h, t)
        assert abs(np.linalg.norm(out) - 1) < 1e-12
        np.testing.assert_allclose(out, taylor_expm(h, t) @ psi, atol=1e-9)


def test_evolve_rejects_non_hermitian():
    with pytest.raises(ContractError):
        evolve(basis_state(2, 0), np.array([[0, 1], [0, 0]]), 1.0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(-10, 10))
def test_evolve_preserves_inner_products(seed, t):
    rng = np.random.default_rng(seed)
    h = random_hermitian(5, rng)
    phi, psi = random_state(5, rng), random_state(5, rng)
    before = abs(np.vdot(phi, psi))
    after = abs(np.vdot(evolve(phi, h, t), evolve(psi, h, t)))
    assert abs(before - after) < 1e-10
