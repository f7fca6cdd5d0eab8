import numpy as np
import pytest
import scipy.integrate
from hypothesis import given, settings
from hypothesis import strategies as st

from genent.chain import ground_state_sector
from genent.errors import ContractError
from genent.fermions import (
    _so2N_square_sum,
    bdg_coefficients,
    bogoliubov_solution,
    critical_exponent_fit,
    dispersion,
    energy_per_site_thermo,
    ground_energy_analytic,
    number_variance,
    purity_curve_point,
    purity_so2N,
    purity_uN_finite,
    purity_uN_thermo,
    shifted_purity,
)
from genent.model import G_CRITICAL, ChainParams

gammas = st.floats(0.01, 1.0)
couplings = st.floats(0.0, 3.0)
sizes = st.sampled_from([4, 6, 8, 12, 20, 64, 100])


def quadrature_purity(g, gamma):
    """Continuum limit of (4/N) sum_k (v_k^2 - 1/2)^2 with v_k^2 - 1/2 = -xi_k / (2 eps_k)."""
    def f(k):
        xi = 2 * (1 - 2 * g * np.cos(k))
        eps = 2 * np.sqrt((-1 + 2 * g * np.cos(k)) ** 2 + 4 * g**2 * gamma**2 * np.sin(k) ** 2)
        return (xi / (2 * eps)) ** 2

    val, _ = scipy.integrate.quad(f, -np.pi, np.pi, epsabs=1e-13, epsrel=1e-13, limit=400, points=[0.0])
    return 4 * val / (2 * np.pi)


def test_dispersion_examples():
    np.testing.assert_allclose(dispersion(0.0, 0.3, np.linspace(-3, 3, 7)), 2.0)
    assert dispersion(0.5, 1.0, np.pi / 3) == pytest.approx(2.0, abs=1e-14)
    k = np.pi / 100
    assert dispersion(0.5, 1.0, k) == pytest.approx(2 * k, rel=1e-2)
    assert dispersion(0.5, 1.0, k) == pytest.approx(0.0628, rel=1e-2)


def test_bdg_vacuum_at_zero_coupling():
    for k in (0.3, -2.0):
        xi, delta, u, v = bdg_coefficients(0.0, 0.7, k)
        assert (xi, delta, u, v) == (2.0, 0.0, 1.0, 0.0)


def test_bdg_critical_midpoint():
    _, _, _, v = bdg_coefficients(0.5, 1.0, np.pi / 2)
    assert v**2 == pytest.approx((1 - 1 / np.sqrt(2)) / 2, abs=1e-14)
    assert v**2 == pytest.approx(0.1464466, abs=1e-7)


@settings(max_examples=100, deadline=None)
@given(couplings, st.floats(0.0, 1.0), sizes)
def test_bogoliubov_invariants(g, gamma, n):
    sol = bogoliubov_solution(ChainParams(n, g, gamma))
    np.testing.assert_allclose(sol.u**2 + sol.v**2, 1.0, atol=1e-14)
    np.testing.assert_allclose(sol.u, sol.u[::-1], atol=1e-15)
    np.testing.assert_allclose(sol.v, -sol.v[::-1], atol=1e-15)
    np.testing.assert_allclose(np.sqrt(sol.xi**2 + 4 * sol.delta**2), dispersion(g, gamma, sol.momenta), atol=1e-12)
    np.testing.assert_allclose(sol.eps, dispersion(g, gamma, sol.momenta), atol=1e-12)
    if gamma > 0:
        assert np.all(sol.eps > 0)
    np.testing.assert_allclose(np.cos(sol.phi), sol.u, atol=1e-14)
    # diagonalization check: the 2x2 Bogoliubov rotation kills the pairing term
    xi, d, u, v = sol.xi, sol.delta, sol.u, sol.v
    np.testing.assert_allclose(xi * 2 * u * v - 2 * d * (u**2 - v**2), 0, atol=1e-12)


def test_ground_energy_examples():
    assert ground_energy_analytic(ChainParams(4, 0.0, 1.0)) == -4.0
    assert ground_energy_analytic(ChainParams(4096, 0.0, 1.0)) / 4096 == pytest.approx(-1.0, abs=1e-12)
    p = ChainParams(8, 0.5, 1.0)
    assert ground_energy_analytic(p) == pytest.approx(ground_state_sector(p).energy, abs=1e-10)


def test_energy_per_site_thermo():
    assert energy_per_site_thermo(0.0, 0.5) == pytest.approx(-1.0, abs=1e-12)
    assert energy_per_site_thermo(0.5, 1.0) == pytest.approx(-4 / np.pi, abs=1e-10)
    for g, gamma in [(0.3, 0.5), (1.2, 0.8)]:
        assert energy_per_site_thermo(g, gamma) == pytest.approx(
            ground_energy_analytic(ChainParams(2000, g, gamma)) / 2000, abs=1e-9
        )


def test_purity_finite_examples():
    for n in (4, 10, 50):
        assert purity_uN_finite(ChainParams(n, 0.0, 0.4)) == 1.0
    assert purity_uN_finite(ChainParams(4, 0.5, 1.0)) == pytest.approx(0.5, abs=1e-14)
    assert purity_uN_finite(ChainParams(1000, 0.3, 1.0)) == pytest.approx(0.82, abs=1e-2)


def test_purity_finite_symmetric_grid():
    sol = bogoliubov_solution(ChainParams(12, 0.37, 0.6))
    np.testing.assert_allclose(sol.occupations, sol.occupations[::-1], atol=1e-15)


def test_purity_thermo_examples():
    for gamma in np.linspace(0.1, 1.0, 10):
        assert purity_uN_thermo(0.0, gamma) == 1.0
    for g in (0.51, 0.8, 3.0):
        assert purity_uN_thermo(g, 0.5) == 2 / 3
    assert purity_uN_thermo(0.25, 0.5) == pytest.approx(0.9635332, abs=1e-7)
    assert purity_uN_thermo(0.5, 1.0) == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("g,gamma", [(0.1, 0.3), (0.25, 0.5), (0.4, 0.9), (0.3, 1.0), (0.45, 0.2), (0.7, 0.5), (1.5, 0.25)])
def test_purity_thermo_matches_quadrature(g, gamma):
    assert purity_uN_thermo(g, gamma) == pytest.approx(quadrature_purity(g, gamma), abs=1e-9)


def test_purity_thermo_gamma_one_guard():
    for g in (0.1, 0.3, 0.45):
        assert purity_uN_thermo(g, 1.0) == 1 - 2 * g * g
        assert purity_uN_thermo(g, 1.0 - 1e-5) == pytest.approx(1 - 2 * g * g, abs=1e-4)


@pytest.mark.parametrize("gamma", [0.1, 0.25, 0.5, 0.75, 1.0])
def test_purity_thermo_continuous_at_critical_point(gamma):
    left = purity_uN_thermo(G_CRITICAL, gamma)
    assert abs(left - 1 / (1 + gamma)) < 1e-12
    assert abs(purity_uN_thermo(G_CRITICAL + 1e-15, gamma) - left) < 1e-12


def test_purity_thermo_rejects_gamma_zero():
    with pytest.raises(ContractError):
        purity_uN_thermo(0.3, 0.0)


def test_purity_thermo_monotone_ising():
    g = np.linspace(0, 0.5, 201)
    p = np.array([purity_uN_thermo(x, 1.0) for x in g])
    assert np.all(np.diff(p) < 0)


def test_shifted_purity_examples():
    assert shifted_purity(0.7, 1.0) == 0.0
    assert shifted_purity(0.0, 1.0) == 0.5
    assert shifted_purity(0.4, 1.0) == pytest.approx(0.18, abs=1e-14)
    for gamma in (0.25, 0.5, 1.0):
        pt = purity_curve_point(0.3, gamma)
        assert abs(pt.shifted_purity - (pt.purity - 1 / (1 + gamma))) < 1e-14


def test_finite_size_converges_to_thermo():
    # the antiperiodic grid is a midpoint rule for a smooth periodic integrand:
    # away from g_c the error decays geometrically, not as 1/N
    errs = [abs(purity_uN_finite(ChainParams(n, 0.3, 1.0)) - purity_uN_thermo(0.3, 1.0)) for n in (8, 16, 32, 64)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[3] < 1e-12


def test_number_variance_examples():
    assert number_variance(ChainParams(6, 0.0, 1.0)) == 0.0
    assert number_variance(ChainParams(4, 0.5, 1.0)) == pytest.approx(1.0, abs=1e-14)


@settings(max_examples=100, deadline=None)
@given(couplings, st.floats(0.0, 1.0), sizes)
def test_number_variance_identity(g, gamma, n):
    p = ChainParams(n, g, gamma)
    assert abs(purity_uN_finite(p) - (1 - 2 / n * number_variance(p))) < 1e-12


@pytest.mark.parametrize("g,gamma", [(0.0, 1.0), (0.5, 1.0), (2.0, 0.4), (0.3, 0.05)])
def test_so2N_purity_is_maximal(g, gamma):
    assert purity_so2N(ChainParams(10, g, gamma)) == pytest.approx(1.0, abs=1e-12)


def test_so2N_phase_is_irrelevant():
    p = ChainParams(8, 0.4, 0.7)
    sol = bogoliubov_solution(p)
    ref = _so2N_square_sum(sol.u, sol.v, -1j)
    for phase in (1.0, 1j, np.exp(0.3j), -1.0):
        assert _so2N_square_sum(sol.u, sol.v, phase) == pytest.approx(ref, abs=1e-14)
        assert purity_so2N(p, pairing_phase=phase) == pytest.approx(1.0, abs=1e-12)


def test_exponent_fit_ising():
    fit = critical_exponent_fit(1.0, (0.40, 0.49), 50)
    assert fit.nu == pytest.approx(1.0, abs=0.05)
    assert fit.r_squared > 0.999


def test_exponent_fit_matches_polyfit_oracle():
    for gamma, window in [(1.0, (0.40, 0.49)), (0.5, (0.45, 0.499)), (1.0, (0.1, 0.2))]:
        g = np.linspace(*window, 50)
        y = np.array([purity_uN_thermo(x, gamma) - 1 / (1 + gamma) for x in g])
        slope, _ = np.polyfit(np.log(0.5 - g), np.log(y), 1)
        nu, r2 = critical_exponent_fit(gamma, window, 50)
        assert nu == pytest.approx(slope, abs=1e-10)
        assert 0 < r2 <= 1


@pytest.mark.parametrize("gamma", [0.25, 0.5, 1.0])
def test_exponent_approaches_one_close_to_critical_point(gamma):
    assert critical_exponent_fit(gamma, (0.4999, 0.49999), 20).nu == pytest.approx(1.0, abs=2e-3)


def test_exponent_far_from_critical_point_is_not_asymptotic():
    nu, _ = critical_exponent_fit(1.0, (0.10, 0.20), 50)
    assert abs(nu - 1) > 0.3


@pytest.mark.parametrize("window", [(0.45, 0.5), (0.4, 0.6), (0.0, 0.3), (0.3, 0.2)])
def test_exponent_window_guard(window):
    with pytest.raises(ContractError):
        critical_exponent_fit(1.0, window, 50)
