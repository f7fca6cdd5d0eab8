"""Closed-form solution of the XY chain through Jordan-Wigner and Bogoliubov.

Per momentum mode of the antiperiodic grid,

    xi_k    = 2 (1 - 2 g cos k)          single-particle energy
    delta_k = 2 g gamma sin k            pairing amplitude
    eps_k   = sqrt(xi_k^2 + 4 delta_k^2) quasiparticle energy
    v_k^2   = (1 - xi_k / eps_k) / 2,    u_k = sqrt(1 - v_k^2),  sign v_k = sign sin k

and the ground state is the paired state with no quasiparticles.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.integrate
import scipy.stats

from .errors import ContractError
from .model import G_CRITICAL, ChainParams, MomentumGrid, momentum_grid

GAMMA_ONE_GUARD = 1e-8

__all__ = [
    "BogoliubovSolution", "PurityCurvePoint", "ExponentFit", "MomentumGrid", "momentum_grid",
    "dispersion", "bdg_coefficients", "bogoliubov_solution", "ground_energy_analytic",
    "energy_per_site_thermo", "purity_uN_finite", "purity_uN_thermo", "shifted_purity",
    "purity_curve_point", "number_variance", "purity_so2N", "critical_exponent_fit",
]


@dataclass(frozen=True)
class BogoliubovSolution:
    momenta: np.ndarray
    xi: np.ndarray
    delta: np.ndarray
    eps: np.ndarray
    u: np.ndarray
    v: np.ndarray

    @property
    def phi(self) -> np.ndarray:
        return np.arctan2(self.v, self.u)

    @property
    def occupations(self) -> np.ndarray:
        return self.v**2


@dataclass(frozen=True)
class PurityCurvePoint:
    g: float
    gamma: float
    purity: float
    shifted_purity: float


@dataclass(frozen=True)
class ExponentFit:
    nu: float
    r_squared: float
    amplitude: float
    max_residual: float

    def __iter__(self):
        yield self.nu
        yield self.r_squared


def dispersion(g, gamma, k):
    """eps_k = 2 sqrt((-1 + 2 g cos k)^2 + 4 g^2 gamma^2 sin^2 k)."""
    k = np.asarray(k, dtype=float)
    return 2.0 * np.sqrt((-1.0 + 2.0 * g * np.cos(k)) ** 2 + 4.0 * g**2 * gamma**2 * np.sin(k) ** 2)


def bdg_coefficients(g, gamma, k):
    """Return ``(xi, delta, u, v)`` for momentum ``k`` (scalar or array)."""
    k = np.asarray(k, dtype=float)
    xi = 2.0 * (1.0 - 2.0 * g * np.cos(k))
    delta = 2.0 * g * gamma * np.sin(k)
    eps = np.sqrt(xi**2 + 4.0 * delta**2)
    with np.errstate(divide="ignore", invalid="ignore"):
        # (1 ∓ xi/eps)/2 = 2 delta^2 / (eps (eps ± xi)): evaluate the small one of u^2, v^2 this way
        small = 2.0 * delta**2 / (eps * (eps + np.abs(xi)))
    small = np.where(eps == 0, 0.5, small)
    v2 = np.where(xi >= 0, small, 1.0 - small)
    u2 = np.where(xi >= 0, 1.0 - small, small)
    u = np.sqrt(u2)
    v = np.where(np.sin(k) < 0, -1.0, 1.0) * np.sqrt(v2)
    if xi.ndim == 0:
        return float(xi), float(delta), float(u), float(v)
    return xi, delta, u, v


def bogoliubov_solution(p: ChainParams) -> BogoliubovSolution:
    k = momentum_grid(p.n_sites).momenta
    xi, delta, u, v = bdg_coefficients(p.g, p.gamma, k)
    return BogoliubovSolution(k, xi, delta, dispersion(p.g, p.gamma, k), u, v)


def ground_energy_analytic(p: ChainParams) -> float:
    """-(1/2) sum_k eps_k: the quasiparticle vacuum."""
    k = momentum_grid(p.n_sites).momenta
    return float(-0.5 * np.sum(dispersion(p.g, p.gamma, k)))


def energy_per_site_thermo(g: float, gamma: float) -> float:
    """N -> infinity limit of the ground energy per site, -(1/4π) ∫ eps_k dk."""
    val, _ = scipy.integrate.quad(lambda k: dispersion(g, gamma, k), -np.pi, np.pi, limit=200, points=[0.0])
    return float(-val / (4.0 * np.pi))


def purity_uN_finite(p: ChainParams) -> float:
    """(4/N) sum_k (v_k^2 - 1/2)^2."""
    sol = bogoliubov_solution(p)
    return float(4.0 / p.n_sites * np.sum((sol.v**2 - 0.5) ** 2))


def _check_gamma(gamma: float) -> None:
    if not 0 < gamma <= 1:
        raise ContractError(
            f"gamma must lie in (0, 1], got {gamma}; the isotropic gamma = 0 chain is out of scope"
        )


def purity_uN_thermo(g: float, gamma: float) -> float:
    """Thermodynamic-limit u(N) purity of the ground state.

    ``1/(1+gamma)`` above g = 1/2; below it the closed form, replaced by its
    ``1 - 2 g^2`` limit when gamma is within ``GAMMA_ONE_GUARD`` of 1.
    """
    _check_gamma(gamma)
    if g < 0:
        raise ContractError("g must be >= 0")
    if g > G_CRITICAL:
        return 1.0 / (1.0 + gamma)
    if abs(1.0 - gamma) < GAMMA_ONE_GUARD:
        return 1.0 - 2.0 * g * g
    c = 1.0 - gamma**2
    return (1.0 - gamma**2 / np.sqrt(1.0 - 4.0 * g * g * c)) / c


def shifted_purity(g: float, gamma: float) -> float:
    """Purity minus its ordered-phase value 1/(1+gamma): a disorder parameter."""
    if g > G_CRITICAL:
        _check_gamma(gamma)
        return 0.0
    return purity_uN_thermo(g, gamma) - 1.0 / (1.0 + gamma)


def purity_curve_point(g: float, gamma: float) -> PurityCurvePoint:
    p = purity_uN_thermo(g, gamma)
    return PurityCurvePoint(g, gamma, p, p - 1.0 / (1.0 + gamma))


def number_variance(p: ChainParams) -> float:
    """<N^2> - <N>^2 of the paired state.

    Each pair (k, -k) is empty with probability u_k^2 and doubly occupied with
    probability v_k^2, hence a variance (2 u_k v_k)^2 per pair.
    """
    sol = bogoliubov_solution(p)
    pos = sol.momenta > 0
    return float(np.sum((2.0 * sol.u[pos] * sol.v[pos]) ** 2))


def _so2N_square_sum(u: np.ndarray, v: np.ndarray, pairing_phase: complex) -> float:
    # n_k - 1/2 terms over all k, plus each (k, -k) pairing element and its
    # Hermitian partner: 2 |<c_k^+ c_-k^+>|^2 per k in K+.  Hopping terms vanish.
    half = len(u) // 2
    diag = np.sum((v**2 - 0.5) ** 2)
    pair = pairing_phase * u[half:] * v[half:]
    return float(diag + 2.0 * np.sum(np.abs(pair) ** 2))


def purity_so2N(p: ChainParams, pairing_phase: complex = -1j) -> float:
    """Purity relative to all quadratic fermion operators so(2N).

    ``pairing_phase`` is the phase convention for <c_k^+ c_-k^+> = phase * u_k v_k;
    it cannot affect the result.  Normalized on the fermionic vacuum.
    """
    sol = bogoliubov_solution(p)
    n = p.n_sites
    vacuum = _so2N_square_sum(np.ones(n), np.zeros(n), pairing_phase)
    return _so2N_square_sum(sol.u, sol.v, pairing_phase) / vacuum


def critical_exponent_fit(gamma: float, g_window, n_points: int = 50) -> ExponentFit:
    """Ordinary least squares of log(shifted purity) against log(g_c - g).

    The ``n_points`` couplings are evenly spaced over ``g_window`` (inclusive).
    """
    _check_gamma(gamma)
    g_lo, g_hi = (float(x) for x in g_window)
    if not 0 < g_lo < g_hi:
        raise ContractError(f"window {g_window} must satisfy 0 < g_lo < g_hi")
    if g_hi > G_CRITICAL - 1e-6:
        raise ContractError(f"window {g_window} touches the critical point g_c = {G_CRITICAL}")
    if n_points < 3:
        raise ContractError("need at least 3 points")
    g = np.linspace(g_lo, g_hi, n_points)
    y = np.log([shifted_purity(x, gamma) for x in g])
    x = np.log(G_CRITICAL - g)
    fit = scipy.stats.linregress(x, y)
    resid = y - (fit.intercept + fit.slope * x)
    return ExponentFit(float(fit.slope), float(fit.rvalue**2), float(np.exp(fit.intercept)), float(np.abs(resid).max()))
