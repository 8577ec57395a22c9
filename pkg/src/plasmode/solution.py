"""Expansion coefficients of the slab solution and boundary diagnostics.

Unknowns: Drude amplitude E_inf, Debye amplitude E0, continuum coefficient
E(eta) and the accommodation constant A1_tilde = w0 * A1.  Internally the
Debye and continuum amplitudes are carried multiplied by cosh(w0/eta) so
that nothing overflows at small |eta|.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DegenerateError, DomainError, NearCurveError
from .params import DerivedConstants, PlasmaParams, derive
from .quadrature import integrate, integrate_pv
from .spectrum import DPLUS, NEARL, SpectrumResult, analyze_spectrum
from .specfun import (F_moments, T, T1, cosh_ratio, exp_over_cosh, lam, lambda_boundary,
                      lambda_prime, m, m0, sinh_ratio)

TOL_COEFF = 1e-10
TOL_FIELD = 1e-8


def _sech(u):
    u = complex(u)
    if u.real < 0:
        u = -u
    a = np.exp(-u)
    return 2.0 * a / (1.0 + a * a)


def _exp_ratio(x, u):
    """exp(-u x)/cosh(u) for |x| <= 1."""
    return cosh_ratio(x, u) - sinh_ratio(x, u)


def _lpm(eta, dc):
    lp, lm = lambda_boundary(eta, dc)
    return lp * lm


@dataclass(frozen=True)
class SolutionCoefficients:
    params: PlasmaParams
    dc: DerivedConstants
    spectrum: SpectrumResult
    eta0: Optional[complex]
    E_inf: complex
    A1_tilde: complex
    E0: complex
    E0_cosh: complex
    tol: float = TOL_COEFF
    extras: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def alpha_p(self):
        return self.params.alpha_p

    @property
    def C1(self):
        return self.dc.lambda1 - 0.5 * self.dc.lambda_inf * self.A1_tilde

    def continuum_scaled(self, eta):
        """E(eta) cosh(w0/eta), finite on the whole cut."""
        return continuum_scaled(eta, self.dc, self.A1_tilde)

    def continuum(self, eta):
        return continuum_coefficient(eta, self)

    @property
    def meta(self):
        return {"eta0": self.eta0, "alpha_p": self.alpha_p, "dc": self.dc}


@dataclass(frozen=True)
class FieldProfile:
    x_grid: np.ndarray
    e_values: np.ndarray
    boundary_residual: float
    symmetry_residual: float


# --- coefficient formulas ------------------------------------------------

def continuum_scaled(eta, dc: DerivedConstants, A1_tilde):
    eta = np.asarray(eta, dtype=float)
    num = dc.lambda1 * eta * eta + (A1_tilde / 6.0) * (
        2.0 * eta * T1(eta, dc) - 3.0 * dc.lambda_inf * eta * eta)
    return num / (4.0 * dc.c * _lpm(eta, dc))


def continuum_coefficient(eta, coeffs: SolutionCoefficients):
    """E(eta) on the cut; underflows to the exact zero limit as eta -> 0."""
    eta = np.asarray(eta, dtype=float)
    if np.any(eta == 0) or np.any(np.abs(eta) >= 1):
        raise DomainError("continuum coefficient needs 0 < |eta| < 1")
    u = coeffs.dc.w0 / eta
    return coeffs.continuum_scaled(eta) * _sech_arr(u)


def _sech_arr(u):
    u = np.asarray(u, dtype=complex)
    u = np.where(u.real >= 0, u, -u)
    a = np.exp(-u)
    return 2.0 * a / (1.0 + a * a)


def _pole_den(dc, eta0):
    return complex(lambda_prime(eta0, dc)) * (eta0 * eta0 - dc.eta1_sq)


def beta_integrals(dc: DerivedConstants, eta0, tol=TOL_COEFF):
    """beta0, I0 = (1/c) int eta^2 beta, I1 = (1/c) int eta T1 beta."""
    w0 = dc.w0
    if eta0 is not None:
        u0 = w0 / eta0
        beta0 = complex(m0(eta0, dc) * exp_over_cosh(u0) + m0(-eta0, dc) * exp_over_cosh(-u0)) \
            / _pole_den(dc, eta0)
    else:
        beta0 = 0.0

    def beta(x):
        return m(x, dc) * exp_over_cosh(w0 / x) / _lpm(x, dc)

    I0 = integrate(lambda x: x * x * beta(x), -1.0, 1.0, tol=tol).value / dc.c
    I1 = integrate(lambda x: x * T1(x, dc) * beta(x), -1.0, 1.0, tol=tol).value / dc.c
    return beta0, I0, I1


def compute_A1(dc: DerivedConstants, eta0, alpha_p, tol=TOL_COEFF):
    """Accommodation constant A1_tilde = w0 A1 from the normal-momentum balance."""
    if alpha_p == 0:
        return 0.0 + 0.0j
    beta0, I0, I1 = beta_integrals(dc, eta0, tol)
    Tq = complex(T(eta0, dc)) if eta0 is not None else 0.0
    e0 = eta0 if eta0 is not None else 0.0
    li, l1 = dc.lambda_inf, dc.lambda1
    num = l1 * (1.0 / (36.0 * li) - e0 * beta0 + 0.5 * I0)
    den = I1 / 6.0 - 0.25 * li * I0 - beta0 * Tq / 3.0 + 0.5 * beta0 * li * e0
    full = alpha_p * den + (1.0 - alpha_p) / 36.0
    if abs(full) < 1e-12 * max(1.0, abs(alpha_p * num)):
        raise DegenerateError("accommodation equation is degenerate",
                              {"denominator": full, "alpha_p": alpha_p})
    return complex(-alpha_p * num / full)


def compute_E0_cosh(dc: DerivedConstants, eta0, A1_tilde):
    """E0 * cosh(w0/eta0), fixed by regularity of the solution at eta0."""
    if eta0 is None:
        return 0.0 + 0.0j
    den = _pole_den(dc, eta0)
    if abs(den) < 1e-10:
        raise DegenerateError("lambda'(eta0) vanishes; double zero", {"eta0": eta0})
    Tq = complex(T(eta0, dc))
    return complex(-(dc.lambda1 * eta0 + A1_tilde * (Tq / 3.0 - 0.5 * dc.lambda_inf * eta0)) / den)


def compute_E0(dc: DerivedConstants, eta0, A1_tilde):
    """Debye amplitude E0."""
    if eta0 is None:
        return 0.0 + 0.0j
    return compute_E0_cosh(dc, eta0, A1_tilde) * _sech(dc.w0 / eta0)


def solve(params: PlasmaParams, tol=TOL_COEFF, spectrum: SpectrumResult = None) -> SolutionCoefficients:
    """Full coefficient set; refuses parameters on or near the curve L."""
    dc = derive(params)
    sp = spectrum if spectrum is not None else analyze_spectrum(dc)
    if sp.region == NEARL:
        raise NearCurveError("parameters too close to the curve L",
                             {"omega": params.omega, "eps": params.eps})
    eta0 = sp.eta0 if sp.region == DPLUS else None
    At = compute_A1(dc, eta0, params.alpha_p, tol)
    E0c = compute_E0_cosh(dc, eta0, At)
    E0 = E0c * _sech(dc.w0 / eta0) if eta0 is not None else 0.0j
    return SolutionCoefficients(params, dc, sp, eta0, dc.lambda1 / dc.lambda_inf, At, E0, E0c, tol)


def with_forced(coeffs: SolutionCoefficients, A1_tilde=None, drop_debye=False):
    """Copy with a prescribed A1_tilde and/or the Debye term removed."""
    At = coeffs.A1_tilde if A1_tilde is None else complex(A1_tilde)
    eta0 = None if drop_debye else coeffs.eta0
    E0c = compute_E0_cosh(coeffs.dc, eta0, At)
    E0 = E0c * _sech(coeffs.dc.w0 / eta0) if eta0 is not None else 0.0j
    return SolutionCoefficients(coeffs.params, coeffs.dc, coeffs.spectrum, eta0,
                                coeffs.E_inf, At, E0, E0c, coeffs.tol)


# --- field ---------------------------------------------------------------

def field_value(coeffs: SolutionCoefficients, x, tol=TOL_FIELD):
    """e(x) = E_inf + 2 E0 cosh(w0 x/eta0) + 2 int cosh(w0 x/eta) E(eta) deta."""
    dc = coeffs.dc
    val = coeffs.E_inf
    if coeffs.eta0 is not None:
        val = val + 2.0 * coeffs.E0_cosh * complex(cosh_ratio(x, dc.w0 / coeffs.eta0))
    res = integrate(lambda t: cosh_ratio(x, dc.w0 / t) * coeffs.continuum_scaled(t),
                    -1.0, 1.0, tol=tol)
    return complex(val + 2.0 * res.value)


def field_profile(coeffs: SolutionCoefficients, x_grid, tol=TOL_FIELD) -> FieldProfile:
    xs = np.asarray(x_grid, dtype=float)
    if np.any(np.abs(xs) > 1.0):
        raise DomainError("field profile needs |x| <= 1")
    vals = np.array([field_value(coeffs, x, tol) for x in xs])
    mirror = np.array([field_value(coeffs, -x, tol) for x in xs])
    edge = max(abs(field_value(coeffs, 1.0, tol) - 1.0), abs(field_value(coeffs, -1.0, tol) - 1.0))
    return FieldProfile(xs, vals, float(edge), float(np.max(np.abs(vals - mirror))))


def field_derivative(coeffs: SolutionCoefficients, x, tol=TOL_FIELD):
    """de/dx from term-wise differentiation of the expansion."""
    dc = coeffs.dc
    w0 = dc.w0
    val = 0.0j
    if coeffs.eta0 is not None:
        val += (coeffs.E0_cosh / coeffs.eta0) * complex(sinh_ratio(x, w0 / coeffs.eta0))
    res = integrate(lambda t: sinh_ratio(x, w0 / t) * coeffs.continuum_scaled(t) / t,
                    -1.0, 1.0, tol=tol)
    return complex(2.0 * w0 * (val + res.value))


# --- distribution at the wall --------------------------------------------

def boundary_distribution(coeffs: SolutionCoefficients, mu, tol=TOL_FIELD):
    """h(-1, mu): Drude, Debye and continuum parts, delta term included."""
    mu = float(mu)
    if mu == 0.0 or abs(mu) >= 1.0:
        raise DomainError("boundary distribution needs 0 < |mu| < 1")
    dc = coeffs.dc
    w0, e2 = dc.w0, dc.eta1_sq
    out = coeffs.E_inf * mu / w0
    if coeffs.eta0 is not None:
        e0 = coeffs.eta0
        u0 = w0 / e0
        Fp = (mu * e0 - e2) / (e0 - mu)
        Fm = (-mu * e0 - e2) / (-e0 - mu)
        out += coeffs.E0_cosh / w0 * complex(Fp * exp_over_cosh(u0) + Fm * exp_over_cosh(-u0))

    def g(t):
        return (mu * t - e2) * coeffs.continuum_scaled(t) * exp_over_cosh(w0 / t)

    try:
        # (mu t - eta1^2)/(t - mu) g-part: PV of g(t)/(t - mu)
        pv = integrate_pv(g, mu, -1.0, 1.0, tol=tol).value
    except Exception as exc:
        exc.args = exc.args + (f"mu={mu}",)
        raise
    delta = -2.0 * dc.c * complex(lam(mu, dc)) / mu * complex(
        coeffs.continuum_scaled(mu) * exp_over_cosh(w0 / mu))
    return complex(out + 2.0 / w0 * (pv + delta))


def jump_fit(coeffs: SolutionCoefficients, mus=None, tol=TOL_FIELD):
    """Fit h(-1,mu) - h(-1,-mu) = s (mu - 2/3); return (s, max residual)."""
    mus = np.linspace(0.05, 0.95, 10) if mus is None else np.asarray(mus, float)
    d = np.array([boundary_distribution(coeffs, x, tol) - boundary_distribution(coeffs, -x, tol)
                  for x in mus])
    b = mus - 2.0 / 3.0
    s = np.sum(d * b) / np.sum(b * b)
    return complex(s), float(np.max(np.abs(d - s * b)))


def _moment_sum(coeffs, mom_disc, mom_cont, drude, tol):
    """(1/w0)[drude E_inf + Debye + 2 int mom(eta) E cosh e^{w0/eta}/cosh]."""
    dc = coeffs.dc
    w0 = dc.w0
    out = drude * coeffs.E_inf
    if coeffs.eta0 is not None:
        e0 = coeffs.eta0
        u0 = w0 / e0
        out += coeffs.E0_cosh * complex(mom_disc(e0) * exp_over_cosh(u0)
                                        + mom_disc(-e0) * exp_over_cosh(-u0))
    res = integrate(lambda t: mom_cont(t) * coeffs.continuum_scaled(t) * exp_over_cosh(w0 / t),
                    -1.0, 1.0, tol=tol)
    return complex((out + 2.0 * res.value) / w0)


def nonflow_moment(coeffs: SolutionCoefficients, tol=TOL_COEFF):
    """int_{-1}^{1} mu h(-1, mu) dmu by exchanging the mu and eta integrations."""
    dc = coeffs.dc
    return _moment_sum(coeffs, lambda z: F_moments(complex(z), dc)[1],
                       lambda t: F_moments(t, dc)[1], 2.0 / 3.0, tol)


def accommodation_moment(coeffs: SolutionCoefficients, tol=TOL_COEFF):
    """int_0^1 (mu^2 - 2mu/3) h(-1, mu) dmu by exchanged integration."""
    dc = coeffs.dc
    return _moment_sum(coeffs, lambda z: m0(z, dc), lambda t: m(t, dc), 1.0 / 36.0, tol)


def accommodation_target(coeffs: SolutionCoefficients):
    """Right side -(1 - alpha_p) A1_tilde / (36 alpha_p w0) of the balance."""
    a = coeffs.alpha_p
    if a == 0:
        return float("nan")
    return complex(-(1.0 - a) * coeffs.A1_tilde / (36.0 * a * coeffs.dc.w0))


def accommodation_residual(coeffs: SolutionCoefficients, tol=TOL_COEFF):
    """|moment - target| * |w0|; zero when alpha_p = 0 (equation is void)."""
    if coeffs.alpha_p == 0:
        return 0.0
    return abs(accommodation_moment(coeffs, tol) - accommodation_target(coeffs)) * abs(coeffs.dc.w0)


def density(coeffs: SolutionCoefficients, x, tol=TOL_FIELD):
    """Zeroth mu-moment n(x) = int h(x, mu) dmu via exchanged integration."""
    dc = coeffs.dc
    w0 = dc.w0
    out = 0.0j
    if coeffs.eta0 is not None:
        e0 = coeffs.eta0
        u0 = w0 / e0
        out += coeffs.E0_cosh * complex(F_moments(complex(e0), dc)[0] * _exp_ratio(x, u0)
                                        + F_moments(complex(-e0), dc)[0] * _exp_ratio(x, -u0))
    res = integrate(lambda t: F_moments(t, dc)[0] * coeffs.continuum_scaled(t) * _exp_ratio(x, w0 / t),
                    -1.0, 1.0, tol=tol)
    return complex((out + 2.0 * res.value) / w0)


# --- analytic solution of the jump problem -------------------------------

def M_closed(z, coeffs: SolutionCoefficients):
    """Closed form of M(z) = int (z eta - eta1^2)/(eta - z) 2 E cosh deta."""
    dc = coeffs.dc
    z = complex(z)
    R = (coeffs.E_inf - 0.5 * coeffs.A1_tilde) * z
    if coeffs.eta0 is not None:
        e0 = coeffs.eta0
        R += coeffs.E0_cosh * 2.0 * z * (e0 * e0 - dc.eta1_sq) / (e0 * e0 - z * z)
    return complex(-R + (coeffs.A1_tilde / 3.0 * complex(T(z, dc)) + coeffs.C1 * z) / complex(lam(z, dc)))


def M_quadrature(z, coeffs: SolutionCoefficients, tol=TOL_COEFF):
    dc = coeffs.dc
    z = complex(z)
    f = lambda t: (z * t - dc.eta1_sq) / (t - z) * 2.0 * coeffs.continuum_scaled(t)
    return complex(integrate(f, -1.0, 1.0, tol=tol).value)


# --- residue identities --------------------------------------------------

def J_residues(dc: DerivedConstants, eta0):
    """Closed forms of J1 and J2 from contour integration."""
    J1 = -1.0 / dc.lambda_inf + 1.0 / dc.lambda1
    J2 = 1.0 / (2.0 * dc.c * dc.lambda1)
    if eta0 is not None:
        den = _pole_den(dc, eta0)
        J1 += 2.0 * eta0 / den
        J2 += 2.0 * complex(T(eta0, dc)) / den
    return complex(J1), complex(J2)


def J_quadratures(dc: DerivedConstants, tol=TOL_COEFF):
    """Defining integrals of J1 and J2 over the cut."""
    e2 = dc.eta1_sq

    def j1(t):
        lp, lm = lambda_boundary(t, dc)
        return (1.0 / lp - 1.0 / lm) * t / (t * t - e2)

    J1 = integrate(j1, -1.0, 1.0, tol=tol).value / (2j * np.pi)
    J2 = integrate(lambda t: t * T1(t, dc) / _lpm(t, dc), -1.0, 1.0, tol=tol).value / (2.0 * dc.c)
    return complex(J1), complex(J2)
