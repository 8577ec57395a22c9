"""Absorbed power Q0 = -Im Q1 computed along three independent routes.

Q1 is the slab average (1/2) int_{-1}^{1} e(x) dx.

closed     : residue series for J1 plus the J0 quadrature
quadrature : direct continuum integral int eta E(eta) sinh(w0/eta) deta
spatial    : integral of the reconstructed field profile
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import zeta

from .errors import SeriesError
from .params import DerivedConstants
from .quadrature import SeriesResult, integrate, sum_symmetric_series
from .solution import (TOL_COEFF, SolutionCoefficients, _lpm, _pole_den, field_value)
from .specfun import T1, lam, tanh_safe

TOL_SERIES = 1e-12


@dataclass(frozen=True)
class AbsorptionResult:
    Q1_closed: complex
    Q1_quadrature: complex
    Q1_spatial: complex
    Q0: float
    series_terms: int
    agreement: float

    @property
    def routes(self):
        return {"closed": self.Q1_closed, "quadrature": self.Q1_quadrature,
                "spatial": self.Q1_spatial}

    @property
    def q0_nonnegative(self):
        return self.Q0 >= 0.0


def t_nodes(dc: DerivedConstants, k):
    """Zeros t_k = 2 w0 i / (pi (2k+1)) of cosh(w0/z) in the upper half-plane."""
    return 2j * dc.w0 / (np.pi * (2 * np.asarray(k) + 1))


def _series_tail(dc: DerivedConstants):
    """Hurwitz-zeta sum of the small-t expansion of the summand for k >= K."""
    e2, c = dc.eta1_sq, dc.c
    a = 1j * np.pi * e2 / (2.0 * c)
    b = -(1.0 + e2) / c
    g = (-1.0 / e2, a / e2, -(a * a - b + 1.0 / e2) / e2)
    tau = 2j * dc.w0 / np.pi

    def tail(K):
        q = K + 0.5
        return sum(gi * tau ** (4 + i) * 2.0 ** (-(4 + i)) * zeta(4 + i, q)
                   for i, gi in enumerate(g))

    return tail


def t_series(dc: DerivedConstants, eta0=None, tol=TOL_SERIES, tail=True) -> SeriesResult:
    """sum over all integers k of t_k^4 / (lambda(t_k)(t_k^2 - eta1^2))."""

    def term(k):
        t = t_nodes(dc, k)
        return t ** 4 / (lam(t, dc) * (t * t - dc.eta1_sq))

    def guard(k):
        t = t_nodes(dc, k)
        bad = np.abs(t.imag) < 1e-10
        if eta0 is not None:
            bad |= (np.abs(t - eta0) < 1e-10) | (np.abs(t + eta0) < 1e-10)
        if np.any(bad):
            raise SeriesError("t_k lands on the cut or on a Debye zero",
                              {"k": k[bad].tolist(), "t": t[bad].tolist()})

    return sum_symmetric_series(term, tol=tol, tail=_series_tail(dc) if tail else None,
                                guard=guard)


def J1_series(dc: DerivedConstants, eta0, tol=TOL_SERIES):
    """J1 by residues: Drude, Debye and eta1 poles plus the t_k series.

    Returns (value, number of series terms).
    """
    w0 = dc.w0
    val = -w0 / dc.lambda_inf + dc.eta1 / dc.lambda1 * complex(tanh_safe(w0 / dc.eta1))
    if eta0 is not None:
        val += 2.0 * eta0 * eta0 * complex(tanh_safe(w0 / eta0)) / _pole_den(dc, eta0)
    s = t_series(dc, eta0, tol)
    return complex(val - s.value / w0), s.terms


def J1_quadrature(dc: DerivedConstants, tol=TOL_COEFF):
    """(1/c) int_0^1 eta^3 tanh(w0/eta) / (lambda+ lambda-) deta."""
    f = lambda t: t ** 3 * tanh_safe(dc.w0 / t) / _lpm(t, dc)
    return complex(integrate(f, 0.0, 1.0, tol=tol).value / dc.c)


def J0_quadrature(dc: DerivedConstants, tol=TOL_COEFF):
    """(1/c) int_0^1 eta^2 T1(eta) tanh(w0/eta) / (lambda+ lambda-) deta."""
    f = lambda t: t * t * T1(t, dc) * tanh_safe(dc.w0 / t) / _lpm(t, dc)
    return complex(integrate(f, 0.0, 1.0, tol=tol).value / dc.c)


def _discrete_part(co: SolutionCoefficients):
    w0 = co.dc.w0
    val = co.E_inf
    if co.eta0 is not None:
        val += 2.0 * co.E0_cosh * co.eta0 / w0 * complex(tanh_safe(w0 / co.eta0))
    return val


def Q1_closed(co: SolutionCoefficients, tol=TOL_SERIES, tol_quad=TOL_COEFF):
    dc = co.dc
    # J1 belongs to the plasma, not to the coefficients: keep the Debye pole
    # even when the Debye amplitude has been forced to zero
    J1, n = J1_series(dc, co.spectrum.eta0, tol)
    J0 = J0_quadrature(dc, tol_quad)
    return complex(_discrete_part(co) + (co.C1 * J1 + co.A1_tilde / 3.0 * J0) / dc.w0), n


def Q1_quadrature(co: SolutionCoefficients, tol=TOL_COEFF):
    w0 = co.dc.w0
    f = lambda t: t * co.continuum_scaled(t) * tanh_safe(w0 / t)
    cont = integrate(f, -1.0, 1.0, tol=tol).value
    return complex(_discrete_part(co) + 2.0 / w0 * cont)


def Q1_spatial(co: SolutionCoefficients, tol=1e-9, inner_tol=1e-11):
    """int_0^1 e(x) dx, which equals the slab average since e is even."""
    f = lambda xs: np.array([field_value(co, x, inner_tol) for x in xs])
    return complex(integrate(f, 0.0, 1.0, tol=tol, split_zero=False).value)


def _agreement(vals):
    worst = 0.0
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            a, b = vals[i], vals[j]
            worst = max(worst, abs(a - b) / max(abs(a), abs(b), 1e-300))
    return worst


def compute_absorption(co: SolutionCoefficients, tol_series=TOL_SERIES, tol_coeff=TOL_COEFF,
                       tol_field=1e-9) -> AbsorptionResult:
    qa, n = Q1_closed(co, tol_series, tol_coeff)
    qb = Q1_quadrature(co, tol_coeff)
    qc = Q1_spatial(co, tol_field)
    return AbsorptionResult(qa, qb, qc, float(-qa.imag), n, _agreement([qa, qb, qc]))
