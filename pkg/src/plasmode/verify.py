"""Invariant suite behind ``plasmode verify``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .absorption import J1_quadrature, J1_series, compute_absorption
from .errors import NumericalError
from .params import PlasmaParams, derive, identity_residuals
from .solution import (J_quadratures, J_residues, M_closed, M_quadrature, accommodation_residual,
                       field_profile, jump_fit, nonflow_moment, solve)
from .spectrum import DPLUS, analyze_spectrum, newton_multistart
from .specfun import T, T0, lam, lambda_boundary


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tol: float

    @property
    def passed(self):
        return bool(np.isfinite(self.value) and self.value < self.tol)

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name:<34s} residual={self.value:.3e} tol={self.tol:.1e}"


def _rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / np.maximum(np.maximum(np.abs(a), np.abs(b)), 1e-300)))


def run_checks(p: PlasmaParams, tols=None) -> list:
    tols = tols or {}
    tc = tols.get("coeff", 1e-10)
    tf = tols.get("field", 1e-8)
    ts = tols.get("series", 1e-12)
    dc = derive(p)
    out = [Check("derived constants", max(identity_residuals(dc).values()), 1e-14)]

    rng = np.random.default_rng(7)
    z = rng.uniform(-2.5, 2.5, 40) + 1j * rng.choice([-1, 1], 40) * rng.uniform(0.1, 2.0, 40)
    out.append(Check("lambda + T = 1 + 2 z T0(-z)", _rel(lam(z, dc) + T(z, dc), 1 + 2 * z * T0(-z, dc)), 1e-12))
    mu = np.linspace(0.05, 0.95, 19)
    out.append(Check("lambda+(-mu) = lambda-(mu)", _rel(lambda_boundary(-mu, dc)[0], lambda_boundary(mu, dc)[1]), 1e-12))
    out.append(Check("T(eta1) - T(-eta1) = eta1/c", _rel(T(dc.eta1, dc) - T(-dc.eta1, dc), dc.eta1 / dc.c), 1e-12))

    sp = analyze_spectrum(dc)
    zeros = newton_multistart(dc)
    out.append(Check("zero count N = 2 kappa", float(abs(len(zeros) - sp.zero_count)), 0.5))
    if sp.region == DPLUS:
        out.append(Check("|lambda(eta0)|", sp.residual, 1e-12))
    try:
        co = solve(p, tol=tc, spectrum=sp)
    except NumericalError as exc:
        out.append(Check(f"solve ({type(exc).__name__})", float("inf"), 0.0))
        return out

    out.append(Check("E_inf lambda_inf = lambda1", abs(co.E_inf * dc.lambda_inf - dc.lambda1), 1e-14))
    fp = field_profile(co, np.linspace(-1, 1, 21), tol=tf)
    out.append(Check("field boundary |e(+-1) - 1|", fp.boundary_residual, 1e-6))
    out.append(Check("field symmetry", fp.symmetry_residual, 1e-8))
    out.append(Check("non-flow first moment", abs(nonflow_moment(co, tc)), 1e-6))
    out.append(Check("jump ~ (mu - 2/3) fit", jump_fit(co, tol=tf)[1], 1e-5))
    out.append(Check("accommodation balance", accommodation_residual(co, tc), 1e-8))
    zt = 2.0 + 1.0j
    out.append(Check("M(z) closed vs quadrature", _rel(M_closed(zt, co), M_quadrature(zt, co, tc)), 1e-8))
    if co.eta0 is not None:
        a, b = M_closed(co.eta0 + 1e-3, co), M_closed(co.eta0 + 1e-4, co)
        out.append(Check("M(z) regular at eta0", abs(a - b) / max(abs(a), 1e-300), 1e-2))
    (j1r, j2r), (j1q, j2q) = J_residues(dc, co.eta0), J_quadratures(dc, tc)
    out.append(Check("J1 residues vs quadrature", _rel(j1r, j1q), 1e-7))
    out.append(Check("J2 residues vs quadrature", _rel(j2r, j2q), 1e-7))
    out.append(Check("J1 series vs quadrature", _rel(J1_series(dc, co.eta0, ts)[0], J1_quadrature(dc, tc)), 1e-7))
    ab = compute_absorption(co, tol_series=ts, tol_coeff=tc)
    out.append(Check("absorption triple route", ab.agreement, 1e-6))
    out.append(Check("Q0 >= 0", max(0.0, -ab.Q0), 1e-300))
    return out
