"""Discrete spectrum: winding index, Debye zero and the boundary curve L."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NearCurveError, NumericalError
from .params import DerivedConstants, PlasmaParams, derive
from .specfun import lam, lambda_case, lambda_prime

DPLUS, DMINUS, NEARL = "DPlus", "DMinus", "NearL"


@dataclass(frozen=True)
class SpectrumResult:
    kappa: int
    zero_count: int
    eta0: Optional[complex]
    residual: float
    region: str
    closure: float = 0.0
    min_abs_G: float = float("nan")

    def as_dict(self):
        e = self.eta0
        return {
            "kappa": self.kappa,
            "N": self.zero_count,
            "eta0_re": None if e is None else e.real,
            "eta0_im": None if e is None else e.imag,
            "residual": self.residual,
            "region": self.region,
        }


@dataclass(frozen=True)
class WindingTrace:
    kappa: int
    total_arg: float
    closure: float
    samples: int
    min_abs_G: float
    t_end: float


# --- G = lambda+/lambda- on the half-cut ---------------------------------

def _cut_parts(mu, t, dc):
    """A, B with lambda(mu) = A - B ell and lambda+- = lambda -+ i pi B."""
    c, e2 = dc.c, dc.eta1_sq
    A = 1.0 - mu * mu / c
    B = mu * (mu * mu - e2) / (2.0 * c)
    ell = np.log(t) - np.log(2.0 - t)  # ln((1-mu)/(1+mu)) with t = 1 - mu
    return A, B, ell


def G_of(mu, t, dc):
    """G = lambda+/lambda- parametrized by (mu, t = 1 - mu) for accuracy near 1."""
    A, B, ell = _cut_parts(mu, t, dc)
    base = A - B * ell
    return (base - 1j * np.pi * B) / (base + 1j * np.pi * B)


def _tail_start(dc):
    """t below which |G - 1| < 1 is guaranteed, so no further winding occurs."""
    A1 = 1.0 - 1.0 / dc.c
    B1 = (1.0 - dc.eta1_sq) / (2.0 * dc.c)
    if abs(B1) < 1e-300:
        raise NearCurveError("degenerate parameters: eta1^2 = 1")
    target = 3.0 * math.pi + 2.0 * abs(A1 / B1) + 5.0
    if target > 650.0:
        raise NearCurveError("winding tail cannot be resolved (eta1^2 close to 1)",
                             {"ell_target": target})
    return 2.0 * math.exp(-target)


def argument_trace(dc: DerivedConstants, n=256, max_rounds=60, jump=math.pi / 4) -> WindingTrace:
    """Continuous argument of G(mu) over [0, 1) with adaptive refinement."""
    t_end = _tail_start(dc)
    mu_a = np.linspace(0.0, 0.5, n + 1)
    t_b = np.geomspace(0.5, t_end, n + 1)[1:]
    mu = np.concatenate([mu_a, 1.0 - t_b])
    t = np.concatenate([1.0 - mu_a, t_b])
    g = G_of(mu, t, dc)
    if np.any(g == 0):
        raise NearCurveError("lambda+ vanishes on the cut", {"mu": mu[g == 0].tolist()})
    for _ in range(max_rounds):
        d = np.angle(g[1:] / g[:-1])
        bad = np.nonzero(np.abs(d) > jump)[0]
        if bad.size == 0:
            break
        tl, tr = t[bad], t[bad + 1]
        tm = np.where(tl <= 0.5, np.sqrt(tl * tr), 0.5 * (tl + tr))
        if np.any((tm >= tl) | (tm <= tr)):
            raise NearCurveError("argument of G cannot be resolved; zero of lambda+ on the cut",
                                 {"mu": 1.0 - tm})
        mm = 1.0 - tm
        gm = G_of(mm, tm, dc)
        if np.any(gm == 0):
            raise NearCurveError("lambda+ vanishes on the cut", {"mu": mm[gm == 0].tolist()})
        t = np.insert(t, bad + 1, tm)
        mu = np.insert(mu, bad + 1, mm)
        g = np.insert(g, bad + 1, gm)
    else:
        raise NearCurveError("winding refinement did not settle")
    d = np.angle(g[1:] / g[:-1])
    # close the contour: G stays in |G - 1| < 1 beyond t_end
    total = d.sum() - np.angle(g[-1])
    turns = total / (2.0 * math.pi)
    kappa = int(round(turns))
    return WindingTrace(kappa, float(total), abs(turns - kappa), len(g),
                        float(np.min(np.abs(g))), t_end)


def winding_index(dc: DerivedConstants, n=256, closure_tol=1e-6, near_tol=1e-6) -> int:
    """Index of G = lambda+/lambda- over the half-cut (number of turns)."""
    tr = argument_trace(dc, n=n)
    if tr.closure > closure_tol or tr.min_abs_G < near_tol:
        raise NearCurveError("argument of G does not close cleanly",
                             {"closure": tr.closure, "min_abs_G": tr.min_abs_G})
    return tr.kappa


# --- zeros of lambda ------------------------------------------------------

def laurent_seed(dc: DerivedConstants) -> complex:
    """Two-term Laurent truncation lambda_inf + lambda2/z^2 = 0."""
    s = complex(np.sqrt(-dc.lambda2 / dc.lambda_inf))
    return s if s.real >= 0 else -s


def _crosses_cut(z, w):
    if z.imag == w.imag:
        return z.imag == 0 and abs(z.real) < 1
    if z.imag * w.imag > 0:
        return False
    x = z.real + (w.real - z.real) * (-z.imag) / (w.imag - z.imag)
    return abs(x) <= 1.0


def newton(dc, seed, maxiter=100, tol=1e-14):
    """Damped Newton on lambda that refuses steps across the cut [-1, 1]."""
    z = complex(seed)
    f = complex(lam(z, dc))
    trail = [z]
    for _ in range(maxiter):
        dz = -f / complex(lambda_prime(z, dc))
        step = 1.0
        while True:
            w = z + step * dz
            if not _crosses_cut(z, w) and not (abs(w.imag) < 1e-14 and abs(w.real) <= 1):
                fw = complex(lam(w, dc))
                if abs(fw) < abs(f) or abs(fw) < 1e-15:
                    break
            step *= 0.5
            if step < 1e-10:
                raise NumericalError("Newton stalled", {"trail": trail, "residual": abs(f)})
        z, f = w, fw
        trail.append(z)
        if abs(step * dz) <= tol * max(1.0, abs(z)) or abs(f) < 1e-16:
            return z, abs(f), trail
    raise NumericalError("Newton did not converge in %d iterations" % maxiter,
                         {"trail": trail, "residual": abs(f)})


def _off_cut(z, gap=1e-8):
    return abs(z.imag) > gap or abs(z.real) > 1.0 + gap


def find_eta0(dc: DerivedConstants, residual_tol=1e-12) -> complex:
    """Debye zero with Re > 0, seeded from the Laurent truncation.

    Falls back to a multistart on |z| = 2 when the seed wanders off.
    """
    tried = []
    seeds = [laurent_seed(dc)] + list(_circle_seeds())
    for s in seeds:
        try:
            z, res, _ = newton(dc, s)
        except NumericalError as exc:
            tried.append((s, exc.payload.get("residual")))
            continue
        if res < residual_tol and _off_cut(z) and abs(z) < 1e6:
            z = z if z.real > 0 or (z.real == 0 and z.imag > 0) else -z
            return complex(z)
        tried.append((s, res))
    raise NumericalError("no zero of lambda located", {"attempts": tried})


def _circle_seeds(n=12, r=2.0):
    th = 2.0 * math.pi * (np.arange(n) + 0.5) / n
    return r * np.exp(1j * th)


def newton_multistart(dc: DerivedConstants, n=12, r=2.0, residual_tol=1e-12, merge=1e-8):
    """Distinct zeros of lambda reached from n seeds on the circle |z| = r."""
    found = []
    for s in _circle_seeds(n, r):
        try:
            z, res, _ = newton(dc, s)
        except NumericalError:
            continue
        if res >= residual_tol or not _off_cut(z) or abs(z) > 1e6:
            continue
        if all(abs(z - q) > merge * max(1.0, abs(z)) for q in found):
            found.append(z)
    return found


def analyze_spectrum(dc: DerivedConstants, n=256) -> SpectrumResult:
    """Winding index plus Debye zero, classified into DPlus / DMinus / NearL."""
    try:
        tr = argument_trace(dc, n=n)
    except NearCurveError:
        return SpectrumResult(-1, -1, None, float("nan"), NEARL)
    if tr.closure > 1e-6 or tr.min_abs_G < 1e-6:
        return SpectrumResult(tr.kappa, 2 * tr.kappa, None, float("nan"), NEARL,
                              tr.closure, tr.min_abs_G)
    if tr.kappa == 0:
        return SpectrumResult(0, 0, None, 0.0, DMINUS, tr.closure, tr.min_abs_G)
    if tr.kappa != 1:
        raise NumericalError("unexpected winding index", {"kappa": tr.kappa})
    try:
        eta0 = find_eta0(dc)
    except NumericalError:
        return SpectrumResult(1, 2, None, float("nan"), NEARL, tr.closure, tr.min_abs_G)
    res = abs(complex(lam(eta0, dc)))
    if abs(complex(lambda_prime(eta0, dc))) < 1e-10:
        return SpectrumResult(1, 2, eta0, res, NEARL, tr.closure, tr.min_abs_G)
    return SpectrumResult(1, 2, eta0, res, DPLUS, tr.closure, tr.min_abs_G)


def spectrum_for(omega, eps, k=1.0) -> SpectrumResult:
    return analyze_spectrum(derive(PlasmaParams(omega, eps, k)))


# --- boundary curve L -----------------------------------------------------

@dataclass(frozen=True)
class CurveLPoint:
    mu: float
    Omega: float
    eps: float
    g1_residual: float = 0.0
    g2_residual: float = 0.0


def g_components(mu, omega, eps):
    """(g, g1, g2) with G = (g1 + i g2)/g, from the P+-, Q+- products."""
    mu = np.asarray(mu, dtype=float)
    l0 = lambda_case(mu)
    s = 0.5 * np.pi * mu
    r = eps * eps - 3.0 * mu * mu
    Pp = omega * omega - l0 * r + eps * omega * s
    Pm = omega * omega - l0 * r - eps * omega * s
    Qp = eps * omega * (1.0 + l0) + s * r
    Qm = eps * omega * (1.0 + l0) - s * r
    g = Pp * Pp + Qp * Qp
    g1 = Pp * Pm + Qp * Qm
    g2 = Pp * Qm - Pm * Qp
    return g, g1, g2


def mu_star() -> float:
    """Root of the real Case function lambda0 on (0, 1)."""
    return brentq(lambda x: float(lambda_case(x)), 0.5, 0.99, xtol=1e-16, rtol=4 * np.finfo(float).eps)


def curve_L_values(mu):
    """L1(mu), L2(mu) so that Omega = sqrt(L1), eps = sqrt(L2)."""
    mu = np.asarray(mu, dtype=float)
    l0 = lambda_case(mu)
    s = 0.5 * np.pi * mu
    den = l0 * (s * s + (1.0 + l0) ** 2)
    L2 = -3.0 * mu * mu * s * s / den
    L1 = -3.0 * mu * mu * (s * s + l0 * (1.0 + l0)) ** 2 / den
    return L1, L2


def trace_curve_L(mu_samples) -> list:
    """Points (mu, Omega, eps) on L, each with its self-substitution residuals.

    Residuals are |g1|/g and |g2|/g, i.e. the real and imaginary parts of G.
    """
    mus = np.atleast_1d(np.asarray(mu_samples, dtype=float))
    ms = mu_star()
    if np.any((mus <= ms) | (mus >= 1.0)):
        raise DomainError(f"curve L samples must lie in (mu*, 1) = ({ms:.12f}, 1)")
    L1, L2 = curve_L_values(mus)
    out = []
    for m_, a, b in zip(mus, L1, L2):
        om, ep = math.sqrt(a), math.sqrt(b)
        g, g1, g2 = g_components(m_, om, ep)
        out.append(CurveLPoint(float(m_), om, ep, abs(float(g1 / g)), abs(float(g2 / g))))
    return out


def default_curve_samples(n: int):
    """n midpoints of a uniform partition of (mu*, 1)."""
    ms = mu_star()
    return ms + (1.0 - ms) * (np.arange(n) + 0.5) / n
