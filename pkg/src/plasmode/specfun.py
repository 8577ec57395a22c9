"""Closed-form special functions of the slab problem.

Every evaluator accepts scalars or numpy arrays.  Real input in (-1, 1) is
treated as a point on the cut and evaluated in principal-value form; complex
input within ``CUT_GUARD`` of the cut is routed to the one-sided boundary
values according to the sign of its imaginary part.

For |z| >= ``LAURENT_RADIUS`` the functions are summed from their convergent
expansions in 1/z, which avoids the catastrophic cancellation of the
logarithmic closed forms at large argument.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .params import DerivedConstants

CUT_GUARD = 1e-12
LAURENT_RADIUS = 2.0
_SIDES = ("above", "below", "principal")


@dataclass(frozen=True)
class CutFunctionValue:
    value: complex
    on_cut: bool
    side: str = "principal"

    def __post_init__(self):
        if self.side not in _SIDES:
            raise ValueError(f"side must be one of {_SIDES}")
        if not self.on_cut and self.side != "principal":
            raise ValueError("off-cut values carry side='principal'")


def _out(z, val):
    return val if np.ndim(z) else val[0]


def _check_poles(z):
    if np.any(np.abs(np.abs(np.real(z)) - 1.0) + np.abs(np.imag(z)) == 0.0):
        raise DomainError("logarithmic singularity at z = +-1")


def _split(z):
    """Return (zc, on_cut, side) where side is +1 above, -1 below, 0 principal."""
    z = np.asarray(z)
    real_input = not np.iscomplexobj(z)
    zc = np.atleast_1d(z).astype(complex)
    x, y = zc.real, zc.imag
    on_cut = (np.abs(x) < 1.0) & (np.abs(y) <= CUT_GUARD)
    side = np.where(real_input, 0, np.sign(y)).astype(float)
    side = np.where(on_cut, side, 0.0)
    return zc, on_cut, side


def _ell(x):
    """ln((1-x)/(1+x)) for real x in (-1, 1)."""
    return np.log1p(-x) - np.log1p(x)


def _log_ratio(z):
    """Principal ln((z-1)/(z+1)); cut exactly on [-1, 1]."""
    return np.log((z - 1.0) / (z + 1.0))


def _series(u, coef, nmax=200):
    """Sum_n coef(n) u**n by Horner, with enough terms for double precision."""
    au = float(np.max(np.abs(u))) if np.size(u) else 0.0
    if au == 0.0:
        n = 1
    else:
        n = int(min(nmax, np.ceil(np.log(1e-18) / np.log(au)) + 2))
    acc = np.zeros_like(u)
    for j in range(n, -1, -1):
        acc = acc * u + coef(j)
    return acc


def _far(zc, on_cut):
    return (~on_cut) & (np.abs(zc) >= LAURENT_RADIUS)


# --- Case function -------------------------------------------------------

def lambda_case(z):
    """Case dispersion function 1 + (z/2) ln((z-1)/(z+1))."""
    _check_poles(z)
    zc, on_cut, side = _split(z)
    out = np.empty_like(zc)
    x = zc.real[on_cut]
    out[on_cut] = 1.0 + 0.5 * x * _ell(x) + 0.5j * np.pi * x * side[on_cut]
    off = ~on_cut
    far = _far(zc, on_cut)
    near = off & ~far
    out[near] = 1.0 + 0.5 * zc[near] * _log_ratio(zc[near])
    if np.any(far):
        u = 1.0 / zc[far] ** 2
        # 1 - sum z^{-2n-2}/(2n+1) over n >= 0, i.e. -sum_{n>=1} u^n/(2n+1)
        out[far] = -u * _series(u, lambda n: 1.0 / (2 * n + 3))
    if np.isrealobj(z):
        out = out.real
    return _out(np.asarray(z), out)


# --- dispersion function -------------------------------------------------

def _lam_coef(dc):
    e2 = dc.eta1_sq
    return lambda n: (1.0 / (2 * n + 3) - e2 / (2 * n + 1)) / dc.c


def lam(z, dc: DerivedConstants):
    """Dispersion function lambda(z) = 1 - z^2/c - z (z^2 - eta1^2) L(z) / (2c).

    On the cut with side='principal' this is lambda(mu) with the real log,
    and lambda(mu +- i0) = lambda(mu) -+ i pi mu (mu^2 - eta1^2) / (2c).
    """
    _check_poles(z)
    zc, on_cut, side = _split(z)
    c, e2 = dc.c, dc.eta1_sq
    out = np.empty_like(zc)
    if np.any(on_cut):
        x = zc.real[on_cut]
        b = x * (x * x - e2) / (2.0 * c)
        out[on_cut] = 1.0 - x * x / c - b * _ell(x) - 1j * np.pi * b * side[on_cut]
    far = _far(zc, on_cut)
    near = ~on_cut & ~far
    if np.any(near):
        w = zc[near]
        out[near] = 1.0 - w * w / c - w * (w * w - e2) * _log_ratio(w) / (2.0 * c)
    if np.any(far):
        u = 1.0 / zc[far] ** 2
        out[far] = 1.0 + _series(u, _lam_coef(dc))
    return _out(z, out)


def lambda_prime(z, dc: DerivedConstants):
    """Analytic derivative of :func:`lam` off the cut."""
    _check_poles(z)
    zc, on_cut, _ = _split(z)
    if np.any(on_cut):
        raise DomainError("lambda_prime is defined off the cut only")
    c, e2 = dc.c, dc.eta1_sq
    out = np.empty_like(zc)
    far = _far(zc, on_cut)
    near = ~far
    if np.any(near):
        w = zc[near]
        out[near] = (-2.0 * w / c - (3.0 * w * w - e2) * _log_ratio(w) / (2.0 * c)
                     - w * (w * w - e2) / (c * (w * w - 1.0)))
    if np.any(far):
        w = zc[far]
        u = 1.0 / w ** 2
        coef = _lam_coef(dc)
        # d/dz sum a_n z^{-2n} = -(2/z) sum n a_n u^n
        out[far] = -(2.0 / w) * _series(u, lambda n: n * coef(n))
    return _out(z, out)


def lambda_boundary(mu, dc: DerivedConstants):
    """Boundary values (lambda+, lambda-) from above and below the cut."""
    mu = np.asarray(mu, dtype=float)
    if np.any(np.abs(mu) >= 1.0):
        raise DomainError("lambda_boundary needs |mu| < 1")
    base = lam(mu, dc)
    jump = 0.5j * np.pi * mu * (dc.eta1_sq - mu * mu) / dc.c
    return base + jump, base - jump


def lam_plus_minus_product(mu, dc):
    """lambda+ lambda- = lambda(mu)^2 + (pi mu (mu^2-eta1^2)/(2c))^2."""
    lp, lm = lambda_boundary(mu, dc)
    return lp * lm


def lam_cut(z, dc, side):
    """Evaluate lam on the cut from a chosen side ('above', 'below', 'principal')."""
    mu = np.asarray(z, dtype=float)
    if side == "principal":
        return lam(mu, dc)
    lp, lm = lambda_boundary(mu, dc)
    return lp if side == "above" else lm


def evaluate(z, dc, side="principal") -> CutFunctionValue:
    """Scalar lambda with explicit cut bookkeeping."""
    z = complex(z)
    on_cut = abs(z.imag) <= CUT_GUARD and abs(z.real) < 1.0
    if not on_cut:
        return CutFunctionValue(complex(lam(z, dc)), False, "principal")
    return CutFunctionValue(complex(lam_cut(z.real, dc, side)), True, side)


def h_disp(z, dc: DerivedConstants):
    """h(z) = c/z - z - (z^2 - eta1^2) L(z) / 2, equal to (c/z) lambda(z)."""
    zc = np.atleast_1d(np.asarray(z, dtype=complex))
    _check_poles(zc)
    if np.any(zc == 0):
        raise DomainError("h_disp is singular at z = 0")
    if np.any(_split(zc)[1]):
        raise DomainError("h_disp is defined off the cut only")
    far = np.abs(zc) >= LAURENT_RADIUS
    out = np.empty_like(zc)
    w = zc[~far]
    out[~far] = dc.c / w - w - (w * w - dc.eta1_sq) * _log_ratio(w) / 2.0
    out[far] = dc.c / zc[far] * lam(zc[far], dc)
    return _out(np.asarray(z), out)


# --- T, T0, T1 -----------------------------------------------------------

def T(z, dc: DerivedConstants):
    """T(z) = (z/2c)[1 + (z^2 - eta1^2) ln(1 - 1/z^2)], odd in z.

    Real arguments in (-1,1) give the principal value on the cut, where the
    logarithm is ln(1/z^2 - 1).
    """
    zc, on_cut, side = _split(z)
    if np.any(zc == 0):
        raise DomainError("T is singular at z = 0")
    _check_poles(zc)
    c, e2 = dc.c, dc.eta1_sq
    out = np.empty_like(zc)
    if np.any(on_cut):
        x = zc.real[on_cut]
        pv = x / (2 * c) * (1.0 + (x * x - e2) * np.log(1.0 / (x * x) - 1.0))
        out[on_cut] = pv + 1j * np.pi * side[on_cut] * np.abs(x) * (x * x - e2) / (2 * c)
    far = _far(zc, on_cut)
    near = ~on_cut & ~far
    if np.any(near):
        w = zc[near]
        out[near] = w / (2 * c) * (1.0 + (w * w - e2) * np.log(1.0 - 1.0 / (w * w)))
    if np.any(far):
        w = zc[far]
        u = 1.0 / w ** 2
        out[far] = -(1.0 / (c * w)) * _series(
            u, lambda n: 1.0 / (2 * n + 4) - e2 / (2 * n + 2))
    return _out(z, out)


def T0(z, dc: DerivedConstants):
    """T0(z) = (1/2c)[1/2 + z + (z^2 - eta1^2) ln(1 - 1/z)], cut on [0, 1]."""
    zc = np.atleast_1d(np.asarray(z)).astype(complex)
    real_input = not np.iscomplexobj(z)
    if np.any(zc == 0) or np.any(zc == 1):
        raise DomainError("T0 is singular at z = 0 and z = 1")
    c, e2 = dc.c, dc.eta1_sq
    x, y = zc.real, zc.imag
    on_cut = (x > 0) & (x < 1) & (np.abs(y) <= CUT_GUARD)
    side = np.where(on_cut & ~real_input, np.sign(y), 0.0)
    out = np.empty_like(zc)
    if np.any(on_cut):
        xx = x[on_cut]
        lg = np.log(1.0 / xx - 1.0) + 1j * np.pi * side[on_cut]
        out[on_cut] = (0.5 + xx + (xx * xx - e2) * lg) / (2 * c)
    far = ~on_cut & (np.abs(zc) >= LAURENT_RADIUS)
    near = ~on_cut & ~far
    if np.any(near):
        w = zc[near]
        out[near] = (0.5 + w + (w * w - e2) * np.log(1.0 - 1.0 / w)) / (2 * c)
    if np.any(far):
        w = zc[far]
        v = 1.0 / w
        out[far] = -(1.0 / (2 * c * w)) * _series(
            v, lambda n: 1.0 / (n + 3) - e2 / (n + 1), nmax=400)
    return _out(z, out)


def T1(eta, dc: DerivedConstants):
    """Odd cut function T1(eta) = T(eta) + sign(eta) lambda(eta), closed form."""
    eta = np.asarray(eta, dtype=float)
    if np.any(eta == 0) or np.any(np.abs(eta) >= 1):
        raise DomainError("T1 needs 0 < |eta| < 1")
    a = np.abs(eta)
    val = 1.0 + (a - 2 * a * a + 2 * a * (a * a - dc.eta1_sq) * np.log1p(1.0 / a)) / (2 * dc.c)
    return np.sign(eta) * val


# --- eigenfunction pieces ------------------------------------------------

def eigenfunction_parts(eta, mu, dc: DerivedConstants, exclusion=0.0):
    """Return (phi, psi, F_smooth, delta_weight) of the characteristic system.

    F(eta, mu) = (mu eta - eta1^2)/(eta - mu) + delta_weight * delta(eta - mu),
    with delta_weight = -2c lambda(eta)/eta.  ``exclusion`` > 0 raises when
    |eta - mu| falls inside it (callers doing principal values pass 0).
    """
    eta = np.asarray(eta)
    mu = np.asarray(mu, dtype=float)
    e2 = dc.eta1_sq
    if exclusion > 0 and np.any(np.abs(eta - mu) < exclusion):
        raise DomainError("|eta - mu| inside the exclusion radius; use PV handling")
    d2 = eta * eta - mu * mu
    phi = 2.0 * mu * (eta * eta - e2) / d2
    psi = 2.0 * eta * (e2 - mu * mu) / d2
    smooth = (mu * eta - e2) / (eta - mu)
    if np.iscomplexobj(eta) and np.any(np.abs(np.imag(eta)) > CUT_GUARD):
        weight = np.zeros_like(smooth)
    else:
        weight = -2.0 * dc.c * lam(np.real(eta), dc) / np.real(eta)
    return phi, psi, smooth, weight


def F_moments(eta, dc: DerivedConstants):
    """Closed-form mu-moments (int F dmu, int mu F dmu) over (-1, 1).

    For eta on the cut the principal-value part and the delta contribution
    are added explicitly; for eta off the cut there is no delta term.
    """
    eta_arr = np.asarray(eta)
    c, e2 = dc.c, dc.eta1_sq
    if np.iscomplexobj(eta_arr):
        L = _log_ratio(eta_arr)
        d2 = eta_arr * eta_arr - e2
        m0 = -2.0 * eta_arr - d2 * L
        m1 = d2 * (-2.0 - eta_arr * L)
        return m0, m1
    x = eta_arr.astype(float)
    ell = _ell(x)
    d2 = x * x - e2
    w = -2.0 * c * lam(x, dc)
    # PV int dmu/(eta - mu) over (-1,1) is -ell
    m0 = -2.0 * x - d2 * ell + w / x
    m1 = d2 * (-2.0 - x * ell) + w
    return m0, m1


def m0(zeta, dc: DerivedConstants):
    """int_0^1 (mu^2 - 2mu/3) F(zeta, mu) dmu for zeta off [0, 1]."""
    z = np.asarray(zeta, dtype=complex)
    return (z * z - dc.eta1_sq) * (1.0 / 6.0 - z - (z * z - 2.0 * z / 3.0) * np.log(1.0 - 1.0 / z))


def m_pv(eta, dc: DerivedConstants):
    """Principal-value part of int_0^1 (mu^2 - 2mu/3) F(eta, mu) dmu, real eta."""
    x = np.asarray(eta, dtype=float)
    if np.any(x == 0) or np.any(np.abs(x) >= 1):
        raise DomainError("m needs 0 < |eta| < 1")
    e2 = dc.eta1_sq
    # on (0,1) the principal value takes ln|1 - 1/eta| = ln((1-eta)/eta)
    lg = np.log(np.abs(1.0 - 1.0 / x))
    return (x * x - e2) * (1.0 / 6.0 - x - (x * x - 2.0 * x / 3.0) * lg)


def m(eta, dc: DerivedConstants):
    """m(eta) = PV part plus the delta term -2c(eta - 2/3) lambda(eta) on (0, 1)."""
    x = np.asarray(eta, dtype=float)
    val = m_pv(x, dc)
    delta = np.where(x > 0, -2.0 * dc.c * (x - 2.0 / 3.0) * lam(x, dc), 0.0)
    return val + delta


def m_eta0(eta0, w0, dc: DerivedConstants):
    """m(eta0) = exp(w0/eta0) m0(eta0) + exp(-w0/eta0) m0(-eta0) (unscaled)."""
    u = w0 / eta0
    return np.exp(u) * m0(eta0, dc) + np.exp(-u) * m0(-eta0, dc)


# --- overflow-safe exponential ratios ------------------------------------

def exp_over_cosh(u):
    """e^u / cosh(u) without overflow."""
    u = np.asarray(u, dtype=complex)
    pos = u.real >= 0
    a = np.exp(-2.0 * np.where(pos, u, 0))
    b = np.exp(2.0 * np.where(pos, 0, u))
    return np.where(pos, 2.0 / (1.0 + a), 2.0 * b / (1.0 + b))


def tanh_safe(u):
    u = np.asarray(u, dtype=complex)
    s = np.where(u.real >= 0, 1.0, -1.0)
    a = np.exp(-2.0 * s * u)
    return s * (1.0 - a) / (1.0 + a)


def cosh_ratio(x, u):
    """cosh(u x)/cosh(u) for |x| <= 1 without overflow."""
    u = np.asarray(u, dtype=complex)
    u = np.where(u.real >= 0, u, -u)
    ax = np.abs(x)
    return (np.exp(u * (ax - 1.0)) + np.exp(-u * (ax + 1.0))) / (1.0 + np.exp(-2.0 * u))


def sinh_ratio(x, u):
    """sinh(u x)/cosh(u) for |x| <= 1 without overflow."""
    u = np.asarray(u, dtype=complex)
    flip = np.where(u.real >= 0, 1.0, -1.0)
    u = u * flip
    sx = np.sign(x) * flip
    ax = np.abs(x)
    return sx * (np.exp(u * (ax - 1.0)) - np.exp(-u * (ax + 1.0))) / (1.0 + np.exp(-2.0 * u))
