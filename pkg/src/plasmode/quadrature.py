"""Adaptive Gauss-Kronrod integration, principal values and series sums.

Integrands are called with a 1-D numpy array of nodes and must return an
array of the same length (real or complex).  All panels pending at one
refinement level are evaluated in a single call.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, QuadratureError, SeriesError

# 7-point Gauss / 15-point Kronrod pair
_XK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0])
_WK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327])

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
WK15 = np.concatenate([_WK[:-1], _WK[::-1]])
WG7 = np.zeros(15)
WG7[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    evaluations: int
    intervals: int = 1
    converged: bool = True

    def __add__(self, other):
        if not isinstance(other, QuadratureResult):
            return NotImplemented
        return QuadratureResult(
            self.value + other.value,
            self.error_estimate + other.error_estimate,
            self.evaluations + other.evaluations,
            self.intervals + other.intervals,
            self.converged and other.converged,
        )

    def scaled(self, factor):
        return QuadratureResult(self.value * factor, self.error_estimate * abs(factor),
                                self.evaluations, self.intervals, self.converged)


def _gk_panels(f, lo, hi):
    """Apply the 15-point rule on many panels at once."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid[:, None] + half[:, None] * NODES[None, :]
    y = np.asarray(f(x.ravel())).reshape(x.shape)
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)]
        raise DomainError(f"integrand not finite at x={bad[:3]}")
    k = half * (y @ WK15)
    g = half * (y @ WG7)
    mean = k / (2.0 * np.where(half == 0, 1.0, half))
    resasc = np.abs(half) * (np.abs(y - mean[:, None]) @ WK15)
    resabs = np.abs(half) * (np.abs(y) @ WK15)
    err = np.abs(k - g)
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = np.where(resasc > 0, np.minimum(1.0, (200.0 * err / resasc) ** 1.5), 1.0)
    err = np.where(resasc > 0, resasc * scale, err)
    floor = 50.0 * _EPS * resabs
    return k, np.maximum(err, floor), floor


def _breakpoints(a, b, points, split_zero):
    pts = [a, b]
    if points is not None:
        pts += [p for p in np.atleast_1d(points) if a < p < b]
    if split_zero and a < 0.0 < b:
        pts.append(0.0)
    return np.unique(np.asarray(pts, dtype=float))


def integrate(f, a, b, tol=1e-10, abs_tol=0.0, points=None, split_zero=True,
              max_intervals=4000, raise_on_fail=True) -> QuadratureResult:
    """Adaptive 15-point Gauss-Kronrod integral of f over [a, b].

    Converges when the summed error estimate is below
    max(abs_tol, tol * max(1, |value|)).  Panels are bisected greedily, the
    worst first, until that holds or ``max_intervals`` is exceeded; in the
    latter case a :class:`QuadratureError` carries the partial result.
    """
    if a == b:
        return QuadratureResult(0.0, 0.0, 0, 0)
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0
    edges = _breakpoints(float(a), float(b), points, split_zero)
    lo, hi = edges[:-1], edges[1:]
    vals, errs, floors = _gk_panels(f, lo, hi)
    nev = 15 * len(lo)
    while True:
        total = vals.sum()
        err = errs.sum()
        # never ask for less than the accumulated rounding floor
        target = max(abs_tol, tol * max(1.0, abs(total)), 2.0 * floors.sum())
        if err <= target:
            return QuadratureResult(sign * total, float(err), nev, len(lo))
        if len(lo) >= max_intervals:
            res = QuadratureResult(sign * total, float(err), nev, len(lo), False)
            if raise_on_fail:
                raise QuadratureError(
                    f"no convergence on [{a}, {b}] after {len(lo)} panels "
                    f"(error {err:.3e} > {target:.3e})", res)
            return res
        # split the worst panels carrying half of the excess error
        order = np.argsort(errs)[::-1]
        cum = np.cumsum(errs[order])
        nsplit = int(np.searchsorted(cum, 0.5 * (err - target))) + 1
        nsplit = max(1, min(nsplit, len(order), max_intervals - len(lo)))
        pick = order[:nsplit]
        keep = np.ones(len(lo), bool)
        keep[pick] = False
        plo, phi = lo[pick], hi[pick]
        pmid = 0.5 * (plo + phi)
        if np.any((pmid <= plo) | (pmid >= phi)):
            res = QuadratureResult(sign * total, float(err), nev, len(lo), False)
            if raise_on_fail:
                raise QuadratureError("panel width hit machine resolution", res)
            return res
        nlo = np.concatenate([plo, pmid])
        nhi = np.concatenate([pmid, phi])
        nv, ne, nf = _gk_panels(f, nlo, nhi)
        nev += 15 * len(nlo)
        lo = np.concatenate([lo[keep], nlo])
        hi = np.concatenate([hi[keep], nhi])
        vals = np.concatenate([vals[keep], nv])
        errs = np.concatenate([errs[keep], ne])
        floors = np.concatenate([floors[keep], nf])


def integrate_pv(f, s, a=-1.0, b=1.0, tol=1e-10, points=None, min_gap=1e-8,
                 **kw) -> QuadratureResult:
    """Cauchy principal value of int_a^b f(x)/(x - s) dx.

    A symmetric window [s - d, s + d] is folded onto itself, giving the
    regular integrand (f(s+t) - f(s-t))/t on (0, d); the remainder is
    ordinary quadrature.  The excision is exact, so no extrapolation in
    the window size is needed.
    """
    if not (a < s < b):
        raise DomainError(f"pole s={s} not inside ({a}, {b})")
    if s - a < min_gap or b - s < min_gap:
        raise DomainError(f"pole s={s} closer than {min_gap} to an endpoint")
    cands = [s - a, b - s]
    if points is not None:
        cands += [abs(p - s) for p in np.atleast_1d(points) if a < p < b and p != s]
    if kw.get("split_zero", True) and a < 0.0 < b and s != 0.0:
        cands.append(abs(s))
    d = min(cands)

    def folded(t):
        return (f(s + t) - f(s - t)) / t

    res = integrate(folded, 0.0, d, tol=tol, split_zero=False,
                    max_intervals=kw.get("max_intervals", 4000))

    def outer(x):
        return f(x) / (x - s)

    if s - d > a:
        res = res + integrate(outer, a, s - d, tol=tol, points=points, **kw)
    if s + d < b:
        res = res + integrate(outer, s + d, b, tol=tol, points=points, **kw)
    return res


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms: int
    tail: complex = 0.0


def sum_symmetric_series(term, tol=1e-12, tail=None, block=64, max_terms=10**7,
                         guard=None) -> SeriesResult:
    """2 * sum_{k>=0} term(k) for a series paired under k -> -(k+1).

    ``term`` receives an integer array.  Summation stops once three
    consecutive terms fall below tol * |partial sum|; ``tail(K)``, when
    given, adds an estimate of sum_{k>=K} and ``guard(k)`` may raise for
    forbidden pole locations before terms are evaluated.
    """
    total = 0.0 + 0.0j
    k0 = 0
    small = 0
    while k0 < max_terms:
        ks = np.arange(k0, k0 + block)
        if guard is not None:
            guard(ks)
        t = np.asarray(term(ks), dtype=complex)
        for j, tj in enumerate(t):
            total += tj
            if abs(tj) <= tol * abs(total) or (tj == 0 and total == 0):
                small += 1
                if small >= 3:
                    n = k0 + j + 1
                    extra = complex(tail(n)) if tail is not None else 0.0
                    return SeriesResult(2.0 * (total + extra), n, 2.0 * extra)
            else:
                small = 0
        k0 += block
        block = min(2 * block, 1 << 16)
    raise SeriesError(f"series not converged after {k0} terms",
                      {"partial_sum": 2.0 * total, "terms": k0})
