"""Physical input parameters and the derived complex constants.

All quantities are dimensionless: lengths in units of the slab half-width,
frequencies in units of the plasma frequency.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .errors import ParameterError

CONFIG_KEYS = ("omega", "eps", "k", "alpha_p")


@dataclass(frozen=True)
class PlasmaParams:
    """Input parameters of the slab problem.

    omega   : field frequency over plasma frequency
    eps     : collision frequency over plasma frequency (must be > 0)
    k       : slab half-width times plasma frequency over Fermi velocity
    alpha_p : normal-momentum accommodation coefficient in [0, 1]
    """

    omega: float
    eps: float
    k: float = 1.0
    alpha_p: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            try:
                v = float(v)
            except (TypeError, ValueError):
                raise ParameterError(f.name, v, "not a real number") from None
            if not math.isfinite(v):
                raise ParameterError(f.name, v, "must be finite")
            object.__setattr__(self, f.name, v)
        if self.eps <= 0:
            raise ParameterError("eps", self.eps, "collision ratio must be positive")
        if self.k <= 0:
            raise ParameterError("k", self.k, "half-width must be positive")
        if self.omega < 0:
            raise ParameterError("omega", self.omega, "frequency ratio must be non-negative")
        if not 0.0 <= self.alpha_p <= 1.0:
            raise ParameterError("alpha_p", self.alpha_p, "accommodation must lie in [0, 1]")

    def with_(self, **changes) -> "PlasmaParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class DerivedConstants:
    params: PlasmaParams
    w0: complex
    z0: complex
    eta1_sq: complex
    eta1: complex
    c: complex
    up_sq: float
    lambda1: complex
    lambda_inf: complex
    lambda2: complex
    lambda4: complex
    notes: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def omega(self):
        return self.params.omega

    @property
    def eps(self):
        return self.params.eps


def derive(p: PlasmaParams) -> DerivedConstants:
    """Compute every derived constant used downstream."""
    om, eps, k = p.omega, p.eps, p.k
    w0 = complex(k * eps, -k * om)
    z0 = complex(1.0, -om / eps)
    up_sq = 3.0 * k * k
    eta1_sq = eps * eps * z0 / 3.0
    c = w0 * w0 / up_sq
    lambda1 = 1.0 - 1.0 / z0
    lambda_inf = 1.0 - 1.0 / z0 + 1.0 / (3.0 * z0 * eta1_sq)
    lambda2 = -(1.0 / z0) * (1.0 / 3.0 - 1.0 / (5.0 * eta1_sq))
    lambda4 = -(1.0 / z0) * (1.0 / 5.0 - 1.0 / (7.0 * eta1_sq))
    return DerivedConstants(
        params=p,
        w0=w0,
        z0=z0,
        eta1_sq=eta1_sq,
        eta1=cmath.sqrt(eta1_sq),
        c=c,
        up_sq=up_sq,
        lambda1=lambda1,
        lambda_inf=lambda_inf,
        lambda2=lambda2,
        lambda4=lambda4,
    )


def identity_residuals(dc: DerivedConstants) -> dict:
    """Residuals of the internal identities between derived constants.

    Each is scaled by the largest term entering either side, so that the
    near-cancellation of lambda_inf around Omega = 1 is not mistaken for error.
    """

    def rel(a, b, *terms):
        return abs(a - b) / max(abs(a), abs(b), *map(abs, terms), 1e-300)

    om, eps = dc.omega, dc.eps
    return {
        "c_vs_z0_eta1sq": rel(dc.c, dc.z0 * dc.eta1_sq),
        "c_vs_eps_omega": rel(dc.c, complex(eps, -om) ** 2 / 3.0),
        "lambda_inf_vs_lambda1": rel(dc.lambda_inf, dc.lambda1 + 1.0 / (3.0 * dc.c),
                                     dc.lambda1, 1.0 / (3.0 * dc.c), 1.0 / dc.z0),
    }


def read_config(path) -> dict:
    """Read a flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        sep = "=" if "=" in line else (":" if ":" in line else None)
        if sep is None:
            parts = line.split(None, 1)
            if len(parts) != 2:
                raise ParameterError("config", raw, f"line {lineno} is not key=value")
            key, value = parts
        else:
            key, value = line.split(sep, 1)
        key = key.strip().lower().replace("-", "_")
        if key not in CONFIG_KEYS:
            raise ParameterError(key, value.strip(), f"unknown config key (line {lineno})")
        try:
            out[key] = float(value)
        except ValueError:
            raise ParameterError(key, value.strip(), "not a real number") from None
    return out
