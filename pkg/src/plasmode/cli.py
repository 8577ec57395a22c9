"""Command-line front end.

Exit status: 0 success, 1 parameter error, 2 numerical failure or refusal
near the curve L, 3 verification failure.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .absorption import TOL_SERIES, compute_absorption
from .errors import NearCurveError, NumericalError, ParameterError, PlasmodeError
from .params import CONFIG_KEYS, PlasmaParams, derive, read_config
from .solution import TOL_COEFF, TOL_FIELD, boundary_distribution, field_profile, solve
from .spectrum import NEARL, analyze_spectrum, default_curve_samples, trace_curve_L
from .specfun import lam, lambda_boundary, lambda_prime

EXIT_OK, EXIT_PARAM, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3

CONVENTIONS = ("A1_tilde = w0*A1; e_s = 1; Q1 = (1/2) int_{-1}^{1} e dx; Q0 = -Im Q1; "
               "E(eta) = [...]/(4c cosh(w0/eta) lambda+ lambda-)")

AXES = {"omega": "Omega", "eps": "eps", "alpha_p": "alpha_p", "k": "k"}


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    min: float
    max: float
    steps: int
    fixed: dict = field(default_factory=dict)
    outputs: str = "csv"

    def __post_init__(self):
        if self.axis not in AXES:
            raise ParameterError("axis", self.axis, f"must be one of {sorted(AXES)}")
        if not self.min < self.max:
            raise ParameterError("max", self.max, "sweep needs min < max")
        if self.steps < 2:
            raise ParameterError("steps", self.steps, "sweep needs at least 2 steps")
        if self.outputs not in ("csv", "json"):
            raise ParameterError("outputs", self.outputs, "format must be csv or json")
        for v in (self.min, self.max):
            PlasmaParams(**{**self.fixed, self.axis: v})

    def values(self):
        return np.linspace(self.min, self.max, self.steps)

    def points(self):
        return [PlasmaParams(**{**self.fixed, self.axis: float(v)}) for v in self.values()]


class UsageError(ParameterError):
    def __init__(self, message):
        ValueError.__init__(self, message)
        self.field, self.value = "argv", None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fmt(v):
    return f"{float(v):.16e}"


def _env_tol(name, default):
    raw = os.environ.get(f"PLASMODE_TOL_{name}")
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise ParameterError(f"PLASMODE_TOL_{name}", raw, "not a number") from None


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("parameters")
    g.add_argument("--omega", type=float, help="frequency ratio omega/omega_p")
    g.add_argument("--eps", type=float, help="collision ratio nu/omega_p")
    g.add_argument("--k", type=float, help="half-width a*omega_p/v_F (default 1)")
    g.add_argument("--alpha-p", dest="alpha_p", type=float, help="momentum accommodation (default 0)")
    g.add_argument("--config", help="flat key=value parameter file; flags override it")
    t = common.add_argument_group("tolerances")
    t.add_argument("--tol-coeff", type=float, help="coefficient integrals (I0, I1, J0)")
    t.add_argument("--tol-field", type=float, help="field and distribution reconstruction")
    t.add_argument("--tol-series", type=float, help="residue series truncation")
    o = common.add_argument_group("output")
    o.add_argument("-o", "--output", help="write to this file instead of stdout")
    o.add_argument("--no-timestamp", action="store_true", help="omit the timestamp header line")
    o.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")

    p = _Parser(prog="plasmode", description="Electromagnetic response of a degenerate plasma slab.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    d = sub.add_parser("dispersion", parents=[common], help="dispersion function on a grid")
    d.add_argument("--points", type=int, default=101, help="mu grid size on the cut")
    d.add_argument("--z", action="append", type=complex, help="complex point(s) off the cut")

    sub.add_parser("spectrum", parents=[common], help="winding index and Debye zero as JSON")

    b = sub.add_parser("boundary-curve", parents=[common], help="points of the curve L")
    b.add_argument("--samples", type=int, default=200)

    f = sub.add_parser("field", parents=[common], help="electric field profile")
    f.add_argument("--points", type=int, default=101)

    h = sub.add_parser("distribution", parents=[common], help="distribution h(-1, mu) at the wall")
    h.add_argument("--mu-grid", type=int, default=40)

    a = sub.add_parser("absorb", parents=[common], help="Q0 over a parameter sweep")
    a.add_argument("--axis", choices=sorted(AXES), default="omega")
    a.add_argument("--min", type=float)
    a.add_argument("--max", type=float)
    a.add_argument("--steps", type=int)
    a.add_argument("--omega-min", type=float)
    a.add_argument("--omega-max", type=float)
    a.add_argument("--omega-steps", type=int)
    a.add_argument("--all-routes", action="store_true", help="add the three Q1 columns")

    sub.add_parser("verify", parents=[common], help="run the invariant suite")
    return p


def _params(args, need=("omega", "eps")):
    vals = {"k": 1.0, "alpha_p": 0.0}
    if args.config:
        try:
            vals.update(read_config(args.config))
        except OSError as exc:
            raise ParameterError("config", args.config, str(exc)) from None
    for key in CONFIG_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            vals[key] = v
    for key in need:
        if key not in vals:
            raise ParameterError(key, None, "missing (give a flag or a config entry)")
    return vals


def _tols(args):
    return {
        "coeff": args.tol_coeff if args.tol_coeff is not None else _env_tol("COEFF", TOL_COEFF),
        "field": args.tol_field if args.tol_field is not None else _env_tol("FIELD", TOL_FIELD),
        "series": args.tol_series if args.tol_series is not None else _env_tol("SERIES", TOL_SERIES),
    }


def _header(args, vals, tols, extra=()):
    lines = [f"plasmode {__version__} {args.cmd}"]
    if not args.no_timestamp:
        lines.append("generated: " + _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"))
    lines.append("params: " + " ".join(f"{k}={_fmt(v)}" for k, v in sorted(vals.items())))
    lines.append("tolerances: " + " ".join(f"{k}={v:.3e}" for k, v in tols.items()))
    lines.append("conventions: " + CONVENTIONS)
    lines.extend(extra)
    return lines


def _emit(args, header, columns, rows):
    out = ["# " + h for h in header]
    out.append(",".join(columns))
    for r in rows:
        out.append(",".join(x if isinstance(x, str) else _fmt(x) for x in r))
    _write(args, "\n".join(out) + "\n")


def _write(args, text):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- subcommands ---------------------------------------------------------

def _cmd_dispersion(args):
    vals = _params(args)
    tols = _tols(args)
    dc = derive(PlasmaParams(**vals))
    if args.z:
        z = np.array(args.z, dtype=complex)
        lv, dv = lam(z, dc), lambda_prime(z, dc)
        rows = [(a.real, a.imag, b.real, b.imag, c.real, c.imag) for a, b, c in zip(z, lv, dv)]
        cols = ["z_re", "z_im", "lam_re", "lam_im", "dlam_re", "dlam_im"]
    else:
        if args.points < 1:
            raise ParameterError("points", args.points, "must be positive")
        mu = -1.0 + (2.0 * np.arange(args.points) + 1.0) / args.points
        lv = lam(mu, dc)
        lp, lm = lambda_boundary(mu, dc)
        rows = [(m_, complex(a).real, complex(a).imag, b.real, b.imag, c.real, c.imag)
                for m_, a, b, c in zip(mu, lv, lp, lm)]
        cols = ["mu", "lam_re", "lam_im", "lam_plus_re", "lam_plus_im", "lam_minus_re", "lam_minus_im"]
    _emit(args, _header(args, vals, tols), cols, rows)
    return EXIT_OK


def _cmd_spectrum(args):
    vals = _params(args)
    tols = _tols(args)
    sp = analyze_spectrum(derive(PlasmaParams(**vals)))
    doc = sp.as_dict()
    doc["meta"] = {"header": _header(args, vals, tols)}
    _write(args, json.dumps(doc, indent=2, sort_keys=True,
                            default=lambda o: None if o is None else float(o)) + "\n")
    return EXIT_NUMERIC if sp.region == NEARL else EXIT_OK


def _cmd_boundary_curve(args):
    if args.samples < 1:
        raise ParameterError("samples", args.samples, "must be positive")
    pts = trace_curve_L(default_curve_samples(args.samples))
    rows = [(p.mu, p.Omega, p.eps, p.g1_residual, p.g2_residual) for p in pts]
    hdr = [f"plasmode {__version__} boundary-curve"]
    if not args.no_timestamp:
        hdr.append("generated: " + _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"))
    hdr.append("residuals are |g1|/g and |g2|/g at each point's own (Omega, eps)")
    _emit(args, hdr, ["mu", "Omega", "eps", "g1_residual", "g2_residual"], rows)
    return EXIT_OK


def _solve_checked(vals, tols):
    return solve(PlasmaParams(**vals), tol=tols["coeff"])


def _cmd_field(args):
    vals = _params(args)
    tols = _tols(args)
    if args.points < 2:
        raise ParameterError("points", args.points, "need at least 2 points")
    co = _solve_checked(vals, tols)
    fp = field_profile(co, np.linspace(-1.0, 1.0, args.points), tol=tols["field"])
    extra = [f"boundary_residual={fp.boundary_residual:.3e} symmetry_residual={fp.symmetry_residual:.3e}"]
    rows = [(x, e.real, e.imag) for x, e in zip(fp.x_grid, fp.e_values)]
    _emit(args, _header(args, vals, tols, extra), ["x", "e_re", "e_im"], rows)
    return EXIT_OK


def _cmd_distribution(args):
    vals = _params(args)
    tols = _tols(args)
    n = args.mu_grid
    if n < 1:
        raise ParameterError("mu-grid", n, "must be positive")
    co = _solve_checked(vals, tols)
    mu = -1.0 + (2.0 * np.arange(n) + 1.0) / n
    mu = mu[mu != 0.0]
    rows = []
    for m_ in mu:
        h = boundary_distribution(co, m_, tol=tols["field"])
        rows.append((m_, h.real, h.imag))
    _emit(args, _header(args, vals, tols), ["mu", "h_re", "h_im"], rows)
    return EXIT_OK


def _absorb_point(job):
    p, tols = job
    try:
        co = solve(p, tol=tols["coeff"])
        r = compute_absorption(co, tol_series=tols["series"], tol_coeff=tols["coeff"])
    except NearCurveError:
        return NEARL, None
    except NumericalError as exc:
        return "error:" + type(exc).__name__, None
    return ("ok" if r.q0_nonnegative else "negative_Q0"), r


def _cmd_absorb(args):
    vals = _params(args, need=())
    tols = _tols(args)
    if any(v is not None for v in (args.omega_min, args.omega_max, args.omega_steps)):
        axis, lo, hi, n = "omega", args.omega_min, args.omega_max, args.omega_steps
    else:
        axis, lo, hi, n = args.axis, args.min, args.max, args.steps
    if lo is None or hi is None or n is None:
        raise ParameterError("sweep", None, "give --omega-min/--omega-max/--omega-steps or --min/--max/--steps")
    fixed = {k: v for k, v in vals.items() if k != axis}
    for key in ("omega", "eps"):
        if key != axis and key not in fixed:
            raise ParameterError(key, None, "missing for the sweep")
    spec = SweepSpec(axis, lo, hi, n, fixed)
    jobs = [(p, tols) for p in spec.points()]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_absorb_point, jobs))
    else:
        results = [_absorb_point(j) for j in jobs]
    cols = [AXES[axis], "Q0", "agreement"]
    if args.all_routes:
        cols += ["Q1_closed_re", "Q1_closed_im", "Q1_quadrature_re", "Q1_quadrature_im",
                 "Q1_spatial_re", "Q1_spatial_im"]
    cols.append("status")
    rows = []
    for v, (status, r) in zip(spec.values(), results):
        if r is None:
            row = [v, math.nan, math.nan] + ([math.nan] * 6 if args.all_routes else [])
        else:
            row = [v, r.Q0, r.agreement]
            if args.all_routes:
                for q in (r.Q1_closed, r.Q1_quadrature, r.Q1_spatial):
                    row += [q.real, q.imag]
        rows.append(row + [status])
    hdr = _header(args, fixed, tols,
                  [f"sweep: axis={axis} min={_fmt(lo)} max={_fmt(hi)} steps={n}"])
    _emit(args, hdr, cols, rows)
    return EXIT_OK


def _cmd_verify(args):
    from .verify import run_checks

    vals = _params(args)
    tols = _tols(args)
    checks = run_checks(PlasmaParams(**vals), tols)
    lines = ["# " + h for h in _header(args, vals, tols)]
    for c in checks:
        lines.append(c.line())
    failed = [c for c in checks if not c.passed]
    lines.append(f"# {len(checks) - len(failed)}/{len(checks)} checks passed")
    _write(args, "\n".join(lines) + "\n")
    return EXIT_VERIFY if failed else EXIT_OK


COMMANDS = {
    "dispersion": _cmd_dispersion,
    "spectrum": _cmd_spectrum,
    "boundary-curve": _cmd_boundary_curve,
    "field": _cmd_field,
    "distribution": _cmd_distribution,
    "absorb": _cmd_absorb,
    "verify": _cmd_verify,
}


def run(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        return COMMANDS[args.cmd](args)
    except ParameterError as exc:
        print(f"plasmode: parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except (NumericalError, PlasmodeError) as exc:
        print(f"plasmode: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
