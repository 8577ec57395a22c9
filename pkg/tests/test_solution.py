import numpy as np
import pytest
from scipy.integrate import quad

from plasmode import DomainError, NearCurveError, PlasmaParams, derive, solve
from plasmode.solution import (M_closed, M_quadrature, J_quadratures, J_residues,
                               accommodation_moment, accommodation_residual, accommodation_target,
                               boundary_distribution, compute_A1, continuum_coefficient, density,
                               field_derivative, field_profile, field_value, jump_fit,
                               nonflow_moment, with_forced)
from plasmode.spectrum import trace_curve_L
from plasmode.specfun import lam, lambda_prime

from conftest import P1


def _mu_quad(co, weight, lo, hi):
    """Direct mu-quadrature of weight(mu) h(-1, mu) with scipy as an independent engine."""
    def part(fn):
        return quad(lambda x: fn(weight(x) * boundary_distribution(co, x, tol=1e-10)),
                    lo, hi, epsabs=1e-11, epsrel=1e-10, limit=200)[0]
    return part(np.real) + 1j * part(np.imag)


def test_drude_amplitude(co1):
    assert co1.E_inf * co1.dc.lambda_inf == pytest.approx(co1.dc.lambda1, rel=1e-15)


def test_specular_reduction(co_specular):
    co = co_specular
    dc, e0 = co.dc, co.eta0
    assert co.A1_tilde == 0
    ref = -dc.lambda1 * e0 / (complex(lambda_prime(e0, dc)) * (e0 * e0 - dc.eta1_sq))
    assert co.E0_cosh == pytest.approx(ref, rel=1e-14)


def test_A1_over_alpha_stabilizes(dc1, co1):
    r = [compute_A1(dc1, co1.eta0, a) / a for a in (1e-2, 1e-4, 1e-6)]
    for a, b in zip(r, r[1:]):
        assert abs(a - b) < 0.01 * abs(b)
    assert abs(r[-1] - r[-2]) < 1e-3 * abs(r[-1])


def test_field_boundary_and_symmetry(co1):
    prof = field_profile(co1, np.linspace(-1, 1, 9))
    assert prof.boundary_residual < 1e-6
    assert prof.symmetry_residual < 1e-8
    assert np.allclose(prof.e_values, prof.e_values[::-1], atol=1e-8)


def test_field_center_self_convergence(co1):
    a = field_value(co1, 0.0, tol=1e-8)
    b = field_value(co1, 0.0, tol=1e-12)
    assert np.isfinite(a) and abs(a - b) < 1e-8


def test_field_derivative(co1):
    h = 1e-4
    for x in (-0.7, 0.2, 0.9):
        d = field_derivative(co1, x, tol=1e-11)
        fd = (field_value(co1, x + h, 1e-12) - field_value(co1, x - h, 1e-12)) / (2 * h)
        assert abs(d - fd) < 1e-6 * max(1, abs(d))
        # charge conservation: de/dx = (u_p^2/2) n(x)
        n = density(co1, x, tol=1e-11)
        assert abs(d - 0.5 * co1.dc.up_sq * n) < 1e-8 * max(1, abs(d))


def test_nonflow_exchanged(co1, co_specular):
    assert abs(nonflow_moment(co1)) < 1e-10
    assert abs(nonflow_moment(co_specular)) < 1e-10


@pytest.mark.slow
def test_nonflow_direct(co1):
    total = _mu_quad(co1, lambda x: x, -1, 0) + _mu_quad(co1, lambda x: x, 0, 1)
    assert abs(total) < 1e-6


def test_specular_even_extension(co_specular):
    for mu in (0.25, 0.5, 0.75):
        d = boundary_distribution(co_specular, mu) - boundary_distribution(co_specular, -mu)
        assert abs(d) < 1e-6


def test_accommodation_exchanged(co1):
    assert accommodation_residual(co1) < 1e-8
    assert accommodation_moment(co1) == pytest.approx(accommodation_target(co1), rel=1e-8)


@pytest.mark.slow
def test_accommodation_direct(co1):
    direct = _mu_quad(co1, lambda x: x * x - 2 * x / 3, 0, 1)
    assert abs(direct - accommodation_target(co1)) < 1e-6


def test_jump_proportional(co1):
    s, res = jump_fit(co1)
    assert res < 1e-5
    assert s == pytest.approx(co1.A1_tilde / co1.dc.w0, rel=1e-6)


def test_boundary_distribution_domain(co1):
    for mu in (0.0, 1.0, -1.0, 1.5):
        with pytest.raises(DomainError):
            boundary_distribution(co1, mu)


@pytest.mark.parametrize("z", [1.5 + 0.5j, -0.3 + 0.8j, 0.2 - 0.1j, 3.0, -2.0 - 4.0j])
def test_M_closed_vs_quadrature(co1, z):
    assert M_closed(z, co1) == pytest.approx(M_quadrature(z, co1), rel=1e-8, abs=1e-10)


def test_M_vanishes_at_infinity(co1):
    for ph in np.linspace(0, 2 * np.pi, 7)[:-1]:
        z = 1e3 * np.exp(1j * ph)
        assert abs(M_closed(z, co1) / z) < 1e-5


def test_M_regular_at_debye_zero(co1):
    vals = [abs(M_closed(co1.eta0 + d, co1)) for d in (1e-3, 1e-5, 1e-7)]
    assert max(vals) < 10 * min(vals)


def test_continuum_parity(co1):
    a, b = co1.continuum(0.4), co1.continuum(-0.4)
    assert a == pytest.approx(b, rel=1e-13)


def test_continuum_from_jump(co1):
    dc = co1.dc
    for mu in (-0.6, 0.3, 0.8):
        def Mside(s, d):
            return M_closed(mu + 1j * s * d, co1)
        d = 1e-6
        # linear extrapolation of each boundary value to the cut
        jump = (2 * Mside(1, d) - Mside(1, 2 * d)) - (2 * Mside(-1, d) - Mside(-1, 2 * d))
        Ecosh = jump / (2j * np.pi * (mu * mu - dc.eta1_sq) * 2)
        assert Ecosh == pytest.approx(co1.continuum_scaled(mu), rel=1e-8)


def test_continuum_finite_at_edges(co1):
    for e in (1 - 1e-12, -(1 - 1e-12), 1e-4, -1e-4):
        assert np.isfinite(co1.continuum_scaled(e))
    assert np.isfinite(co1.continuum(1e-6)) and abs(co1.continuum(1e-6)) < 1e-100


def test_small_length_scale_no_overflow():
    co = solve(PlasmaParams(0.5, 0.2, 200.0, 0.5))
    e = field_value(co, 0.3)
    assert np.isfinite(e)
    assert abs(field_value(co, 1.0) - 1) < 1e-6


def test_J_residues(dc1, co1):
    r1, r2 = J_residues(dc1, co1.eta0)
    q1, q2 = J_quadratures(dc1)
    assert abs(r1 - q1) < 1e-7 * abs(r1) and abs(r2 - q2) < 1e-7 * abs(r2)


def test_forced_coefficients(co1):
    co = with_forced(co1, A1_tilde=0.0, drop_debye=True)
    assert co.eta0 is None and co.E0 == 0 and co.A1_tilde == 0


def test_near_curve_refused():
    (p,) = trace_curve_L([0.9])
    with pytest.raises(NearCurveError):
        solve(PlasmaParams(p.Omega, p.eps, 5.0))


def test_minus_region_solution():
    co = solve(PlasmaParams(5.0, 2.0, 1.0, 0.5))
    assert co.eta0 is None and co.E0 == 0
    assert abs(field_value(co, 1.0) - 1) < 1e-6
    assert abs(nonflow_moment(co)) < 1e-10
    assert accommodation_residual(co) < 1e-8
