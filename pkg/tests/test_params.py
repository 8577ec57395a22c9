import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from plasmode import ParameterError, PlasmaParams, derive
from plasmode.params import identity_residuals, read_config


def test_p1_constants_by_hand():
    dc = derive(PlasmaParams(0.5, 0.2, 5.0))
    # arithmetic straight from the definitions, written out independently
    z0 = 1 - 2.5j
    e2 = 0.04 * z0 / 3
    c = (0.2 - 0.5j) ** 2 / 3
    assert dc.w0 == pytest.approx(1 - 2.5j)
    assert dc.z0 == pytest.approx(z0)
    assert dc.eta1_sq == pytest.approx(e2)
    assert dc.eta1_sq == pytest.approx(0.013333 - 0.033333j, abs=1e-6)
    assert dc.c == pytest.approx(c, rel=1e-14)
    assert dc.c == pytest.approx(-0.07 - 0.066667j, abs=1e-6)
    assert dc.lambda1 == pytest.approx(0.862069 - 0.344828j, abs=1e-6)
    assert dc.lambda_inf == pytest.approx((1 - 1 / z0) + 1 / (3 * c), rel=1e-14)
    # the six-digit figure quoted for this point is rounded loosely
    assert dc.lambda_inf == pytest.approx(-1.634960 + 2.033289j, abs=5e-6)
    assert dc.up_sq == 75.0


def test_trivial_point():
    dc = derive(PlasmaParams(0.0, 1.0, 1.0))
    assert dc.z0 == 1 and dc.w0 == 1
    assert dc.eta1_sq == pytest.approx(1 / 3)
    assert dc.c == pytest.approx(1 / 3)
    assert dc.lambda1 == 0


@given(st.floats(0.0, 5.0), st.floats(0.01, 3.0))
@settings(max_examples=60, deadline=None)
def test_laurent_coefficients_match_printed_forms(om, eps):
    dc = derive(PlasmaParams(om, eps, 2.0))
    w = complex(om, eps)
    li = (om * om - 1 + 1j * eps * om) / w ** 2
    l2 = -(9 + 5j * eps * w) / (15 * w ** 2)
    l4 = -(15 + 7j * eps * w) / (35 * w ** 2)
    assert dc.lambda_inf == pytest.approx(li, rel=1e-12)
    assert dc.lambda2 == pytest.approx(l2, rel=1e-12)
    assert dc.lambda4 == pytest.approx(l4, rel=1e-12)


@given(st.floats(0.0, 10.0), st.floats(1e-3, 10.0), st.floats(1e-2, 50.0), st.floats(0.0, 1.0))
@settings(max_examples=200, deadline=None)
def test_identities_hold_to_machine_precision(om, eps, k, a):
    dc = derive(PlasmaParams(om, eps, k, a))
    assert max(identity_residuals(dc).values()) < 1e-14
    assert dc.w0.real > 0


@pytest.mark.parametrize("kw,field", [
    (dict(omega=0.5, eps=0.0), "eps"),
    (dict(omega=0.5, eps=-1.0), "eps"),
    (dict(omega=0.5, eps=0.2, k=0.0), "k"),
    (dict(omega=-0.1, eps=0.2), "omega"),
    (dict(omega=0.5, eps=0.2, alpha_p=1.5), "alpha_p"),
    (dict(omega=float("nan"), eps=0.2), "omega"),
])
def test_rejects_bad_parameters(kw, field):
    with pytest.raises(ParameterError) as ei:
        PlasmaParams(**kw)
    assert ei.value.field == field
    assert field in str(ei.value)


def test_params_are_frozen():
    p = PlasmaParams(0.5, 0.2)
    with pytest.raises(dataclasses.FrozenInstanceError):
        p.eps = 1.0
    assert p.with_(eps=0.3).eps == 0.3


def test_read_config(tmp_path):
    f = tmp_path / "p.cfg"
    f.write_text("# comment\nomega = 0.5\neps: 0.2  # trailing\nk 5\nalpha-p=0.25\n")
    assert read_config(f) == {"omega": 0.5, "eps": 0.2, "k": 5.0, "alpha_p": 0.25}
    f.write_text("temperature = 3\n")
    with pytest.raises(ParameterError):
        read_config(f)
