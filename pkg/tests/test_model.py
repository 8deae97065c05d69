"""Parameter validation, the divergence-form skew, kernels, reflection."""

import json
import math

import pytest
from hypothesis import given, settings

from layered_green import (CovMatrix, Point, divergence_skew, kernel_gamma,
                           kernel_minus, kernel_plus, params_from_dict,
                           params_from_json, reflect, reflect_point, validate)
from layered_green.errors import (DriftSignViolation, InputError,
                                  NonSPDCovariance, SkewOutOfRange)

from conftest import model_params


# -- validation ----------------------------------------------------------------

def test_accepts_tuples_dicts_and_matrices():
    a = validate((1, 0, 1), {"s11": 1, "s12": 0, "s22": 1},
                 (1, 1), (1, -1), (0, 0))
    b = validate(CovMatrix(1, 0, 1), CovMatrix(1, 0, 1),
                 (1, 1), (1, -1), (0, 0))
    assert a == b


@pytest.mark.parametrize("bad", [(1, 0, -1), (0, 0, 1), (1, 1.2, 1)])
def test_rejects_non_spd_covariance(bad):
    with pytest.raises(NonSPDCovariance):
        validate(bad, (1, 0, 1), (1, 1), (1, -1), (0, 0))
    with pytest.raises(NonSPDCovariance):
        validate((1, 0, 1), bad, (1, 1), (1, -1), (0, 0))


@pytest.mark.parametrize("mp,mm", [
    ((-1, 1), (1, -1)),   # m1+ must be positive
    ((1, -1), (1, -1)),   # m2+ must be positive
    ((1, 1), (-1, -1)),   # m1- must be positive
    ((1, 1), (1, 1)),     # m2- must be negative
    ((1, 0), (1, -1)),    # zero is not allowed either
])
def test_rejects_bad_drift_signs(mp, mm):
    with pytest.raises(DriftSignViolation):
        validate((1, 0, 1), (1, 0, 1), mp, mm, (0, 0))


@pytest.mark.parametrize("q2", [1.0, -1.0, 1.5])
def test_rejects_tangential_skew_out_of_range(q2):
    with pytest.raises(SkewOutOfRange):
        validate((1, 0, 1), (1, 0, 1), (1, 1), (1, -1), (0.0, q2))


def test_q1_is_unrestricted():
    validate((1, 0, 1), (1, 0, 1), (1, 1), (1, -1), (100.0, 0.0))


# -- divergence-form skew --------------------------------------------------------

def test_divergence_skew_formula():
    p = validate((1, 0.3, 2), (1.5, -0.2, 4), (1, 1), (1, -1), (0, 0))
    q0 = divergence_skew(p.sigma_plus, p.sigma_minus)
    s = 2.0 + 4.0
    assert q0.q1 == pytest.approx((0.3 - (-0.2)) / s, abs=1e-15)
    assert q0.q2 == pytest.approx((2.0 - 4.0) / s, abs=1e-15)


def test_divergence_request_sets_flag(asym):
    assert asym.is_divergence_form
    assert asym.q.q1 == pytest.approx(0.0, abs=1e-15)
    assert asym.q.q2 == pytest.approx(-0.6, abs=1e-15)


def test_explicit_matching_q_detected_as_divergence(sym):
    # zero skew happens to be the divergence-form choice for equal layers
    assert sym.is_divergence_form


def test_explicit_other_q_is_not_divergence(pole_model):
    assert not pole_model.is_divergence_form


# -- JSON round trip --------------------------------------------------------------

def test_params_from_json_matches_from_dict():
    d = {"sigma_plus": {"s11": 1, "s12": 0, "s22": 1},
         "sigma_minus": [1, 0, 4],
         "mu_plus": [1, 1], "mu_minus": [1, -1], "q": "divergence"}
    assert params_from_json(json.dumps(d)) == params_from_dict(d)


def test_missing_key_raises_input_error():
    with pytest.raises((InputError, KeyError)):
        params_from_dict({"sigma_plus": [1, 0, 1]})


# -- kernels -----------------------------------------------------------------------

def test_kernel_values_symmetric_model(sym):
    # 1/2 (x^2 + y^2) + x + y at (1, 1) and the minus variant at (1, -1)
    assert kernel_plus(sym, 1.0, 1.0) == pytest.approx(3.0)
    assert kernel_minus(sym, 1.0, -1.0) == pytest.approx(3.0)
    # interface symbol with zero skew is half the slot difference
    assert kernel_gamma(sym, 5.0, 2.0, -3.0) == pytest.approx(
        0.5 * (2.0 - (-3.0)))


def test_kernel_gamma_skew_weights(pole_model):
    q1, q2 = 4.0, 0.0
    x, y, z = 0.7, -1.1, 0.4
    want = q1 * x + 0.5 * ((1 + q2) * y + (q2 - 1) * z)
    assert kernel_gamma(pole_model, x, y, z) == pytest.approx(want)


def test_kernels_accept_complex(sym):
    v = kernel_plus(sym, 1j, 2.0)
    assert v == pytest.approx(0.5 * (-1 + 4) + 1j + 2)


# -- reflection ---------------------------------------------------------------------

def test_reflection_swaps_and_flips(asym):
    r = reflect(asym)
    assert r.sigma_plus.s22 == asym.sigma_minus.s22
    assert r.sigma_minus.s22 == asym.sigma_plus.s22
    assert r.sigma_plus.s12 == -asym.sigma_minus.s12
    assert r.mu_plus.m1 == asym.mu_minus.m1
    assert r.mu_plus.m2 == -asym.mu_minus.m2
    assert r.q.q1 == asym.q.q1
    assert r.q.q2 == -asym.q.q2
    assert r.is_divergence_form  # reflection preserves the property


def test_reflect_point():
    assert reflect_point(Point(0.3, 0.7)) == Point(0.3, -0.7)


@settings(max_examples=40, deadline=None)
@given(model_params())
def test_double_reflection_is_identity(p):
    back = reflect(reflect(p))
    assert back.sigma_plus == p.sigma_plus
    assert back.sigma_minus == p.sigma_minus
    assert back.mu_plus == p.mu_plus
    assert back.mu_minus == p.mu_minus
    assert back.q == p.q


@settings(max_examples=40, deadline=None)
@given(model_params())
def test_reflected_kernels_mirror(p):
    """gamma-hat(x, y, z) of the reflected model equals gamma(x, -z, -y):
    the interface symbol is invariant under the half-plane swap."""
    r = reflect(p)
    x, y, z = 0.37, -0.8, 0.55
    assert kernel_gamma(r, x, y, z) == pytest.approx(
        kernel_gamma(p, x, -z, -y), rel=1e-12, abs=1e-12)
    assert kernel_plus(r, x, y) == pytest.approx(
        kernel_minus(p, x, -y), rel=1e-12, abs=1e-12)
