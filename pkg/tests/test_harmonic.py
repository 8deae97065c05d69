"""Tests for the harmonic-function layer: callables, PDE residuals,
escape probabilities, Martin kernels, representation, boundary structure."""

import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from layered_green import validate
from layered_green.asymptotics import f0, f_star, fpi, h_alpha
from layered_green.errors import (NegativeWeight, NoPole, OutsideM,
                                  StepTooLarge, Unsupported)
from layered_green.harmonic import (KINDS, HarmonicFn, boundary_structure,
                                    escape_prob_down, escape_prob_up,
                                    harmonic_function, martin_kernel,
                                    pde_residual, represent)
from layered_green.model import Point

from conftest import model_params

Z0 = Point(0.3, 0.7)
ALPHA_B = 0.6590580358264089
ALPHA_TILDE = 2.4825346177633847


def nondegenerate_pole_model():
    return validate((1.0, 0.0, 1.0), (1.0, 0.0, 4.0), (1.0, 1.0),
                    (1.0, -1.0), (10.0, 0.0))


# -- construction ---------------------------------------------------------------------

def test_every_kind_builds(asym, pole_model):
    assert isinstance(harmonic_function(asym, "f0"), HarmonicFn)
    assert isinstance(harmonic_function(asym, "fpi"), HarmonicFn)
    assert isinstance(harmonic_function(asym, "h_alpha", alpha=1.2), HarmonicFn)
    assert isinstance(harmonic_function(pole_model, "f_star"), HarmonicFn)


def test_unknown_kind_rejected(sym):
    with pytest.raises(ValueError):
        harmonic_function(sym, "greens")


def test_h_alpha_needs_a_direction(sym):
    with pytest.raises(ValueError):
        harmonic_function(sym, "h_alpha")


@pytest.mark.parametrize("kind", ["f0", "fpi", "f_star"])
def test_axis_and_pole_kinds_take_no_alpha(pole_model, kind):
    with pytest.raises(ValueError):
        harmonic_function(pole_model, kind, alpha=0.5)


def test_h_alpha_direction_must_lie_in_the_direction_set(asym):
    # for this model the directions below the branch angle are excluded
    with pytest.raises(OutsideM):
        harmonic_function(asym, "h_alpha", alpha=0.3)
    harmonic_function(asym, "h_alpha", alpha=ALPHA_B + 0.01)


def test_f_star_needs_a_pole(sym):
    with pytest.raises(NoPole):
        harmonic_function(sym, "f_star")


def test_callable_matches_the_module_functions(asym, pole_model):
    assert harmonic_function(asym, "f0")(Z0) == f0(asym, Z0)
    assert harmonic_function(asym, "fpi")(Z0) == fpi(asym, Z0)
    assert harmonic_function(asym, "h_alpha", alpha=1.2)(Z0) \
        == h_alpha(asym, 1.2, Z0)
    assert harmonic_function(pole_model, "f_star")(Z0) == f_star(pole_model, Z0)


def test_callable_accepts_bare_pairs(asym):
    fn = harmonic_function(asym, "f0")
    assert fn((0.3, 0.7)) == fn(Z0)


# -- finite-difference residuals ------------------------------------------------------

CHANNELS = ("interior_plus", "interior_minus", "transmission_flux",
            "continuity", "x_derivative_match")


def test_interior_residuals_vanish_off_axis(sym):
    fn = harmonic_function(sym, "f0")
    res = pde_residual(sym, fn, Point(0.3, 0.7), 1e-3)
    assert abs(res["interior_plus"]) < 1e-6
    assert abs(res["interior_minus"]) < 1e-6


def test_interface_residuals_vanish_on_axis(asym):
    fn = harmonic_function(asym, "f0")
    res = pde_residual(asym, fn, Point(0.3, 0.0), 1e-3)
    for ch in CHANNELS:
        assert abs(res[ch]) < 1e-4, ch


def test_h_alpha_and_f_star_are_harmonic_too(sym, pole_model):
    ha = harmonic_function(sym, "h_alpha", alpha=math.pi / 4)
    fs = harmonic_function(pole_model, "f_star")
    for params, fn in ((sym, ha), (pole_model, fs)):
        res = pde_residual(params, fn, Point(0.3, 0.0), 1e-3)
        for ch in CHANNELS:
            assert abs(res[ch]) < 1e-4, ch


def test_residuals_shrink_with_the_step(sym):
    fn = harmonic_function(sym, "f0")
    coarse = pde_residual(sym, fn, Point(0.3, 0.0), 2e-3)
    fine = pde_residual(sym, fn, Point(0.3, 0.0), 1e-3)
    # channels with signal well above rounding noise at these steps
    for ch in ("interior_plus", "interior_minus", "transmission_flux"):
        assert abs(fine[ch]) < abs(coarse[ch]), ch


def test_interior_stencil_is_second_order(sym):
    fn = harmonic_function(sym, "f0")
    coarse = pde_residual(sym, fn, Point(0.3, 0.0), 2e-3)
    fine = pde_residual(sym, fn, Point(0.3, 0.0), 1e-3)
    for ch in ("interior_plus", "interior_minus"):
        ratio = abs(coarse[ch]) / abs(fine[ch])
        assert 3.0 < ratio < 5.5, (ch, ratio)


def test_step_must_be_positive(sym):
    fn = harmonic_function(sym, "f0")
    with pytest.raises(ValueError):
        pde_residual(sym, fn, Z0, 0.0)


def test_step_may_not_reach_across_the_axis(sym):
    fn = harmonic_function(sym, "f0")
    with pytest.raises(StepTooLarge):
        pde_residual(sym, fn, Point(0.3, 0.1), 0.1)
    pde_residual(sym, fn, Point(0.3, 0.1), 0.05)


def test_residual_detects_a_nonharmonic_function(sym):
    res = pde_residual(sym, lambda z: z.a * z.a + z.b * z.b,
                       Point(0.3, 0.7), 1e-3)
    assert abs(res["interior_plus"]) > 0.1


# -- escape probabilities -------------------------------------------------------------

def test_escape_partition_is_exact(asym):
    for b0 in (-2.0, -0.3, 0.0, 0.4, 1.0, 3.0):
        assert escape_prob_up(asym, b0) + escape_prob_down(asym, b0) == 1.0


def test_escape_up_frozen_value(asym):
    assert escape_prob_up(asym, 1.0) == pytest.approx(
        0.9323323583816936, rel=1e-13)


def test_escape_up_at_the_interface(sym, asym):
    # 1 + mu2_minus / (mu2_plus - mu2_minus) with the reference drifts
    assert escape_prob_up(sym, 0.0) == pytest.approx(0.5, abs=1e-15)
    assert escape_prob_up(asym, 0.0) == pytest.approx(0.5, abs=1e-15)


def test_escape_up_above_the_axis_ignores_the_lower_layer(sym, asym):
    # the two reference models share drifts and the upper covariance
    for b0 in (0.0, 0.5, 1.0, 2.0):
        assert escape_prob_up(sym, b0) == escape_prob_up(asym, b0)


def test_escape_up_saturates(asym):
    assert escape_prob_up(asym, 50.0) == pytest.approx(1.0, abs=1e-10)
    assert escape_prob_up(asym, -50.0) == pytest.approx(0.0, abs=1e-10)


def test_escape_up_continuous_at_zero(asym):
    lo = escape_prob_up(asym, -1e-9)
    hi = escape_prob_up(asym, 1e-9)
    assert abs(hi - lo) < 1e-8


def test_escape_needs_the_divergence_form_skew(pole_model):
    assert not pole_model.is_divergence_form
    with pytest.raises(Unsupported):
        escape_prob_up(pole_model, 0.5)
    with pytest.raises(Unsupported):
        escape_prob_down(pole_model, 0.5)


@settings(max_examples=40, deadline=None)
@given(model_params(divergence=True), st.floats(-3.0, 3.0))
def test_escape_up_is_a_monotone_probability(params, b0):
    lo = escape_prob_up(params, b0)
    hi = escape_prob_up(params, b0 + 0.25)
    assert 0.0 <= lo <= 1.0
    assert lo <= hi + 1e-12


# -- Martin kernels -------------------------------------------------------------------

def test_kernel_is_normalized_at_the_origin(asym, pole_model):
    zero = Point(0.0, 0.0)
    assert martin_kernel(asym, 0.0, zero) == 1.0
    assert martin_kernel(asym, math.pi, zero) == 1.0
    assert martin_kernel(asym, 1.2, zero) == 1.0
    assert martin_kernel(pole_model, 0.1, zero) == 1.0


def test_interior_kernel_is_the_h_alpha_ratio(asym):
    expect = h_alpha(asym, 1.2, Z0) / h_alpha(asym, 1.2, Point(0.0, 0.0))
    assert martin_kernel(asym, 1.2, Z0) == expect


def test_axis_endpoint_conventions(asym):
    assert martin_kernel(asym, 0.0, Z0) == pytest.approx(
        0.2806049176393638, rel=1e-13)
    assert martin_kernel(asym, math.pi, Z0) == pytest.approx(
        0.14347019305304093, rel=1e-13)


def test_pole_sector_collapses_to_one_kernel(pole_model):
    # interior of the sector, both boundary angles, and the axis the
    # sector straddles all give the pole kernel
    expect = f_star(pole_model, Z0) / f_star(pole_model, Point(0.0, 0.0))
    assert expect == pytest.approx(0.41380809917737005, rel=1e-13)
    for alpha in (0.1, 0.29544083714372044, 5.987744470035866, 0.0, 6.1):
        assert martin_kernel(pole_model, alpha, Z0) == expect, alpha


def test_kernel_rejects_directions_outside_the_set(asym):
    with pytest.raises(OutsideM):
        martin_kernel(asym, 0.3, Z0)


# -- representation -------------------------------------------------------------------

def test_represent_is_linear_in_the_measure(asym):
    measure = [(1.2, 0.4), (math.pi, 0.6)]
    expect = 0.4 * martin_kernel(asym, 1.2, Z0) \
        + 0.6 * martin_kernel(asym, math.pi, Z0)
    assert represent(asym, measure, Z0) == pytest.approx(expect, rel=1e-15)


def test_represent_at_the_origin_returns_the_total_mass(asym):
    measure = [(0.0, 0.25), (1.2, 0.35), (math.pi, 0.4)]
    assert represent(asym, measure, Point(0.0, 0.0)) == pytest.approx(1.0)


def test_represent_skips_zero_weights(asym):
    # a zero-weight atom never evaluates its kernel, even off the boundary
    measure = [(0.3, 0.0), (1.2, 1.0)]
    assert represent(asym, measure, Z0) == martin_kernel(asym, 1.2, Z0)


def test_represent_rejects_negative_weights(asym):
    with pytest.raises(NegativeWeight):
        represent(asym, [(1.2, -0.5)], Z0)


# -- boundary structure ---------------------------------------------------------------

def test_symmetric_boundary_is_the_full_circle(sym):
    bs = boundary_structure(sym)
    assert bs["case"] is None
    assert bs["degenerate_zero"] and bs["degenerate_pi"]
    assert bs["direction_set"] == [[0.0, 2.0 * math.pi]]
    assert bs["gamma_min"]["arcs"] == [[0.0, 2.0 * math.pi]]
    assert bs["gamma_min"]["identifications"] == []
    assert bs["gamma"]["spurs"] == []
    assert bs["pole"] is None


def test_asymmetric_boundary_has_two_spurs(asym):
    bs = boundary_structure(asym)
    assert bs["case"] == "A"
    assert bs["is_divergence_form"]
    assert bs["direction_set"] == [[ALPHA_B, ALPHA_TILDE],
                                   [math.pi, 2.0 * math.pi]]
    assert bs["gamma_min"]["arcs"] == bs["direction_set"]
    assert bs["gamma_min"]["identifications"] == []
    spurs = bs["gamma"]["spurs"]
    assert [s["attached_at"] for s in spurs] == [ALPHA_B, ALPHA_TILDE]
    assert all(s["half"] == "upper" for s in spurs)
    assert all(s["segment"] == [1.0, 2.0] for s in spurs)


def test_pole_identifies_its_two_boundary_angles(pole_model):
    bs = boundary_structure(pole_model)
    a_plus, a_minus = 0.29544083714372044, 5.987744470035866
    assert bs["pole"]["x_star"] == pytest.approx(6.0 / 17.0, abs=1e-12)
    assert bs["gamma_min"]["arcs"] == [[a_plus, a_minus]]
    assert bs["gamma_min"]["identifications"] == [[a_plus, a_minus]]
    # degenerate corners leave no spur
    assert bs["gamma"]["spurs"] == []


def test_pole_interval_can_absorb_a_corner():
    # here the pole sector starts just past the lower branch angle, so
    # that corner leaves the minimal boundary and only the upper one
    # keeps its spur
    bs = boundary_structure(nondegenerate_pole_model())
    assert bs["case"] == "A"
    a_plus, a_minus = bs["pole"]["alpha_plus"], bs["pole"]["alpha_minus"]
    assert bs["key_angles"]["alpha_b"] < a_plus
    assert bs["gamma_min"]["arcs"] == [[a_plus, ALPHA_TILDE],
                                       [math.pi, a_minus]]
    assert bs["gamma_min"]["identifications"] == [[a_plus, a_minus]]
    spurs = bs["gamma"]["spurs"]
    assert len(spurs) == 1
    assert spurs[0]["attached_at"] == ALPHA_TILDE
    assert spurs[0]["half"] == "upper"


def test_boundary_structure_is_jsonable(sym, asym, asym_mirror, pole_model):
    for m in (sym, asym, asym_mirror, pole_model,
              nondegenerate_pole_model()):
        parsed = json.loads(json.dumps(boundary_structure(m)))
        assert set(parsed) >= {"case", "direction_set", "gamma_min",
                               "gamma", "pole", "key_angles"}
