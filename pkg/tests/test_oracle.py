"""Tests for the contour-quadrature ground truth.

The important checks are the internal cross-validations: two independent
integral representations of the same density must agree, and the geometric
symmetries of the model must survive the numerics.
"""

import math

import pytest

from layered_green import validate
from layered_green.errors import (OnAxisTarget, PoleOnContourSide,
                                  TailBoundFailure, Unsupported)
from layered_green.model import Point
from layered_green.oracle import (GreenEstimate, LemmaCheck, QuadratureSpec,
                                  green_axis, green_contour,
                                  lemma_integral_check)

Z0 = Point(0.3, 0.2)
TARGET = Point(1.0, 0.5)


# -- two-dimensional density ----------------------------------------------------------

def test_combined_and_split_representations_agree(asym):
    c = green_contour(asym, Z0, TARGET, variant="combined")
    s = green_contour(asym, Z0, TARGET, variant="split")
    assert c.value == pytest.approx(s.value, abs=1e-10)
    assert c.error < 1e-8 and s.error < 1e-8


def test_density_is_positive(asym, sym):
    for params in (asym, sym):
        for target in (Point(1.0, 0.5), Point(-0.8, 0.4), Point(0.5, -0.6)):
            est = green_contour(params, Z0, target)
            assert est.value > 0.0, target


def test_density_depends_only_on_the_horizontal_gap(asym):
    base = green_contour(asym, Point(0.3, 0.2), Point(1.0, 0.5))
    moved = green_contour(asym, Point(1.3, 0.2), Point(2.0, 0.5))
    assert moved.value == pytest.approx(base.value, abs=1e-10)


def test_mirror_model_reproduces_reflected_values(asym, asym_mirror):
    base = green_contour(asym, Point(0.3, 0.2), Point(1.0, 0.5))
    mirrored = green_contour(asym_mirror, Point(0.3, -0.2), Point(1.0, -0.5))
    assert mirrored.value == pytest.approx(base.value, abs=1e-13)


def test_lower_halfplane_targets_reuse_the_reflected_upper_route(sym):
    up = green_contour(sym, Point(0.0, 0.3), Point(1.0, 0.5))
    down = green_contour(sym, Point(0.0, -0.3), Point(1.0, -0.5))
    # the symmetric model is its own reflection
    assert down.value == pytest.approx(up.value, abs=1e-13)


def test_auto_falls_back_to_split_below_the_start(asym):
    # b <= b0 rules the combined route out; auto must still produce a value
    est = green_contour(asym, Point(0.3, 0.5), Point(1.0, 0.2))
    forced = green_contour(asym, Point(0.3, 0.5), Point(1.0, 0.2),
                           variant="split")
    assert est.value == forced.value
    assert est.value > 0.0


def test_forcing_combined_below_the_start_fails_the_tail_bound(asym):
    with pytest.raises(TailBoundFailure):
        green_contour(asym, Point(0.3, 0.5), Point(1.0, 0.2),
                      variant="combined")


def test_explicit_contour_controls_are_honored(asym):
    default = green_contour(asym, Z0, TARGET)
    pinned = green_contour(asym, Z0, TARGET,
                           QuadratureSpec(epsilon=0.05, T=80.0))
    assert pinned.value == pytest.approx(default.value, abs=1e-9)


def test_interface_targets_are_rejected(asym):
    with pytest.raises(OnAxisTarget):
        green_contour(asym, Z0, Point(1.0, 0.0))


def test_the_starting_point_is_singular(asym):
    with pytest.raises(Unsupported):
        green_contour(asym, Z0, Z0)


def test_split_needs_a_start_on_or_above_the_axis(asym):
    with pytest.raises(Unsupported):
        green_contour(asym, Point(0.0, -0.4), Point(1.0, 0.5),
                      variant="split")


def test_no_route_covers_the_vertical_ray_below_the_start(asym):
    with pytest.raises(Unsupported):
        green_contour(asym, Point(0.0, 0.5), Point(0.0, 0.2))


def test_unknown_variant_is_rejected(asym):
    with pytest.raises(ValueError):
        green_contour(asym, Z0, TARGET, variant="bogus")


# -- interface density ----------------------------------------------------------------

def test_axis_density_is_the_near_axis_limit_of_the_plane_density(asym):
    z0 = Point(0.0, 0.3)
    axis = green_axis(asym, z0, 1.0).value
    gaps = []
    for b in (0.05, 0.02, 0.01):
        plane = green_contour(asym, z0, Point(1.0, b)).value
        gaps.append(abs(plane / axis - 1.0))
    assert gaps[-1] < 0.05
    assert gaps[0] > gaps[1] > gaps[2]


def test_axis_density_positive_in_both_directions(asym):
    z0 = Point(0.0, 0.3)
    for u in (-2.0, -1.0, 0.0, 1.0, 2.0):
        assert green_axis(asym, z0, u).value > 0.0, u


def test_route_switch_at_the_slow_decay_threshold_is_continuous(asym):
    # |b0| = 0.05 separates the plain contour from the oscillation-weighted
    # one; the density itself is continuous in b0
    lo = green_axis(asym, Point(0.0, 0.0499), 1.0).value
    hi = green_axis(asym, Point(0.0, 0.0501), 1.0).value
    assert abs(lo - hi) / hi < 1e-3


def test_interface_start_uses_the_weighted_quadrature(asym):
    est = green_axis(asym, Point(0.0, 0.0), 1.5)
    assert est.value > 0.0
    assert est.error < 1e-8


def test_small_height_start_directly_above_the_target(asym):
    # w = a0 - u = 0 with b0 != 0 takes the unweighted slow-decay branch
    est = green_axis(asym, Point(0.5, 0.02), 0.5)
    assert est.value > 0.0


def test_interface_density_at_the_start_is_unsupported(asym):
    with pytest.raises(Unsupported):
        green_axis(asym, Point(0.0, 0.0), 0.0)


def test_abscissa_must_sit_in_the_branch_point_strip(asym):
    with pytest.raises(PoleOnContourSide):
        green_axis(asym, Point(0.0, 0.3), 1.0, QuadratureSpec(abscissa=5.0))


def test_abscissa_may_not_cross_the_transform_pole(pole_model):
    # strip is (-(sqrt2 - 1) shifted / ...) with the pole at 6/17; an
    # abscissa between the pole and the right branch point is cut off
    with pytest.raises(PoleOnContourSide):
        green_axis(pole_model, Point(0.0, 0.3), 1.0,
                   QuadratureSpec(abscissa=0.38))
    est = green_axis(pole_model, Point(0.0, 0.3), 1.0,
                     QuadratureSpec(abscissa=0.2))
    assert est.value > 0.0


def test_explicit_abscissa_matches_the_automatic_one(asym):
    auto = green_axis(asym, Point(0.0, 0.3), 1.0)
    pinned = green_axis(asym, Point(0.0, 0.3), 1.0,
                        QuadratureSpec(abscissa=0.05))
    assert pinned.value == pytest.approx(auto.value, abs=1e-9)


# -- boundary-layer lemma -------------------------------------------------------------

def test_lemma_ratio_approaches_one():
    at_200 = lemma_integral_check(200.0)
    at_1000 = lemma_integral_check(1000.0)
    assert abs(at_200.ratio - 1.0) < 0.01
    assert abs(at_1000.ratio - 1.0) < abs(at_200.ratio - 1.0)


def test_lemma_fields_are_consistent():
    chk = lemma_integral_check(500.0)
    assert isinstance(chk, LemmaCheck)
    assert chk.ratio == chk.numeric / chk.asymptotic
    assert chk.asymptotic == pytest.approx(
        math.sqrt(math.pi) / (4.0 * math.sqrt(2.0)) * 500.0 ** -1.5,
        rel=1e-15)


def test_lemma_needs_positive_q():
    with pytest.raises(ValueError):
        lemma_integral_check(0.0)
    with pytest.raises(ValueError):
        lemma_integral_check(-3.0)


# -- estimates carry error bars -------------------------------------------------------

def test_estimates_report_small_errors(asym):
    plane = green_contour(asym, Z0, TARGET)
    axis = green_axis(asym, Point(0.0, 0.3), 1.0)
    assert isinstance(plane, GreenEstimate)
    assert 0.0 < plane.error < 1e-8
    assert 0.0 < axis.error < 1e-8
