"""Harmonic functions of the two-layer generator and the Martin boundary.

The positive harmonic functions that matter here are the directional
weights already used by the asymptotic prefactors: the axis functions f0
and fpi, the interior family h_alpha, and the pole function f_star. This
module wraps them as callables, provides finite-difference residuals to
verify harmonicity (interior operator on each side plus the three
interface conditions), evaluates Martin kernels and discrete-measure
representations, and describes the boundary structure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import algebra, asymptotics
from .errors import (NegativeWeight, NoPole, OutsideM, StepTooLarge,
                     Unsupported)
from .model import ModelParams, Point

KINDS = ("f0", "fpi", "h_alpha", "f_star")


def _as_point(z) -> Point:
    return z if isinstance(z, Point) else Point(float(z[0]), float(z[1]))


@dataclass(frozen=True)
class HarmonicFn:
    """A positive harmonic function of the layered generator, callable on
    points of the plane. ``kind`` selects the family; ``alpha`` is the
    direction parameter of the interior family and ignored otherwise."""

    params: ModelParams
    kind: str
    alpha: float | None = None

    def __call__(self, z) -> float:
        z = _as_point(z)
        if self.kind == "f0":
            return asymptotics.f0(self.params, z)
        if self.kind == "fpi":
            return asymptotics.fpi(self.params, z)
        if self.kind == "h_alpha":
            return asymptotics.h_alpha(self.params, self.alpha, z)
        return asymptotics.f_star(self.params, z)


def harmonic_function(params: ModelParams, kind: str,
                      alpha: float | None = None) -> HarmonicFn:
    """Build one of the named harmonic functions, validating its
    parameters eagerly (direction inside the direction set, pole present
    for f_star)."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if kind == "h_alpha":
        if alpha is None:
            raise ValueError("h_alpha needs a direction alpha")
        if not algebra.in_M(params, alpha):
            raise OutsideM(f"alpha={alpha} is outside the direction set")
    elif alpha is not None:
        raise ValueError(f"kind {kind!r} takes no alpha")
    if kind == "f_star" and not algebra.find_pole(params).present:
        raise NoPole("f_star needs a transform pole")
    return HarmonicFn(params, kind, alpha)


# ---------------------------------------------------------------------------
# finite-difference verification
# ---------------------------------------------------------------------------

def _interior_residual(sig, mu, f, a: float, b: float, s: float) -> float:
    """Central second-order residual of (1/2 Sigma : D^2 + mu . D) f."""
    fc = f(Point(a, b))
    fpp = f(Point(a + s, b))
    fmm = f(Point(a - s, b))
    fbp = f(Point(a, b + s))
    fbm = f(Point(a, b - s))
    fxx = (fpp - 2.0 * fc + fmm) / (s * s)
    fyy = (fbp - 2.0 * fc + fbm) / (s * s)
    fxy = (f(Point(a + s, b + s)) - f(Point(a + s, b - s))
           - f(Point(a - s, b + s)) + f(Point(a - s, b - s))) / (4.0 * s * s)
    fx = (fpp - fmm) / (2.0 * s)
    fy = (fbp - fbm) / (2.0 * s)
    return 0.5 * (sig.s11 * fxx + 2.0 * sig.s12 * fxy + sig.s22 * fyy) \
        + mu.m1 * fx + mu.m2 * fy


def _one_sided(f, a: float, s: float, sign: float):
    """Axis trace, normal derivative, and tangential derivative of f at
    (a, 0) from the ``sign`` side, using the 3-point extrapolation stencils
    on nodes at distance s, 2s, 3s (second-order accurate)."""
    def val(k):
        return f(Point(a, sign * k * s))

    def dx(k):
        return (f(Point(a + s, sign * k * s))
                - f(Point(a - s, sign * k * s))) / (2.0 * s)

    trace = 3.0 * val(1) - 3.0 * val(2) + val(3)
    normal = sign * (-5.0 * val(1) + 8.0 * val(2) - 3.0 * val(3)) / (2.0 * s)
    tangent = 3.0 * dx(1) - 3.0 * dx(2) + dx(3)
    return trace, normal, tangent


def pde_residual(params: ModelParams, h, z, step: float) -> dict:
    """Finite-difference residuals of the harmonicity conditions at z.

    Returns the five channels: the interior operator residual on each side
    (evaluated at (a, d) and (a, -d) with d = |b|, or 4*step when z sits on
    the axis), and the three interface conditions at (a, 0): the skew
    transmission flux, continuity of the trace, and matching of the
    tangential derivative.
    """
    z = _as_point(z)
    if step <= 0.0:
        raise ValueError("step must be positive")
    if z.b != 0.0 and step >= abs(z.b):
        raise StepTooLarge(
            f"step {step} reaches across the axis from b={z.b}")
    d = abs(z.b) if z.b != 0.0 else 4.0 * step
    a = z.a
    q1, q2 = params.q.q1, params.q.q2

    res_plus = _interior_residual(params.sigma_plus, params.mu_plus,
                                  h, a, d, step)
    res_minus = _interior_residual(params.sigma_minus, params.mu_minus,
                                   h, a, -d, step)
    tr_p, dn_p, dx_p = _one_sided(h, a, step, +1.0)
    tr_m, dn_m, dx_m = _one_sided(h, a, step, -1.0)
    flux = q1 * dx_p + (1.0 + q2) * dn_p + q1 * dx_m - (1.0 - q2) * dn_m
    return {
        "interior_plus": res_plus,
        "interior_minus": res_minus,
        "transmission_flux": flux,
        "continuity": tr_p - tr_m,
        "x_derivative_match": dx_p - dx_m,
    }


# ---------------------------------------------------------------------------
# escape probabilities (divergence-form skew only)
# ---------------------------------------------------------------------------

def escape_prob_up(params: ModelParams, b0: float) -> float:
    """Probability that the process started at (a, b0) drifts to the upper
    layer forever (a plays no role). Closed form, proved for the
    divergence-form skew; other skews go through the Monte Carlo
    estimator."""
    if not params.is_divergence_form:
        raise Unsupported("closed-form escape probabilities hold for the "
                          "divergence-form skew; use montecarlo.escape_estimate")
    m2p = params.mu_plus.m2
    m2m = params.mu_minus.m2
    gap = m2p - m2m
    if b0 >= 0.0:
        return 1.0 + (m2m / gap) * math.exp(
            -2.0 * b0 * m2p / params.sigma_plus.s22)
    return (m2p / gap) * math.exp(-2.0 * b0 * m2m / params.sigma_minus.s22)


def escape_prob_down(params: ModelParams, b0: float) -> float:
    # complement by construction so the two sum to one exactly
    return 1.0 - escape_prob_up(params, b0)


# ---------------------------------------------------------------------------
# Martin kernels and representation
# ---------------------------------------------------------------------------

_POLE_REGIMES = {
    asymptotics.Regime.PoleInterior,
    asymptotics.Regime.PoleBoundary_i,
    asymptotics.Regime.PoleBoundary_ii,
    asymptotics.Regime.PoleBoundary_iii,
    asymptotics.Regime.PoleBoundary_iv,
    asymptotics.Regime.PoleBoundary_v,
}


def martin_kernel(params: ModelParams, alpha: float, z) -> float:
    """Martin kernel of the direction alpha: h_alpha(z) / h_alpha(0), with
    the endpoint conventions. The axis directions use f0 / fpi, every
    direction absorbed by the pole sector (its interior, its two boundary
    angles, and an axis it straddles) uses f_star; all of them are the
    limits of the interior ratio."""
    z = _as_point(z)
    zero = Point(0.0, 0.0)
    cls = asymptotics.classify_direction(params, alpha)
    reg = cls.regime
    if reg is asymptotics.Regime.OutsideM:
        raise OutsideM(f"alpha={alpha} is outside the direction set")
    if reg in _POLE_REGIMES:
        return asymptotics.f_star(params, z) / asymptotics.f_star(params, zero)
    if reg is asymptotics.Regime.AxisPos:
        return asymptotics.f0(params, z) / asymptotics.f0(params, zero)
    if reg is asymptotics.Regime.AxisNeg:
        return asymptotics.fpi(params, z) / asymptotics.fpi(params, zero)
    a = cls.alpha0
    return asymptotics.h_alpha(params, a, z) / asymptotics.h_alpha(params, a, zero)


def represent(params: ModelParams, measure, z) -> float:
    """Value at z of the harmonic function represented by a discrete
    measure on the Martin boundary: sum of weight * martin_kernel(alpha).
    Continuous measures are approximated by the caller through quadrature
    nodes."""
    z = _as_point(z)
    total = 0.0
    for alpha, weight in measure:
        if weight < 0.0:
            raise NegativeWeight(f"weight {weight} at alpha={alpha}")
        if weight:
            total += weight * martin_kernel(params, alpha, z)
    return total


# ---------------------------------------------------------------------------
# boundary structure
# ---------------------------------------------------------------------------

def _intersect_arcs(arcs, lo: float, hi: float):
    out = []
    for a, b in arcs:
        la, lb = max(a, lo), min(b, hi)
        if la < lb:
            out.append((la, lb))
    return out


def _in_arcs(arcs, x: float, tol: float = 1e-12) -> bool:
    return any(a - tol <= x <= b + tol for a, b in arcs)


def boundary_structure(params: ModelParams) -> dict:
    """JSON-able description of the Martin boundary.

    ``gamma_min`` is the minimal boundary: the direction set itself, or its
    intersection with the closed pole interval with the two pole angles
    identified to a single point when a transform pole exists. ``gamma``
    is the full boundary: the same circle part with a segment of length one
    glued at each branch angle that survives in it (the segment's near
    endpoint is identified with the circle point; its far endpoint is a
    distinct non-minimal Martin point). A corner where both layers' branch
    points merge has no spur point; the degeneracy flags record it.
    """
    ang = algebra.key_angles(params)
    ds = algebra.direction_set(params)
    arcs = [tuple(arc) for arc in ds.arcs]
    pole = algebra.find_pole(params)

    if pole.present:
        min_arcs = _intersect_arcs(arcs, pole.alpha_plus, pole.alpha_minus)
        identifications = [[pole.alpha_plus, pole.alpha_minus]]
        pole_block = {
            "x_star": pole.x_star,
            "alpha_plus": pole.alpha_plus,
            "alpha_minus": pole.alpha_minus,
        }
    else:
        min_arcs = arcs
        identifications = []
        pole_block = None

    spurs = []
    for attach, half_upper, degenerate in (
            (ang.alpha_b, ang.alpha_b_on_upper, ang.degenerate_zero),
            (ang.alpha_tilde, ang.alpha_tilde_on_upper, ang.degenerate_pi)):
        if not degenerate and _in_arcs(min_arcs, attach):
            spurs.append({
                "attached_at": attach,
                "segment": [1.0, 2.0],
                "glue": "segment endpoint 1 identified with the circle "
                        "point at attached_at",
                "half": "upper" if half_upper else "lower",
            })

    return {
        "case": ds.case.value if ds.case is not None else None,
        "direction_set": [list(arc) for arc in arcs],
        "gamma_min": {
            "arcs": [list(arc) for arc in min_arcs],
            "identifications": identifications,
        },
        "gamma": {
            "arcs": [list(arc) for arc in min_arcs],
            "spurs": spurs,
        },
        "pole": pole_block,
        "is_divergence_form": params.is_divergence_form,
        "degenerate_zero": ang.degenerate_zero,
        "degenerate_pi": ang.degenerate_pi,
        "key_angles": {
            "alpha_b": ang.alpha_b,
            "alpha_tilde": ang.alpha_tilde,
            "alpha_mu_plus": ang.alpha_mu_plus,
            "alpha_mu_minus": ang.alpha_mu_minus,
        },
    }
