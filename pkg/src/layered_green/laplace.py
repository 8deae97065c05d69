"""Laplace transforms of the Green measure and the local-time functional.

phi(x) is the transform of the interface local-time functional started at
z0; phi_plus and phi_minus are the transforms of the Green measure restricted
to the upper and lower half-planes. All three are explicit in terms of the
branches: the boundary functional equation

    kernel_minus * phi_minus + kernel_plus * phi_plus + gamma * phi
        = -exp(x a0 + y b0 [b0 >= 0] + z b0 [b0 < 0])

is solved by evaluating it on the zero sets of the two kernels. The
denominator of phi is the interface symbol on the branch pair (Y-, Z+); its
only possible real zero x* in the binding interval is the transform's pole.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import algebra
from .errors import (AtPole, DegenerateBranchPoints, KernelZero, NoPole)
from .model import ModelParams, Point, kernel_gamma, kernel_minus, kernel_plus


def _exp_weight(params: ModelParams, z0: Point, x, y_branch, z_branch):
    """exp(x a0 + b0 * (upper branch if b0 >= 0 else lower branch))."""
    if z0.b >= 0.0:
        arg = x * z0.a + y_branch * z0.b
    else:
        arg = x * z0.a + z_branch * z0.b
    return cmath.exp(arg) if isinstance(arg, complex) else math.exp(arg)


def phi(params: ModelParams, z0: Point, x):
    """Transform of the accumulated interface local time, weighted by
    exp(x A). Defined off the two branch cuts; on a cut the branch
    convention (limit from the upper half-plane) applies. Raises AtPole
    when the denominator vanishes to within roundoff of its own scale."""
    ym = algebra.branch_Y(params, x, -1)
    zp = algebra.branch_Z(params, x, +1)
    den = kernel_gamma(params, x, ym, zp)
    q = params.q
    scale = (abs(q.q1 * x) + 0.5 * ((1.0 + q.q2) * abs(ym)
                                    + (1.0 - q.q2) * abs(zp)) + 1.0)
    if abs(den) < 1e-13 * scale:
        raise AtPole(f"phi has a pole at x={x}")
    return -_exp_weight(params, z0, x, ym, zp) / den


def phi_plus(params: ModelParams, z0: Point, x, y):
    """Green-measure transform over the upper half-plane,
    E int exp(x A_s + y B_s) 1_{B_s > 0} ds, continued off its convergence
    domain through the branch formulas."""
    zp = algebra.branch_Z(params, x, +1)
    den = kernel_plus(params, x, y)
    if den == 0.0:
        raise KernelZero(f"upper kernel vanishes at ({x}, {y})")
    gam = kernel_gamma(params, x, y, zp)
    num = -gam * phi(params, z0, x) - _exp_weight(params, z0, x, y, zp)
    return num / den


def phi_minus(params: ModelParams, z0: Point, x, z):
    """Lower half-plane companion of phi_plus."""
    ym = algebra.branch_Y(params, x, -1)
    den = kernel_minus(params, x, z)
    if den == 0.0:
        raise KernelZero(f"lower kernel vanishes at ({x}, {z})")
    gam = kernel_gamma(params, x, ym, z)
    num = -gam * phi(params, z0, x) - _exp_weight(params, z0, x, ym, z)
    return num / den


def residue_at_pole(params: ModelParams, z0: Point) -> float:
    """Residue of phi at its real pole x*.

    Equals -exp(x* a0 + b0 * branch(x*)) / G'(x*) where G is the interface
    symbol on the branch pair and the branch is Y- for b0 >= 0, Z+ for
    b0 < 0. Raises NoPole when the symbol has no zero in the binding strip.
    """
    info = algebra.find_pole(params)
    if not info.present:
        raise NoPole("interface symbol does not vanish on the binding interval")
    xs = info.x_star
    ym = algebra.branch_Y(params, xs, -1)
    zp = algebra.branch_Z(params, xs, +1)
    num = _exp_weight(params, z0, xs, ym, zp)
    return -num / algebra.pole_function_derivative(params, xs)


@dataclass(frozen=True)
class ExpansionAtBranch:
    """Square-root expansion of phi at the binding right branch point:

        phi(x) = value_at_xb + sqrt_coefficient * sqrt(x_bind - x) + o(...)

    ``side`` records which layer's branch point binds ("plus" for xp_max,
    "minus" for xm_max) and ``c_geom`` the geometric constant
    sqrt(det Sigma (x_bind - x_min)) / s22 of the binding layer.
    """

    value_at_xb: float
    sqrt_coefficient: float
    c_geom: float
    side: str


def expansion_at_xb(params: ModelParams, z0: Point) -> ExpansionAtBranch:
    """First-order expansion of phi at x_bind.

    The value at the branch point comes from direct evaluation: the merging
    radicand is exactly zero there, so the closed form already equals the
    one-sided limit. The square-root coefficient follows from expanding the
    merging branch (the non-merging one is smooth and contributes at the
    next order).
    """
    bp = algebra.branching_points(params)
    scale = max(abs(bp.xp_max), abs(bp.xm_max), 1.0)
    if abs(bp.xp_max - bp.xm_max) <= algebra.DEGENERACY_TOL * scale:
        raise DegenerateBranchPoints(
            "binding branch point is degenerate, expansion side undefined")
    xb = bp.x_bind
    q2 = params.q.q2
    gb = _real(algebra.pole_function(params, xb))
    if gb == 0.0:
        raise AtPole("transform pole sits exactly at the branch point")
    value = phi(params, z0, xb)
    b0 = z0.b

    if bp.xp_max < bp.xm_max:
        side = "plus"
        sp = params.sigma_plus
        c_geom = math.sqrt(sp.det() * (xb - bp.xp_min)) / sp.s22
        # equals the - branch at the merge point
        y_merge = _real(algebra.branch_Y(params, xb, +1))
        zp = _real(algebra.branch_Z(params, xb, +1))
        if b0 >= 0.0:
            coeff = b0 - (1.0 + q2) / (2.0 * gb)
            expo = math.exp(xb * z0.a + b0 * y_merge)
        else:
            coeff = -(1.0 + q2) / (2.0 * gb)
            expo = math.exp(xb * z0.a + b0 * zp)
    else:
        side = "minus"
        sm = params.sigma_minus
        c_geom = math.sqrt(sm.det() * (xb - bp.xm_min)) / sm.s22
        ym = _real(algebra.branch_Y(params, xb, -1))
        z_merge = _real(algebra.branch_Z(params, xb, +1))
        if b0 >= 0.0:
            coeff = (q2 - 1.0) / (2.0 * gb)
            expo = math.exp(xb * z0.a + b0 * ym)
        else:
            coeff = -b0 + (q2 - 1.0) / (2.0 * gb)
            expo = math.exp(xb * z0.a + b0 * z_merge)

    sqrt_coefficient = (c_geom / gb) * coeff * expo
    return ExpansionAtBranch(_real(value), sqrt_coefficient, c_geom, side)


def _real(v):
    return v.real if isinstance(v, complex) else v
