"""Branches, branch points, saddle points, and the angular geometry.

The two kernel polynomials are quadrics in the plane. Solving each one for
its second variable produces a two-sheeted algebraic function (branch_Y for
the upper layer, branch_Z for the lower one, branch_X for the upper kernel
solved in its first variable). The real segment on which a radicand is
positive is bounded by two branch points; the binding pair
(x_tilde, x_bind) = (max of the left points, min of the right points) bounds
the strip where both layers' branches are simultaneously real.

For a direction angle alpha the saddle point is the point of the matching
ellipse {kernel = 0} furthest in direction (cos alpha, sin alpha). The map
alpha -> x(alpha) is strictly monotone on each open arc, which is what makes
the key angles (where x(alpha) hits a binding branch point) well defined.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import (AngleOnAxis, DegenerateBranchPoints, PoleAtBranchPoint)
from .model import (CovMatrix, Drift, ModelParams, dy_kernel_plus,
                    dz_kernel_minus, kernel_gamma)

TWO_PI = 2.0 * math.pi

# Relative tolerance below which two branch points are considered merged.
DEGENERACY_TOL = 1e-10


# -- radicands ----------------------------------------------------------------

def _radicand_coeffs(sig: CovMatrix, mu: Drift):
    """Coefficients (a, b, c) of the discriminant quadratic a x^2 + 2 b x + c
    obtained when solving (1/2)(s11 x^2 + 2 s12 x y + s22 y^2) + m1 x + m2 y = 0
    for y."""
    a = sig.s12 * sig.s12 - sig.s11 * sig.s22
    b = mu.m2 * sig.s12 - mu.m1 * sig.s22
    c = mu.m2 * mu.m2
    return a, b, c


def radicand_plus(params: ModelParams, x):
    a, b, c = _radicand_coeffs(params.sigma_plus, params.mu_plus)
    return (a * x + 2.0 * b) * x + c


def radicand_minus(params: ModelParams, x):
    a, b, c = _radicand_coeffs(params.sigma_minus, params.mu_minus)
    return (a * x + 2.0 * b) * x + c


def radicand_x(params: ModelParams, y):
    """Discriminant of the upper kernel solved in x instead of y."""
    sig, mu = params.sigma_plus, params.mu_plus
    a = sig.s12 * sig.s12 - sig.s11 * sig.s22
    b = mu.m1 * sig.s12 - mu.m2 * sig.s11
    c = mu.m1 * mu.m1
    return (a * y + 2.0 * b) * y + c


def _cut_sqrt(rad, arg, lo: float, hi: float):
    """Principal square root of a radicand value, with evaluation on the real
    cuts (arg real, rad < 0) taken as the limit from the upper half of the
    arg plane: -i sqrt(|rad|) on the right cut, +i sqrt(|rad|) on the left.

    The radicand is a downward parabola with roots lo < hi, so its preimage
    of the negative reals is exactly the two real rays, which keeps the
    principal branch continuous everywhere else.
    """
    if isinstance(arg, complex) and arg.imag != 0.0:
        return cmath.sqrt(rad)
    x = arg.real if isinstance(arg, complex) else arg
    r = rad.real if isinstance(rad, complex) else rad
    if r >= 0.0:
        return math.sqrt(r)
    return -1j * math.sqrt(-r) if x >= hi else 1j * math.sqrt(-r)


# -- branch points ------------------------------------------------------------

@dataclass(frozen=True)
class BranchPoints:
    """Real branch points of the three algebraic branches, plus the binding
    pair. x_tilde < 0 < x_bind always holds for admissible drifts."""

    xp_min: float
    xp_max: float
    xm_min: float
    xm_max: float
    y_min: float
    y_max: float
    x_tilde: float
    x_bind: float


def _quad_roots(sig: CovMatrix, b: float, c_lead: float):
    """Sorted real roots of -det(sig) x^2 + 2 b x + c_lead with c_lead > 0."""
    det = sig.det()
    disc = b * b + c_lead * det
    root = math.sqrt(disc)
    return (b - root) / det, (b + root) / det


def branching_points(params: ModelParams) -> BranchPoints:
    sp, sm = params.sigma_plus, params.sigma_minus
    up, dn = params.mu_plus, params.mu_minus
    xp_min, xp_max = _quad_roots(sp, up.m2 * sp.s12 - up.m1 * sp.s22,
                                 up.m2 * up.m2)
    xm_min, xm_max = _quad_roots(sm, dn.m2 * sm.s12 - dn.m1 * sm.s22,
                                 dn.m2 * dn.m2)
    y_min, y_max = _quad_roots(sp, up.m1 * sp.s12 - up.m2 * sp.s11,
                               up.m1 * up.m1)
    return BranchPoints(xp_min, xp_max, xm_min, xm_max, y_min, y_max,
                        max(xp_min, xm_min), min(xp_max, xm_max))


# -- branches -----------------------------------------------------------------

def branch_Y(params: ModelParams, x, sign: int = +1):
    """Solution y of kernel_plus(x, y) = 0; sign +1 picks the branch with
    the + square root (the larger one on the real interval)."""
    bp = branching_points(params)
    s, m = params.sigma_plus, params.mu_plus
    root = _cut_sqrt(radicand_plus(params, x), x, bp.xp_min, bp.xp_max)
    return (-s.s12 * x - m.m2 + sign * root) / s.s22


def branch_Z(params: ModelParams, x, sign: int = +1):
    """Solution z of kernel_minus(x, z) = 0."""
    bp = branching_points(params)
    s, m = params.sigma_minus, params.mu_minus
    root = _cut_sqrt(radicand_minus(params, x), x, bp.xm_min, bp.xm_max)
    return (-s.s12 * x - m.m2 + sign * root) / s.s22


def branch_X(params: ModelParams, y, sign: int = +1):
    """Solution x of kernel_plus(x, y) = 0 in the first variable."""
    bp = branching_points(params)
    s, m = params.sigma_plus, params.mu_plus
    root = _cut_sqrt(radicand_x(params, y), y, bp.y_min, bp.y_max)
    return (-s.s12 * y - m.m1 + sign * root) / s.s11


# -- saddle points --------------------------------------------------------------

@dataclass(frozen=True)
class SaddlePoint:
    """Extremal point of the matching ellipse in direction
    (cos alpha, sin alpha). ``second`` is the y coordinate on the upper arc
    (alpha in (0, pi)) and the z coordinate on the lower arc."""

    alpha: float
    x: float
    second: float
    half: str  # "plus" or "minus"


def _norm_angle(alpha: float) -> float:
    a = math.fmod(alpha, TWO_PI)
    return a + TWO_PI if a < 0.0 else a


def quad_form_normal(sig: CovMatrix, alpha: float) -> float:
    """s11 sin^2 - 2 s12 sin cos + s22 cos^2, the covariance form evaluated
    on the unit normal of the direction. Strictly positive."""
    sa, ca = math.sin(alpha), math.cos(alpha)
    return sig.s11 * sa * sa - 2.0 * sig.s12 * sa * ca + sig.s22 * ca * ca


def saddle(params: ModelParams, alpha: float) -> SaddlePoint:
    """Closed-form argmax of cos(alpha) x + sin(alpha) w over the ellipse
    {kernel = 0} of the matching half (upper for alpha in (0, pi), lower for
    alpha in (pi, 2 pi)).

    Lagrange conditions give v = Sigma^{-1}(d / lambda - mu) with
    lambda = sqrt(d' Sigma^{-1} d / mu' Sigma^{-1} mu) > 0; positivity of
    lambda selects the root aligned with the direction.
    """
    a = _norm_angle(alpha)
    if a < 1e-15 or abs(a - math.pi) < 1e-15 or a > TWO_PI - 1e-15:
        raise AngleOnAxis(f"saddle undefined on the axis, alpha={alpha}")
    if a < math.pi:
        sig, mu, half = params.sigma_plus, params.mu_plus, "plus"
    else:
        sig, mu, half = params.sigma_minus, params.mu_minus, "minus"
    det = sig.det()
    # inverse covariance entries
    w11, w12, w22 = sig.s22 / det, -sig.s12 / det, sig.s11 / det
    d1, d2 = math.cos(a), math.sin(a)
    dwd = w11 * d1 * d1 + 2.0 * w12 * d1 * d2 + w22 * d2 * d2
    mwm = w11 * mu.m1 * mu.m1 + 2.0 * w12 * mu.m1 * mu.m2 + w22 * mu.m2 * mu.m2
    lam = math.sqrt(dwd / mwm)
    vx = (w11 * d1 + w12 * d2) / lam - (w11 * mu.m1 + w12 * mu.m2)
    vy = (w12 * d1 + w22 * d2) / lam - (w12 * mu.m1 + w22 * mu.m2)
    return SaddlePoint(a, vx, vy, half)


def saddle_x(params: ModelParams, alpha: float) -> float:
    return saddle(params, alpha).x


def saddle_x_derivative(params: ModelParams, alpha: float) -> float:
    """d x(alpha) / d alpha. Negative on the upper arc (x decreasing),
    positive on the lower one; equals -dw_kernel(saddle) / Q(alpha) where
    dw_kernel is sqrt of the radicand up to sign."""
    pt = saddle(params, alpha)
    if pt.half == "plus":
        q = quad_form_normal(params.sigma_plus, pt.alpha)
        return -dy_kernel_plus(params, pt.x, pt.second) / q
    q = quad_form_normal(params.sigma_minus, pt.alpha)
    return -dz_kernel_minus(params, pt.x, pt.second) / q


def saddle_rate(params: ModelParams, alpha: float) -> float:
    """Exponential decay rate in direction alpha:
    cos(alpha) x(alpha) + sin(alpha) w(alpha)."""
    pt = saddle(params, alpha)
    return math.cos(pt.alpha) * pt.x + math.sin(pt.alpha) * pt.second


# -- key angles and cases -------------------------------------------------------

class CaseTag(str, enum.Enum):
    A = "A"  # xp_max > xm_max and xp_min < xm_min
    B = "B"  # xp_max < xm_max and xp_min < xm_min
    C = "C"  # xp_max < xm_max and xp_min > xm_min
    D = "D"  # xp_max > xm_max and xp_min > xm_min


@dataclass(frozen=True)
class AnglesKey:
    """Key angles of the direction decomposition.

    A corner is degenerate when the two layers' branch points coincide
    there; the matching spur angle collapses onto the axis and its
    on_upper flag is meaningless (None). ``case`` is None as soon as
    either corner is degenerate."""

    alpha_b: float
    alpha_tilde: float
    alpha_mu_plus: float
    alpha_mu_minus: float
    alpha_b_on_upper: bool | None
    alpha_tilde_on_upper: bool | None
    case: CaseTag | None
    degenerate_zero: bool = False
    degenerate_pi: bool = False


def _check_nondegenerate(bp: BranchPoints) -> None:
    scale = max(abs(bp.xp_min), abs(bp.xp_max), abs(bp.xm_min), abs(bp.xm_max))
    if abs(bp.xp_max - bp.xm_max) <= DEGENERACY_TOL * scale \
            or abs(bp.xp_min - bp.xm_min) <= DEGENERACY_TOL * scale:
        raise DegenerateBranchPoints(
            "branch points of the two layers coincide within tolerance; "
            "the angular decomposition is undefined")


def case_classify(params: ModelParams) -> CaseTag:
    bp = branching_points(params)
    _check_nondegenerate(bp)
    right = bp.xp_max > bp.xm_max
    left = bp.xp_min < bp.xm_min
    if right and left:
        return CaseTag.A
    if not right and left:
        return CaseTag.B
    if not right and not left:
        return CaseTag.C
    return CaseTag.D


def _solve_saddle_angle(params: ModelParams, target: float, lo: float,
                        hi: float) -> float:
    """Bisection for x(alpha) = target on (lo, hi), then two Newton steps.

    x(alpha) is strictly monotone on each arc, so plain bisection to 1e-13
    is safe; the Newton polish restores the last digits.
    """
    pad = 1e-12
    a, b = lo + pad, hi - pad
    fa = saddle_x(params, a) - target
    fb = saddle_x(params, b) - target
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    assert fa * fb < 0.0, "key-angle bracket failed"
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = saddle_x(params, mid) - target
        if fm == 0.0:
            a = b = mid
            break
        if (fm > 0.0) == (fa > 0.0):
            a, fa = mid, fm
        else:
            b = mid
        if b - a < 1e-13:
            break
    root = 0.5 * (a + b)
    for _ in range(2):
        f = saddle_x(params, root) - target
        df = saddle_x_derivative(params, root)
        step = f / df
        cand = root - step
        if lo < cand < hi:
            root = cand
    return root


def key_angles(params: ModelParams) -> AnglesKey:
    """Key angles of the direction decomposition.

    alpha_b solves x(alpha) = x_bind; it lies on the upper arc exactly when
    the upper branch point xp_max is the non-binding one. alpha_tilde solves
    x(alpha) = x_tilde with the mirrored rule. The drift angles are where the
    saddle point sits at the origin. Degenerate corners collapse the spur
    angle onto the axis instead of raising.
    """
    bp = branching_points(params)
    scale = max(abs(bp.xp_min), abs(bp.xp_max), abs(bp.xm_min),
                abs(bp.xm_max))
    deg_zero = abs(bp.xp_max - bp.xm_max) <= DEGENERACY_TOL * scale
    deg_pi = abs(bp.xp_min - bp.xm_min) <= DEGENERACY_TOL * scale
    case = None if (deg_zero or deg_pi) else case_classify(params)

    if deg_zero:
        alpha_b, alpha_b_upper = 0.0, None
    else:
        alpha_b_upper = bp.xp_max > bp.xm_max
        if alpha_b_upper:
            alpha_b = _solve_saddle_angle(params, bp.x_bind, 0.0, math.pi)
        else:
            alpha_b = _solve_saddle_angle(params, bp.x_bind, math.pi, TWO_PI)

    if deg_pi:
        alpha_tilde, alpha_tilde_upper = math.pi, None
    else:
        alpha_tilde_upper = bp.xp_min < bp.xm_min
        if alpha_tilde_upper:
            alpha_tilde = _solve_saddle_angle(params, bp.x_tilde, 0.0, math.pi)
        else:
            alpha_tilde = _solve_saddle_angle(params, bp.x_tilde,
                                              math.pi, TWO_PI)

    amp = math.atan2(params.mu_plus.m2, params.mu_plus.m1)
    amm = math.atan2(params.mu_minus.m2, params.mu_minus.m1) + TWO_PI
    return AnglesKey(alpha_b, alpha_tilde, amp, amm,
                     alpha_b_upper, alpha_tilde_upper, case,
                     deg_zero, deg_pi)


@dataclass(frozen=True)
class DirectionSet:
    """Admissible direction set as a union of closed angular arcs in
    [0, 2 pi], endpoints included (0 and 2 pi identified)."""

    arcs: tuple
    case: CaseTag | None
    alpha_b: float
    alpha_tilde: float


def direction_set(params: ModelParams) -> DirectionSet:
    ang = key_angles(params)
    ab, at = ang.alpha_b, ang.alpha_tilde
    if ang.case is CaseTag.A:
        arcs = ((ab, at), (math.pi, TWO_PI))
    elif ang.case is CaseTag.B:
        arcs = ((0.0, at), (math.pi, ab))
    elif ang.case is CaseTag.C:
        arcs = ((0.0, math.pi), (at, ab))
    elif ang.case is CaseTag.D:
        arcs = ((ab, math.pi), (at, TWO_PI))
    elif ang.degenerate_zero and ang.degenerate_pi:
        arcs = ((0.0, TWO_PI),)
    elif ang.degenerate_zero:
        # only the spur at x_tilde cuts the circle
        if ang.alpha_tilde_on_upper:
            arcs = ((0.0, at), (math.pi, TWO_PI))
        else:
            arcs = ((0.0, math.pi), (at, TWO_PI))
    else:
        # only the spur at x_bind cuts the circle
        if ang.alpha_b_on_upper:
            arcs = ((ab, TWO_PI),)
        else:
            arcs = ((0.0, ab),)
    return DirectionSet(arcs, ang.case, ab, at)


def in_M(params: ModelParams, alpha: float, tol: float = 1e-12) -> bool:
    """Pointwise membership x_tilde <= x(alpha) <= x_bind.

    Works for degenerate branch points too, where the arc decomposition
    itself is unavailable. Axis angles always belong to the closure.
    """
    a = _norm_angle(alpha)
    if a < 1e-15 or abs(a - math.pi) < 1e-15 or a > TWO_PI - 1e-15:
        return True
    bp = branching_points(params)
    pad = tol * max(1.0, abs(bp.x_tilde), abs(bp.x_bind))
    x = saddle_x(params, a)
    return bp.x_tilde - pad <= x <= bp.x_bind + pad


# -- pole of the interface symbol ------------------------------------------------

@dataclass(frozen=True)
class PoleInfo:
    present: bool
    x_star: float | None = None
    alpha_plus: float | None = None
    alpha_minus: float | None = None


def pole_function(params: ModelParams, x):
    """gamma evaluated on the pair of branches (Y-, Z+), the denominator of
    the local-time transform. Real and strictly negative at x = 0."""
    return kernel_gamma(params, x, branch_Y(params, x, -1),
                        branch_Z(params, x, +1))


def pole_function_derivative(params: ModelParams, x: float) -> float:
    """d/dx of pole_function on the open binding interval."""
    q = params.q
    yp = _branch_derivative(params.sigma_plus, params.mu_plus, x, -1)
    zp = _branch_derivative(params.sigma_minus, params.mu_minus, x, +1)
    return q.q1 + 0.5 * ((1.0 + q.q2) * yp + (q.q2 - 1.0) * zp)


def _branch_derivative(sig: CovMatrix, mu: Drift, x: float, sign: int) -> float:
    a = sig.s12 * sig.s12 - sig.s11 * sig.s22
    b = mu.m2 * sig.s12 - mu.m1 * sig.s22
    rad = (a * x + 2.0 * b) * x + mu.m2 * mu.m2
    droot = sign * (a * x + b) / math.sqrt(rad)
    return (-sig.s12 + droot) / sig.s22


def find_pole(params: ModelParams, scan_points: int = 10_001) -> PoleInfo:
    """Locate the unique zero of pole_function on the binding interval.

    The function is convex there and strictly negative at 0, so it has at
    most one zero on each side; admissible parameters produce at most one in
    total, which a uniform scan bounds before a bracketed bisection refines
    it. Zeros within 1e-8 of a binding branch point raise PoleAtBranchPoint.
    """
    bp = branching_points(params)
    lo, hi = bp.x_tilde, bp.x_bind
    assert pole_function(params, 0.0) < 0.0
    xs = [lo + (hi - lo) * i / (scan_points - 1) for i in range(scan_points)]
    # endpoint radicands can round to -0.0 and come back complex; the
    # symbol is real on the closed interval, so drop the spurious part
    vals = [complex(pole_function(params, x)).real for x in xs]
    crossings = [i for i in range(scan_points - 1)
                 if (vals[i] > 0.0) != (vals[i + 1] > 0.0)]
    if not crossings:
        return PoleInfo(False)
    assert len(crossings) == 1, "pole function changed sign more than once"
    i = crossings[0]
    a, b = xs[i], xs[i + 1]
    fa = vals[i]
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = pole_function(params, mid)
        if fm == 0.0:
            a = b = mid
            break
        if (fm > 0.0) == (fa > 0.0):
            a, fa = mid, fm
        else:
            b = mid
        if b - a < 1e-15 * max(1.0, abs(a)):
            break
    x_star = 0.5 * (a + b)
    for _ in range(2):
        f = pole_function(params, x_star)
        df = pole_function_derivative(params, x_star)
        cand = x_star - f / df
        if lo < cand < hi:
            x_star = cand
    width = hi - lo
    if min(abs(x_star - lo), abs(hi - x_star)) < 1e-8 * width:
        raise PoleAtBranchPoint(f"transform pole {x_star} sits at a branch point")
    alpha_p = _solve_saddle_angle(params, x_star, 0.0, math.pi)
    alpha_m = _solve_saddle_angle(params, x_star, math.pi, TWO_PI)
    return PoleInfo(True, x_star, alpha_p, alpha_m)
