"""Model parameters for a planar diffusion with two homogeneous layers.

The process lives on the plane, with one covariance/drift pair acting while
the second coordinate is positive and another while it is negative. On the
horizontal axis the two layers are glued through a symmetric local time term
with skew vector q = (q1, q2): q1 pushes along the axis, q2 transmits
vertically. The generator is self-adjoint (divergence form) exactly when q
equals the special vector computed by :func:`divergence_skew`.

Everything downstream consumes the frozen :class:`ModelParams` bundle built
by :func:`validate`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import DriftSignViolation, NonSPDCovariance, SkewOutOfRange


@dataclass(frozen=True)
class CovMatrix:
    """Symmetric 2x2 covariance block, stored by entries."""

    s11: float
    s12: float
    s22: float

    def det(self) -> float:
        return self.s11 * self.s22 - self.s12 * self.s12

    def as_matrix(self):
        return [[self.s11, self.s12], [self.s12, self.s22]]


@dataclass(frozen=True)
class Drift:
    m1: float
    m2: float


@dataclass(frozen=True)
class SkewVector:
    q1: float
    q2: float


@dataclass(frozen=True)
class Point:
    a: float
    b: float


@dataclass(frozen=True)
class ModelParams:
    """Validated parameter bundle. Instances are immutable; treat them as
    values and derive new ones through :func:`validate` or :func:`reflect`."""

    sigma_plus: CovMatrix
    sigma_minus: CovMatrix
    mu_plus: Drift
    mu_minus: Drift
    q: SkewVector
    is_divergence_form: bool

    def to_dict(self) -> dict:
        return {
            "sigma_plus": {"s11": self.sigma_plus.s11, "s12": self.sigma_plus.s12,
                           "s22": self.sigma_plus.s22},
            "sigma_minus": {"s11": self.sigma_minus.s11, "s12": self.sigma_minus.s12,
                            "s22": self.sigma_minus.s22},
            "mu_plus": [self.mu_plus.m1, self.mu_plus.m2],
            "mu_minus": [self.mu_minus.m1, self.mu_minus.m2],
            "q": [self.q.q1, self.q.q2],
            "is_divergence_form": self.is_divergence_form,
        }


def divergence_skew(sigma_plus: CovMatrix, sigma_minus: CovMatrix) -> SkewVector:
    """Skew vector that makes the glued generator self-adjoint.

    q1 = (s12+ - s12-) / (s22+ + s22-), q2 = (s22+ - s22-) / (s22+ + s22-).
    """
    s = sigma_plus.s22 + sigma_minus.s22
    return SkewVector((sigma_plus.s12 - sigma_minus.s12) / s,
                      (sigma_plus.s22 - sigma_minus.s22) / s)


def _check_spd(sig: CovMatrix, name: str) -> None:
    if not (sig.s11 > 0.0 and sig.s22 > 0.0 and sig.det() > 0.0):
        raise NonSPDCovariance(
            f"{name} must be symmetric positive definite, got "
            f"s11={sig.s11}, s12={sig.s12}, s22={sig.s22}")


def _close(a: float, b: float, tol: float = 1e-12) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def validate(sigma_plus, sigma_minus, mu_plus, mu_minus, q) -> ModelParams:
    """Build a validated ModelParams.

    Accepts CovMatrix/Drift/SkewVector instances or plain sequences/dicts.
    ``q`` may be the string ``"divergence"`` to request the self-adjoint
    skew vector explicitly.

    Raises NonSPDCovariance, DriftSignViolation, or SkewOutOfRange.
    """
    sp = _as_cov(sigma_plus)
    sm = _as_cov(sigma_minus)
    _check_spd(sp, "sigma_plus")
    _check_spd(sm, "sigma_minus")

    up = _as_drift(mu_plus)
    dn = _as_drift(mu_minus)
    if not (up.m1 > 0.0 and up.m2 > 0.0):
        raise DriftSignViolation(f"mu_plus must have both components > 0, got {up}")
    if not (dn.m1 > 0.0 and dn.m2 < 0.0):
        raise DriftSignViolation(f"mu_minus must have m1 > 0 and m2 < 0, got {dn}")

    q0 = divergence_skew(sp, sm)
    if isinstance(q, str):
        if q != "divergence":
            raise SkewOutOfRange(f"unknown symbolic skew {q!r}")
        qq = q0
    else:
        qq = _as_skew(q)
    if not (-1.0 < qq.q2 < 1.0):
        raise SkewOutOfRange(f"q2 must lie in (-1, 1), got {qq.q2}")

    is_div = _close(qq.q1, q0.q1) and _close(qq.q2, q0.q2)
    return ModelParams(sp, sm, up, dn, qq, is_div)


def _as_cov(v) -> CovMatrix:
    if isinstance(v, CovMatrix):
        return v
    if isinstance(v, dict):
        return CovMatrix(float(v["s11"]), float(v["s12"]), float(v["s22"]))
    s11, s12, s22 = v
    return CovMatrix(float(s11), float(s12), float(s22))


def _as_drift(v) -> Drift:
    if isinstance(v, Drift):
        return v
    m1, m2 = v
    return Drift(float(m1), float(m2))


def _as_skew(v) -> SkewVector:
    if isinstance(v, SkewVector):
        return v
    q1, q2 = v
    return SkewVector(float(q1), float(q2))


def params_from_dict(d: dict) -> ModelParams:
    return validate(d["sigma_plus"], d["sigma_minus"], d["mu_plus"],
                    d["mu_minus"], d["q"])


def params_from_json(text: str) -> ModelParams:
    return params_from_dict(json.loads(text))


# -- kernels ------------------------------------------------------------------
#
# gamma_plus and gamma_minus are the characteristic polynomials of the two
# layers (one half of the quadratic form plus the drift part); gamma is the
# affine interface symbol carrying the skew vector. They accept real or
# complex arguments.

def kernel_plus(params: ModelParams, x, y):
    s, m = params.sigma_plus, params.mu_plus
    return 0.5 * (s.s11 * x * x + 2.0 * s.s12 * x * y + s.s22 * y * y) \
        + m.m1 * x + m.m2 * y


def kernel_minus(params: ModelParams, x, z):
    s, m = params.sigma_minus, params.mu_minus
    return 0.5 * (s.s11 * x * x + 2.0 * s.s12 * x * z + s.s22 * z * z) \
        + m.m1 * x + m.m2 * z


def kernel_gamma(params: ModelParams, x, y, z):
    q = params.q
    return q.q1 * x + 0.5 * ((1.0 + q.q2) * y + (q.q2 - 1.0) * z)


def dy_kernel_plus(params: ModelParams, x, y):
    """Partial derivative of kernel_plus in its second argument."""
    s, m = params.sigma_plus, params.mu_plus
    return s.s12 * x + s.s22 * y + m.m2


def dz_kernel_minus(params: ModelParams, x, z):
    s, m = params.sigma_minus, params.mu_minus
    return s.s12 * x + s.s22 * z + m.m2


def dx_kernel_plus(params: ModelParams, x, y):
    s, m = params.sigma_plus, params.mu_plus
    return s.s11 * x + s.s12 * y + m.m1


# -- reflection ---------------------------------------------------------------

def reflect(params: ModelParams) -> ModelParams:
    """Parameters of the vertically mirrored process (b -> -b).

    Swaps the two layers, negates the off-diagonal covariances and the
    vertical drifts, and negates q2. The mirrored model satisfies the same
    standing assumptions, and mirrored quantities match:
    g_hat from (a0, -b0) evaluated at (a, -b) equals g from (a0, b0) at (a, b).
    """
    sp, sm = params.sigma_plus, params.sigma_minus
    new_plus = CovMatrix(sm.s11, -sm.s12, sm.s22)
    new_minus = CovMatrix(sp.s11, -sp.s12, sp.s22)
    new_mu_plus = Drift(params.mu_minus.m1, -params.mu_minus.m2)
    new_mu_minus = Drift(params.mu_plus.m1, -params.mu_plus.m2)
    new_q = SkewVector(params.q.q1, -params.q.q2)
    return validate(new_plus, new_minus, new_mu_plus, new_mu_minus, new_q)


def reflect_point(z: Point) -> Point:
    return Point(z.a, -z.b)
