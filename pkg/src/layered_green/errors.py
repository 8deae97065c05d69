"""Exception types shared across the package.

Input problems (bad matrices, out-of-range skew, malformed angles) raise
subclasses of InputError; failures of a numerical target (tail bound not
achievable, unresolved Monte Carlo scale) raise subclasses of
NumericalError. The CLI maps the two families to exit codes 2 and 3.
"""


class LayeredGreenError(Exception):
    """Base class for everything raised deliberately by this package."""


class InputError(LayeredGreenError):
    """Invalid parameters, points, or requests."""


class NumericalError(LayeredGreenError):
    """A computation could not meet its accuracy or resolution target."""


# -- model ------------------------------------------------------------------

class NonSPDCovariance(InputError):
    """A covariance matrix is not symmetric positive definite."""


class DriftSignViolation(InputError):
    """Drift signs violate the standing assumptions (mu1 > 0 on both
    sides, mu2 > 0 above and mu2 < 0 below)."""


class SkewOutOfRange(InputError):
    """q2 outside the open interval (-1, 1)."""


# -- algebra ----------------------------------------------------------------

class DegenerateBranchPoints(InputError):
    """Branch points of the two half-plane kernels coincide within
    tolerance, so the angular decomposition is not defined."""


class AngleOnAxis(InputError):
    """An operation needs an angle strictly inside (0, pi) or (pi, 2pi)."""


class PoleAtBranchPoint(NumericalError):
    """The real zero of the interface symbol sits at a branch point,
    where the residue machinery breaks down."""


# -- laplace ----------------------------------------------------------------

class OnCut(InputError):
    """Evaluation requested on a branch cut where the quantity is
    discontinuous and no one-sided convention applies."""


class AtPole(InputError):
    """Evaluation requested at the pole of the transform."""


class KernelZero(InputError):
    """A kernel denominator vanishes at the requested point."""


class NoPole(InputError):
    """A pole-specific quantity was requested but the transform has no
    real pole in the admissible interval."""


class PolePresent(InputError):
    """An operation assumes the transform is pole free."""


# -- asymptotics ------------------------------------------------------------

class OutsideM(InputError):
    """The requested angle is not in the admissible direction set."""


class RegimeMismatch(InputError):
    """The requested regime does not apply at the given direction."""


class AngleOutOfSector(InputError):
    """An angle falls outside the sector an expansion is valid in."""


class UnresolvedScale(InputError):
    """A boundary-regime classification needs a path descriptor
    (or an explicit limit) that was not supplied."""


# -- oracle -----------------------------------------------------------------

class OnAxisTarget(InputError):
    """The contour oracle needs a target off the interface; use the
    axis inversion instead."""


class TailBoundFailure(NumericalError):
    """No truncation point satisfied the tail bound at the requested
    tolerance."""


class PoleOnContourSide(InputError):
    """The requested inversion abscissa lies on the wrong side of the
    transform's pole."""


class Unsupported(InputError):
    """Parameter and target combination outside every implemented
    integral representation."""


# -- montecarlo -------------------------------------------------------------

class StepTooLarge(InputError):
    """Time step too coarse for the requested band width."""


class NegativeWeight(InputError):
    """An estimator received a negative weight or measure."""


class BoxTouchesAxis(InputError):
    """Occupation boxes must stay strictly inside one half-plane."""


class HorizonTooShort(NumericalError):
    """Too many paths were still unresolved near the end of the horizon."""
