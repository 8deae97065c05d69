"""Green-function asymptotics for a two-layer planar diffusion with a
skew interface.

The public surface covers model validation, the kernel algebra (branch
curves, saddle points, direction set, transform pole), the Laplace-transform
pair, directional asymptotics of the Green density, the harmonic functions
of the boundary theory, slow-but-sure numerical transform inversion, and a
Monte Carlo simulator of the process itself.
"""

from .algebra import (AnglesKey, BranchPoints, CaseTag, DirectionSet,
                      PoleInfo, SaddlePoint, branch_X, branch_Y, branch_Z,
                      branching_points, case_classify, direction_set,
                      find_pole, in_M, key_angles, pole_function,
                      pole_function_derivative, radicand_minus,
                      radicand_plus, saddle, saddle_rate, saddle_x,
                      saddle_x_derivative)
from .asymptotics import (AsymptoticResult, Classification, PathSpec, Regime,
                          classify_direction, green_asymptotic)
from .errors import InputError, LayeredGreenError, NumericalError
from .harmonic import (HarmonicFn, boundary_structure, escape_prob_down,
                       escape_prob_up, harmonic_function, martin_kernel,
                       pde_residual, represent)
from .laplace import (ExpansionAtBranch, expansion_at_xb, phi, phi_minus,
                      phi_plus, residue_at_pole)
from .model import (CovMatrix, Drift, ModelParams, Point, SkewVector,
                    divergence_skew, kernel_gamma, kernel_minus, kernel_plus,
                    params_from_dict, params_from_json, reflect,
                    reflect_point, validate)
from .montecarlo import (EscapeEstimate, PathSummary, SimConfig,
                         boundary_measure, escape_estimate, green_measure,
                         phi_estimate, simulate_paths)
from .oracle import (LemmaCheck, QuadratureSpec, green_axis, green_contour,
                     lemma_integral_check)

# The two estimate records (oracle.GreenEstimate, montecarlo.GreenEstimate)
# keep their module-qualified names; re-exporting either here would shadow
# the other.
__all__ = [
    "AnglesKey", "AsymptoticResult", "BranchPoints", "CaseTag",
    "Classification", "CovMatrix", "DirectionSet", "Drift",
    "EscapeEstimate", "ExpansionAtBranch", "HarmonicFn", "InputError",
    "LayeredGreenError", "LemmaCheck", "ModelParams", "NumericalError",
    "PathSpec", "PathSummary", "Point", "PoleInfo", "QuadratureSpec",
    "Regime", "SaddlePoint", "SimConfig", "SkewVector", "boundary_measure",
    "boundary_structure", "branch_X", "branch_Y", "branch_Z",
    "branching_points", "case_classify", "classify_direction",
    "direction_set", "divergence_skew", "escape_estimate",
    "escape_prob_down", "escape_prob_up", "expansion_at_xb", "find_pole",
    "green_asymptotic", "green_axis", "green_contour", "green_measure",
    "harmonic_function", "in_M", "kernel_gamma", "kernel_minus",
    "kernel_plus", "key_angles", "lemma_integral_check", "martin_kernel",
    "params_from_dict", "params_from_json", "pde_residual", "phi",
    "phi_estimate", "phi_minus", "phi_plus", "pole_function",
    "pole_function_derivative", "radicand_minus", "radicand_plus",
    "reflect", "reflect_point", "represent", "residue_at_pole", "saddle",
    "saddle_rate", "saddle_x", "saddle_x_derivative", "simulate_paths",
    "validate",
]

__version__ = "0.1.0"
