"""A walking tour of one layered model.

The object of study is a planar diffusion with two regimes glued along
the horizontal axis: covariance and drift switch when the vertical
coordinate changes sign, and a skew weight can favor excursions to one
side. This script builds the standard asymmetric reference (unit
covariance above, diag(1, 4) below, drifts pushing right and away from
the axis, divergence-form skew) and prints everything the library can
tell you about it before any integral is computed: kernels, branch
points, the saddle map, the admissible direction set, and the regime
classifier that decides which asymptotic formula applies where.

Runs in about a second. Start here.
"""

import json
import math

from layered_green import validate
from layered_green.model import Point, kernel_plus, kernel_minus
from layered_green.algebra import (branching_points, branch_Y, branch_Z,
                                   direction_set, key_angles, saddle)
from layered_green.asymptotics import classify_direction, Regime
from layered_green.laplace import phi
from layered_green.harmonic import boundary_structure

params = validate(sigma_plus=(1, 0, 1), sigma_minus=(1, 0, 4),
                  mu_plus=(1, 1), mu_minus=(1, -1), q="divergence")
print("model:", params)
print()

# The kernels are the two quadratic forms whose zero sets (ellipses
# through the origin) encode each half plane in the Laplace domain.
# Their one-variable roots are the branch functions.
x = 0.1
print(f"kernel_plus(0.1, 0)  = {kernel_plus(params, x, 0.0):.6f}")
print(f"Y+-(0.1) = {branch_Y(params, x, +1):.6f}, "
      f"{branch_Y(params, x, -1):.6f}")
print(f"Z+-(0.1) = {branch_Z(params, x, +1):.6f}, "
      f"{branch_Z(params, x, -1):.6f}")
print(f"kernel at the root: "
      f"{kernel_plus(params, x, branch_Y(params, x, +1)):.2e}")
print()

# Branch points: where each pair of roots merges. The innermost pair
# (x_tilde, x_bind) brackets the strip where the axis transform is
# finite, and x_bind sets the axis decay rate.
bp = branching_points(params)
print(f"branch points: xp in [{bp.xp_min:.6f}, {bp.xp_max:.6f}], "
      f"xm in [{bp.xm_min:.6f}, {bp.xm_max:.6f}]")
print(f"binding pair:  x_tilde = {bp.x_tilde:.6f}, "
      f"x_bind = {bp.x_bind:.6f}")
print()

# The transform itself, evaluated inside the strip.
print(f"phi(0) from (0.3, 0.7)    = {phi(params, Point(0.3, 0.7), 0.0):.6f}")
print(f"phi(-1.5) from (0.3, 0.7) = "
      f"{phi(params, Point(0.3, 0.7), -1.5):.6f}")
print()

# Every direction alpha picks the ellipse point maximizing
# cos(alpha) x + sin(alpha) y; that point's linear form is the decay
# rate of the Green density along alpha. Both ellipses pass through the
# origin, so the drift direction pi/4 has saddle (0, 0) and rate zero:
# along the law-of-large-numbers ray the density does not decay
# exponentially at all.
for alpha in (0.3, math.pi / 4, 2.0, 4.5):
    pt = saddle(params, alpha)
    rate = math.cos(alpha) * pt.x + math.sin(alpha) * pt.second + 0.0
    print(f"saddle({alpha:4.2f}): half={pt.half:5s} "
          f"x={pt.x:+.4f} second={pt.second:+.4f} rate={rate:.4f}")
print()

# Directions whose saddle abscissa stays between the binding branch
# points form the admissible set; its endpoints are the branch angles.
ds = direction_set(params)
ang = key_angles(params)
print(f"case {ds.case.value}; direction set arcs:")
for lo, hi in ds.arcs:
    print(f"  [{lo:.6f}, {hi:.6f}]")
print(f"branch angles: alpha_b = {ang.alpha_b:.6f}, "
      f"alpha_tilde = {ang.alpha_tilde:.6f}")
print()

# The classifier names the asymptotic regime of each direction. Interior
# directions get the moving-saddle formula; outside the set the saddle
# freezes at the corner; the branch angles themselves split into
# sub-regimes depending on how the direction is approached.
for alpha in (1.2, 0.3, ang.alpha_b):
    cls = classify_direction(params, alpha)
    print(f"alpha = {alpha:.4f}: {cls.regime.name}")
assert classify_direction(params, 1.2).regime is Regime.InteriorM
print()

# The same geometry, packaged as the boundary report the CLI's `martin`
# subcommand emits.
print("boundary structure:")
print(json.dumps(boundary_structure(params), indent=2))
