"""Command-line front end: one binary, twelve subcommands.

    validate        check a parameter set and echo its canonical JSON form
    classify        branch points, key angles, case tag, direction set, pole
    branch-points   the eight branch-point reals only
    saddle          saddle point of the matching ellipse for one angle
    phi             local-time transform on a grid of complex points (CSV)
    asymptote       directional asymptotics of the Green density (JSON)
    oracle          numerical inverse-transform value with error bound (JSON)
    simulate        Monte Carlo estimates from simulated paths (JSON)
    escape          closed-form escape probabilities in divergence form
    martin          Martin boundary structure report (JSON)
    sweep           asymptotics vs. oracle over an (r, alpha) grid (CSV)
    selftest        fast end-to-end identity checks

Parameters come from a single JSON file (--params) whose fields individual
flags may override, so a shell one-liner can perturb one matrix entry
without editing the manifest. Exit status is 0 on success, 2 for any input
problem (bad flags, malformed files, out-of-contract requests), and 3 when
a numerical target could not be met (tail bounds, unresolved paths). All
floating-point output carries 17 significant digits, enough to reproduce
the double exactly.
"""

from __future__ import annotations

import argparse
import enum
import json
import math
import sys
from dataclasses import dataclass

from . import algebra, asymptotics, harmonic, laplace, montecarlo, oracle
from .errors import InputError, NumericalError
from .model import ModelParams, Point, params_from_dict, reflect
from .montecarlo import SimConfig

_REQUIRED_KEYS = ("sigma_plus", "sigma_minus", "mu_plus", "mu_minus", "q")


# -- output formatting --------------------------------------------------------
#
# The stdlib json encoder hard-codes repr() for floats; the contract here is
# 17 significant digits everywhere, so a small renderer owns the format.

def _g17(x) -> str:
    return format(float(x), ".17g")


def _render(obj, level: int = 0) -> str:
    pad, inner = "  " * level, "  " * (level + 1)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, enum.Enum):
        return json.dumps(obj.value)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _g17(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = (f"{inner}{json.dumps(str(k))}: {_render(v, level + 1)}"
                for k, v in obj.items())
        return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in seq):
            return "[" + ", ".join(_render(v) for v in seq) + "]"
        rows = (inner + _render(v, level + 1) for v in seq)
        return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
    raise TypeError(f"cannot render {type(obj).__name__} as JSON")


def _emit(payload, out=None) -> None:
    text = _render(payload)
    if out is None:
        print(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


# -- argument parsing helpers -------------------------------------------------

def _floats(text: str, n: int | None, what: str) -> list[float]:
    try:
        vals = [float(tok) for tok in text.split(",")]
    except ValueError:
        raise InputError(f"{what}: expected comma-separated numbers, "
                         f"got {text!r}") from None
    if n is not None and len(vals) != n:
        raise InputError(f"{what}: expected {n} comma-separated numbers, "
                         f"got {len(vals)} in {text!r}")
    return vals


def _point(text: str, what: str) -> Point:
    a, b = _floats(text, 2, what)
    return Point(a, b)


def _grid(text: str, what: str) -> list[float]:
    """start,stop,count linear grid; count 1 collapses to [start]."""
    start, stop, count = _floats(text, 3, what)
    n = int(count)
    if n != count or n < 1:
        raise InputError(f"{what}: count must be a positive integer")
    if n == 1:
        return [start]
    step = (stop - start) / (n - 1)
    return [start + i * step for i in range(n)]


def _log_grid(text: str, what: str) -> list[float]:
    lo, hi, count = _floats(text, 3, what)
    n = int(count)
    if n != count or n < 1 or lo <= 0 or hi <= 0:
        raise InputError(f"{what}: needs positive endpoints and an integer "
                         "count")
    if n == 1:
        return [lo]
    ratio = (hi / lo) ** (1.0 / (n - 1))
    return [lo * ratio ** i for i in range(n)]


def _add_params_flags(sp: argparse.ArgumentParser) -> None:
    g = sp.add_argument_group("model parameters")
    g.add_argument("--params", metavar="FILE",
                   help="JSON parameter file (see `validate --help`)")
    g.add_argument("--sigma-plus", metavar="S11,S12,S22",
                   help="override upper-layer covariance")
    g.add_argument("--sigma-minus", metavar="S11,S12,S22",
                   help="override lower-layer covariance")
    g.add_argument("--mu-plus", metavar="M1,M2",
                   help="override upper-layer drift")
    g.add_argument("--mu-minus", metavar="M1,M2",
                   help="override lower-layer drift")
    g.add_argument("--q", metavar="Q1,Q2|divergence",
                   help="override skew vector ('divergence' substitutes q0)")


def _params_from_args(args) -> ModelParams:
    data: dict = {}
    if args.params:
        try:
            with open(args.params, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read {args.params}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.params}: not valid JSON ({exc})") \
                from None
        if not isinstance(data, dict):
            raise InputError(f"{args.params}: expected a JSON object")
    if args.sigma_plus:
        data["sigma_plus"] = _floats(args.sigma_plus, 3, "--sigma-plus")
    if args.sigma_minus:
        data["sigma_minus"] = _floats(args.sigma_minus, 3, "--sigma-minus")
    if args.mu_plus:
        data["mu_plus"] = _floats(args.mu_plus, 2, "--mu-plus")
    if args.mu_minus:
        data["mu_minus"] = _floats(args.mu_minus, 2, "--mu-minus")
    if args.q:
        token = args.q.strip()
        data["q"] = "divergence" if token == "divergence" \
            else _floats(token, 2, "--q")
    missing = [k for k in _REQUIRED_KEYS if k not in data]
    if missing:
        raise InputError("missing parameter fields: " + ", ".join(missing)
                         + " (supply --params or the matching flags)")
    return params_from_dict(data)


def _path_from_args(args) -> asymptotics.PathSpec | None:
    has_any = (getattr(args, "path", None) or args.log_tuned
               or args.limit is not None)
    if not has_any:
        return None
    c, p = (0.0, 0.5)
    if getattr(args, "path", None):
        c, p = _floats(args.path, 2, "--path")
    return asymptotics.PathSpec(c=c, p=p, log_tuned=args.log_tuned,
                                limit=args.limit)


# -- payload builders ---------------------------------------------------------

def _params_payload(p: ModelParams) -> dict:
    return {
        "sigma_plus": {"s11": p.sigma_plus.s11, "s12": p.sigma_plus.s12,
                       "s22": p.sigma_plus.s22},
        "sigma_minus": {"s11": p.sigma_minus.s11, "s12": p.sigma_minus.s12,
                        "s22": p.sigma_minus.s22},
        "mu_plus": [p.mu_plus.m1, p.mu_plus.m2],
        "mu_minus": [p.mu_minus.m1, p.mu_minus.m2],
        "q": [p.q.q1, p.q.q2],
        "divergence_form": p.is_divergence_form,
    }


def _branch_payload(p: ModelParams) -> dict:
    bp = algebra.branching_points(p)
    return {"xp_min": bp.xp_min, "xp_max": bp.xp_max,
            "xm_min": bp.xm_min, "xm_max": bp.xm_max,
            "y_min": bp.y_min, "y_max": bp.y_max,
            "x_tilde": bp.x_tilde, "x_bind": bp.x_bind}


def _pole_payload(p: ModelParams) -> dict:
    info = algebra.find_pole(p)
    if not info.present:
        return {"present": False}
    return {"present": True, "x_star": info.x_star,
            "alpha_plus": info.alpha_plus, "alpha_minus": info.alpha_minus}


def _classify_payload(p: ModelParams) -> dict:
    ang = algebra.key_angles(p)
    ds = algebra.direction_set(p)
    return {
        "branch_points": _branch_payload(p),
        "angles": {
            "alpha_b": ang.alpha_b,
            "alpha_tilde": ang.alpha_tilde,
            "alpha_mu_plus": ang.alpha_mu_plus,
            "alpha_mu_minus": ang.alpha_mu_minus,
            "alpha_b_on_upper": ang.alpha_b_on_upper,
            "alpha_tilde_on_upper": ang.alpha_tilde_on_upper,
            "degenerate_zero": ang.degenerate_zero,
            "degenerate_pi": ang.degenerate_pi,
        },
        "case": ds.case.value if ds.case is not None else None,
        "direction_set": [list(arc) for arc in ds.arcs],
        "pole": _pole_payload(p),
    }


# -- subcommands --------------------------------------------------------------

def _cmd_validate(args) -> int:
    _emit(_params_payload(_params_from_args(args)))
    return 0


def _cmd_branch_points(args) -> int:
    _emit(_branch_payload(_params_from_args(args)))
    return 0


def _cmd_classify(args) -> int:
    p = _params_from_args(args)
    payload = _classify_payload(p)
    if args.alpha is not None:
        cls = asymptotics.classify_direction(p, args.alpha,
                                             _path_from_args(args))
        payload["direction"] = {
            "alpha": args.alpha,
            "regime": cls.regime.value,
            "corner": cls.corner,
            "pole_which": cls.pole_which,
        }
    _emit(payload)
    return 0


def _cmd_saddle(args) -> int:
    p = _params_from_args(args)
    pt = algebra.saddle(p, args.alpha)
    _emit({"alpha": pt.alpha, "x": pt.x, "second": pt.second,
           "half": pt.half, "rate": algebra.saddle_rate(p, args.alpha)})
    return 0


def _cmd_phi(args) -> int:
    p = _params_from_args(args)
    z0 = _point(args.z0, "--z0")
    re_grid = _grid(args.re, "--re")
    im_grid = _grid(args.im, "--im") if args.im else [0.0]
    print("re_x,im_x,re_phi,im_phi")
    for im in im_grid:
        for re in re_grid:
            val = laplace.phi(p, z0, complex(re, im))
            print(",".join((_g17(re), _g17(im),
                            _g17(val.real), _g17(val.imag))))
    return 0


def _cmd_asymptote(args) -> int:
    p = _params_from_args(args)
    z0 = _point(args.z0, "--z0")
    regime = None
    if args.regime:
        try:
            regime = asymptotics.Regime(args.regime)
        except ValueError:
            tags = ", ".join(r.value for r in asymptotics.Regime)
            raise InputError(f"unknown regime {args.regime!r}; "
                             f"one of: {tags}") from None
    res = asymptotics.green_asymptotic(p, z0, args.r, args.alpha,
                                       path=_path_from_args(args),
                                       regime=regime)
    _emit({"regime": res.regime.value, "prefactor": res.prefactor,
           "rate": res.rate, "r_power": res.r_power, "value": res.value,
           "alpha_at_r": res.alpha_at_r, "detail": res.detail})
    return 0


def _cmd_oracle(args) -> int:
    p = _params_from_args(args)
    z0 = _point(args.z0, "--z0")
    target = _point(args.target, "--target")
    spec = oracle.QuadratureSpec(tol=args.tol)
    if target.b == 0.0:
        est = oracle.green_axis(p, z0, target.a, spec)
        route = "axis"
    else:
        est = oracle.green_contour(p, z0, target, spec,
                                   variant=args.variant)
        route = args.variant
    _emit({"value": est.value, "error": est.error,
           "z0": [z0.a, z0.b], "target": [target.a, target.b],
           "route": route})
    return 0


def _cmd_escape(args) -> int:
    p = _params_from_args(args)
    _emit({"b0": args.b0,
           "up": harmonic.escape_prob_up(p, args.b0),
           "down": harmonic.escape_prob_down(p, args.b0)})
    return 0


def _cmd_martin(args) -> int:
    _emit(harmonic.boundary_structure(_params_from_args(args)))
    return 0


def _load_boxes(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from None
    if (not isinstance(raw, list) or not raw
            or any(not isinstance(b, list) or len(b) != 4 for b in raw)):
        raise InputError(f"{path}: expected a JSON list of "
                         "[a_lo, a_hi, b_lo, b_hi] boxes")
    return [tuple(float(v) for v in b) for b in raw]


def _cmd_simulate(args) -> int:
    p = _params_from_args(args)
    z0 = _point(args.z0, "--z0")
    cfg = SimConfig(dt=args.dt, n_paths=args.paths, master_seed=args.seed,
                    horizon=args.horizon, band_epsilon=args.band,
                    scheme=args.scheme)
    if args.dump:
        with open(args.dump, "w", encoding="utf-8") as fh:
            fh.write("index,a_final,b_final,local_time,"
                     "last_axis_time,resolved\n")
            for s in montecarlo.simulate_paths(p, z0, cfg):
                last = "" if s.last_axis_time is None \
                    else _g17(s.last_axis_time)
                fh.write(",".join((str(s.index), _g17(s.a_final),
                                   _g17(s.b_final), _g17(s.local_time),
                                   last, "1" if s.resolved else "0"))
                         + "\n")
    payload = {"estimate": args.estimate, "paths": cfg.n_paths,
               "dt": cfg.dt, "seed": cfg.master_seed, "scheme": cfg.scheme}
    if args.estimate == "escape":
        est = montecarlo.escape_estimate(p, z0, cfg)
        payload.update(up=est.up, down=est.down, stderr=est.stderr,
                       unresolved_fraction=est.unresolved_fraction)
    elif args.estimate == "phi":
        if args.x is None:
            raise InputError("--estimate phi needs --x")
        est = montecarlo.phi_estimate(p, z0, args.x, cfg)
        payload.update(x=args.x, value=est.mean, stderr=est.stderr,
                       n_effective=est.n_effective)
    elif args.estimate == "green":
        if not args.boxes:
            raise InputError("--estimate green needs --boxes FILE")
        boxes = _load_boxes(args.boxes)
        ests = montecarlo.green_measure(p, z0, boxes, cfg)
        payload["boxes"] = [
            {"box": list(box), "value": e.mean, "stderr": e.stderr,
             "n_effective": e.n_effective}
            for box, e in zip(boxes, ests)]
    else:  # boundary
        if not args.interval:
            raise InputError("--estimate boundary needs --interval LO,HI")
        lo, hi = _floats(args.interval, 2, "--interval")
        est = montecarlo.boundary_measure(p, z0, (lo, hi), cfg)
        payload.update(interval=[lo, hi], value=est.mean,
                       stderr=est.stderr, n_effective=est.n_effective)
    _emit(payload)
    return 0


# -- sweep ---------------------------------------------------------------------

@dataclass(frozen=True)
class SweepSpec:
    """One comparison table: the asymptotic value over an (r, alpha) grid,
    optionally next to an independent estimate (contour oracle or Monte
    Carlo; one of the two, since the CSV has a single comparison column)."""

    r_grid: tuple
    alpha_grid: tuple
    z0: Point
    with_oracle: bool = False
    with_mc: bool = False
    out: str | None = None

    def __post_init__(self):
        if not self.r_grid or not self.alpha_grid:
            raise InputError("sweep grids must be non-empty")
        if any(r <= 0 for r in self.r_grid):
            raise InputError("sweep radii must be positive")
        if self.with_oracle and self.with_mc:
            raise InputError("--with-oracle and --with-mc fill the same "
                             "CSV column; pick one")


def _mc_point_value(p, z0, a, b, cfg, half_width) -> float:
    """Green density near (a, b) as box measure over box area."""
    h = min(half_width, abs(b) / 2)
    if h <= cfg.resolved_band():
        raise InputError(f"sweep target ({a}, {b}) too close to the axis "
                         "for a Monte Carlo box")
    box = (a - h, a + h, b - h, b + h)
    est = montecarlo.green_measure(p, z0, [box], cfg)[0]
    return est.mean / (4 * h * h)


def _sweep_rows(p, spec: SweepSpec, path, qspec, mc_cfg, mc_half):
    for r in spec.r_grid:
        for alpha in spec.alpha_grid:
            res = asymptotics.green_asymptotic(p, spec.z0, r, alpha,
                                               path=path)
            a = r * math.cos(res.alpha_at_r)
            b = r * math.sin(res.alpha_at_r)
            compare = None
            if spec.with_oracle:
                if abs(b) < 1e-13:
                    compare = oracle.green_axis(p, spec.z0, a, qspec).value
                else:
                    compare = oracle.green_contour(p, spec.z0, Point(a, b),
                                                   qspec).value
            elif spec.with_mc:
                compare = _mc_point_value(p, spec.z0, a, b, mc_cfg, mc_half)
            if compare is None:
                yield (_g17(r), _g17(alpha), res.regime.value,
                       _g17(res.value), "", "")
            else:
                ratio = compare / res.value if res.value != 0 else math.inf
                yield (_g17(r), _g17(alpha), res.regime.value,
                       _g17(res.value), _g17(compare), _g17(ratio))


def _cmd_sweep(args) -> int:
    p = _params_from_args(args)
    if bool(args.r) == bool(args.r_log):
        raise InputError("give exactly one of --r or --r-log")
    r_grid = (_floats(args.r, None, "--r") if args.r
              else _log_grid(args.r_log, "--r-log"))
    spec = SweepSpec(r_grid=tuple(r_grid),
                     alpha_grid=tuple(_floats(args.alpha, None, "--alpha")),
                     z0=_point(args.z0, "--z0"),
                     with_oracle=args.with_oracle, with_mc=args.with_mc,
                     out=args.out)
    qspec = oracle.QuadratureSpec(tol=args.tol)
    mc_cfg = SimConfig(dt=args.mc_dt, n_paths=args.mc_paths,
                       master_seed=args.mc_seed) if spec.with_mc else None
    lines = ["r,alpha,regime,asymptotic_value,oracle_value,ratio"]
    lines += [",".join(row) for row in
              _sweep_rows(p, spec, _path_from_args(args), qspec, mc_cfg,
                          args.mc_box)]
    text = "\n".join(lines)
    if spec.out:
        with open(spec.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


# -- selftest -------------------------------------------------------------------

def _selftest_checks():
    """Cheap identity checks over the fixed symmetric reference model
    (unit covariances, drifts (1, 1) and (1, -1), zero skew) plus its
    skewed variant with a transform pole."""
    sym = params_from_dict({
        "sigma_plus": [1, 0, 1], "sigma_minus": [1, 0, 1],
        "mu_plus": [1, 1], "mu_minus": [1, -1], "q": [0, 0]})
    pole = params_from_dict({
        "sigma_plus": [1, 0, 1], "sigma_minus": [1, 0, 1],
        "mu_plus": [1, 1], "mu_minus": [1, -1], "q": [4, 0]})

    def vieta():
        x = 0.1
        yp = algebra.branch_Y(sym, x, +1)
        ym = algebra.branch_Y(sym, x, -1)
        s = sym.sigma_plus
        m = sym.mu_plus
        sum_err = abs(yp + ym + 2 * (s.s12 * x + m.m2) / s.s22)
        prod_err = abs(yp * ym - (s.s11 * x * x + 2 * m.m1 * x) / s.s22)
        return max(sum_err, prod_err), 1e-12

    def x_roots_at_zero():
        roots = sorted((algebra.branch_X(sym, 0.0, -1),
                        algebra.branch_X(sym, 0.0, +1)))
        return max(abs(roots[0] + 2), abs(roots[1])), 1e-12

    def radicand_vanishes():
        bp = algebra.branching_points(sym)
        return max(abs(algebra.radicand_plus(sym, bp.xp_min)),
                   abs(algebra.radicand_plus(sym, bp.xp_max))), 1e-12

    def inverse_branch():
        x = 0.2
        y = algebra.branch_Y(sym, x, +1)
        return abs(algebra.branch_X(sym, y, +1) - x), 1e-10

    def y_branches_at_zero():
        want = -2 * sym.mu_plus.m2 / sym.sigma_plus.s22
        return max(abs(algebra.branch_Y(sym, 0.0, -1) - want),
                   abs(algebra.branch_Y(sym, 0.0, +1))), 1e-12

    def escape_partition():
        worst = 0.0
        for b0 in (-1.5, 0.0, 0.4, 2.0):
            up = harmonic.escape_prob_up(sym, b0)
            down = harmonic.escape_prob_down(sym, b0)
            worst = max(worst, abs(up + down - 1), max(0.0, -up),
                        max(0.0, up - 1))
        return worst, 1e-15

    def reflection_involution():
        back = reflect(reflect(pole))
        return max(abs(back.q.q1 - pole.q.q1),
                   abs(back.q.q2 - pole.q.q2),
                   abs(back.sigma_minus.s12 - pole.sigma_minus.s12)), 0.0

    def saddle_at_drift_angle():
        ang = algebra.key_angles(sym)
        pt = algebra.saddle(sym, ang.alpha_mu_plus)
        inside = algebra.in_M(sym, ang.alpha_mu_plus)
        return max(abs(pt.x), abs(pt.second), 0.0 if inside else 1.0), 1e-10

    def pole_is_zero():
        info = algebra.find_pole(pole)
        if not info.present:
            return 1.0, 1e-12
        return abs(algebra.pole_function(pole, info.x_star)), 1e-12

    return (("vieta identities for the Y branches", vieta),
            ("X branch roots at the origin", x_roots_at_zero),
            ("radicand vanishes at branch points", radicand_vanishes),
            ("X inverts Y on the first arc", inverse_branch),
            ("Y branch values at x = 0", y_branches_at_zero),
            ("escape probabilities sum to one", escape_partition),
            ("double reflection is the identity", reflection_involution),
            ("saddle vanishes at the drift angle", saddle_at_drift_angle),
            ("interface symbol vanishes at the pole", pole_is_zero))


def _cmd_selftest(args) -> int:
    failures = 0
    for label, check in _selftest_checks():
        try:
            err, tol = check()
        except Exception as exc:  # a crash is a failure, not an abort
            print(f"FAIL {label}: {type(exc).__name__}: {exc}")
            failures += 1
            continue
        if err <= tol:
            print(f"ok   {label} (err {err:.3g} <= {tol:.3g})")
        else:
            print(f"FAIL {label}: err {err:.3g} > tol {tol:.3g}")
            failures += 1
    total = len(_selftest_checks())
    print(f"selftest: {total - failures}/{total} checks passed")
    return 0 if failures == 0 else 3


# -- parser and entry point ------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="layered-green",
        description="Green-function asymptotics and simulation for a "
                    "two-layer planar diffusion with a skew interface.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text, params=True):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        if params:
            _add_params_flags(sp)
        sp.set_defaults(func=func)
        return sp

    add("validate", _cmd_validate,
        "Validate parameters and echo the canonical JSON form.")

    add("branch-points", _cmd_branch_points,
        "Print the branch points of the three algebraic branches.")

    sp = add("classify", _cmd_classify,
             "Print branch points, key angles, case tag, direction set "
             "and transform pole; --alpha adds the regime of one "
             "direction.")
    sp.add_argument("--alpha", type=float, metavar="A",
                    help="also classify the direction alpha (radians)")
    sp.add_argument("--path", metavar="C,P",
                    help="approach path alpha + C r^-P for the "
                         "classification")
    sp.add_argument("--log-tuned", action="store_true",
                    help="use the alpha + C sqrt(log r / r) path family")
    sp.add_argument("--limit", type=float, metavar="L",
                    help="explicit transition limit for blend regimes")

    sp = add("saddle", _cmd_saddle,
             "Saddle point of the matching ellipse in one direction.")
    sp.add_argument("--alpha", type=float, required=True, metavar="A",
                    help="direction in radians, inside (0,pi) or (pi,2pi)")

    sp = add("phi", _cmd_phi,
             "Local-time transform phi on a rectangular grid of complex "
             "points, as CSV (re_x, im_x, re_phi, im_phi).")
    sp.add_argument("--z0", required=True, metavar="A,B",
                    help="starting point of the diffusion")
    sp.add_argument("--re", required=True, metavar="START,STOP,COUNT",
                    help="real-part grid")
    sp.add_argument("--im", metavar="START,STOP,COUNT",
                    help="imaginary-part grid (default: the real axis)")

    sp = add("asymptote", _cmd_asymptote,
             "Directional asymptotics of the Green density at radius r.")
    sp.add_argument("--z0", required=True, metavar="A,B")
    sp.add_argument("--r", type=float, required=True, metavar="R",
                    help="radius (distance from the origin)")
    sp.add_argument("--alpha", type=float, required=True, metavar="A",
                    help="direction in radians")
    sp.add_argument("--path", metavar="C,P",
                    help="evaluate along alpha + C r^-P instead of fixed "
                         "alpha")
    sp.add_argument("--log-tuned", action="store_true",
                    help="use the alpha + C sqrt(log r / r) path family")
    sp.add_argument("--limit", type=float, metavar="L",
                    help="explicit transition limit for blend regimes")
    sp.add_argument("--regime", metavar="TAG",
                    help="force a regime tag instead of classifying")

    sp = add("oracle", _cmd_oracle,
             "Numerical value of the Green density by contour "
             "integration of the inverse transform.")
    sp.add_argument("--z0", required=True, metavar="A,B")
    sp.add_argument("--target", required=True, metavar="A,B",
                    help="evaluation point; b = 0 routes to the axis "
                         "inversion")
    sp.add_argument("--tol", type=float, default=1e-10, metavar="T",
                    help="absolute tolerance target (default 1e-10)")
    sp.add_argument("--variant", choices=("auto", "combined", "split"),
                    default="auto",
                    help="which integral representation to use")

    sp = add("simulate", _cmd_simulate,
             "Monte Carlo estimates from simulated diffusion paths.")
    sp.add_argument("--z0", required=True, metavar="A,B")
    sp.add_argument("--paths", type=int, required=True, metavar="N")
    sp.add_argument("--dt", type=float, required=True, metavar="H")
    sp.add_argument("--seed", type=int, required=True, metavar="S")
    sp.add_argument("--estimate", default="escape",
                    choices=("escape", "phi", "green", "boundary"))
    sp.add_argument("--boxes", metavar="FILE",
                    help="JSON list of [a_lo,a_hi,b_lo,b_hi] boxes "
                         "(--estimate green)")
    sp.add_argument("--x", type=float, metavar="V",
                    help="transform argument (--estimate phi)")
    sp.add_argument("--interval", metavar="LO,HI",
                    help="interface interval (--estimate boundary)")
    sp.add_argument("--horizon", type=float, metavar="T",
                    help="time horizon (default: drift-based)")
    sp.add_argument("--band", type=float, metavar="EPS",
                    help="local-time band half-width (default sqrt(dt))")
    sp.add_argument("--scheme", choices=("band", "skew"), default="band",
                    help="interface crossing scheme")
    sp.add_argument("--dump", metavar="FILE",
                    help="also write per-path summaries as CSV")

    sp = add("escape", _cmd_escape,
             "Closed-form probabilities of escaping upward/downward "
             "(divergence-form skew only).")
    sp.add_argument("--b0", type=float, required=True, metavar="V",
                    help="starting height")

    add("martin", _cmd_martin,
        "Martin boundary structure: minimal boundary, full boundary "
        "with spurs, identifications, pole data.")

    sp = add("sweep", _cmd_sweep,
             "CSV table of asymptotic values over an (r, alpha) grid, "
             "optionally with an independent comparison column.")
    sp.add_argument("--z0", required=True, metavar="A,B")
    sp.add_argument("--r", metavar="R1,R2,...", help="explicit radius grid")
    sp.add_argument("--r-log", metavar="LO,HI,COUNT",
                    help="log-spaced radius grid")
    sp.add_argument("--alpha", required=True, metavar="A1,A2,...",
                    help="direction grid (radians)")
    sp.add_argument("--path", metavar="C,P",
                    help="approach path applied to every grid direction")
    sp.add_argument("--log-tuned", action="store_true")
    sp.add_argument("--limit", type=float, metavar="L")
    sp.add_argument("--with-oracle", action="store_true",
                    help="fill oracle_value by contour integration")
    sp.add_argument("--with-mc", action="store_true",
                    help="fill oracle_value by a Monte Carlo box estimate")
    sp.add_argument("--tol", type=float, default=1e-10,
                    help="oracle tolerance (with --with-oracle)")
    sp.add_argument("--mc-paths", type=int, default=20000)
    sp.add_argument("--mc-dt", type=float, default=1e-3)
    sp.add_argument("--mc-seed", type=int, default=1)
    sp.add_argument("--mc-box", type=float, default=0.25,
                    help="half-width of the Monte Carlo comparison box")
    sp.add_argument("--out", metavar="FILE",
                    help="write the CSV here instead of stdout")

    add("selftest", _cmd_selftest,
        "Run the built-in identity checks and exit 0 if all pass.",
        params=False)

    return ap


def run(argv=None) -> int:
    """Parse argv and dispatch; returns the process exit code (0 ok,
    2 input error, 3 numerical failure)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
