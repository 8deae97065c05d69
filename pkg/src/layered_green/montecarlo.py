"""Path simulation of the two-layer skew diffusion, second oracle.

The SDE is discretized with the lower-triangular noise factor, so the
vertical coordinate B is autonomous: dB = sqrt(s22) dW2 + mu2 dt + q2 dL,
and A receives the correlated horizontal part plus q1 dL. The symmetric
local time L is accumulated through the band scheme, dL =
s22(B) dt / (2 band_epsilon) while |B| <= band_epsilon, which discretizes
its defining occupation limit and is agnostic to the skew vector.

An alternative "skew" stepping scheme replaces the Euler update of B near
the interface (within three step-widths in the scaled coordinate) with an
exact skew Brownian displacement: the scale map y = B / sqrt(s22(B))
turns B into a unit-diffusion skew Brownian motion whose one-step law is
sampled exactly by drawing the magnitude |y + sqrt(dt) xi| and flipping
its sign with the reflection weight. The vertical drift over that step is
frozen at its pre-step value and the horizontal coupling still uses the
same Gaussian draw, so only the interface crossing itself is exact; the
scheme exists for bias comparison with the band scheme, not as an exact
simulator.

Reproducibility contract: every path owns a counter-based RNG stream keyed
by (master_seed, path_index), and the reduction over paths is performed in
a fixed block order with compensated summation, so estimates are
bit-identical for a given configuration regardless of the worker count
(set through the LAYERED_GREEN_THREADS environment variable).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import algebra
from .errors import (BoxTouchesAxis, HorizonTooShort, InputError,
                     StepTooLarge)
from .model import ModelParams, Point

_BLOCK = 1024           # paths per vectorized block (fixed: part of the
                        # deterministic reduction order)
_RESOLVE_FRACTION = 0.8  # escape counts need no axis visit after this
_NEAR_WIDTHS = 3.0       # skew-step trigger, in units of sqrt(dt)


@dataclass(frozen=True)
class SimConfig:
    """Simulation controls. horizon None picks 10 / min(mu2+, |mu2-|),
    the scale on which B has drifted well clear of the axis. band_epsilon
    None picks sqrt(dt); smaller values lose the bias-control heuristic
    and are rejected."""

    dt: float
    n_paths: int
    master_seed: int
    horizon: float | None = None
    band_epsilon: float | None = None
    scheme: str = "band"

    def __post_init__(self):
        if self.dt <= 0.0:
            raise InputError("dt must be positive")
        if self.n_paths <= 0:
            raise InputError("n_paths must be positive")
        if self.scheme not in ("band", "skew"):
            raise InputError(f"unknown scheme {self.scheme!r}")
        eps = self.resolved_band()
        if eps < math.sqrt(self.dt) * (1.0 - 1e-12):
            raise StepTooLarge(
                f"band_epsilon {eps} below sqrt(dt) = {math.sqrt(self.dt)}")

    def resolved_band(self) -> float:
        return self.band_epsilon if self.band_epsilon is not None \
            else math.sqrt(self.dt)

    def resolved_horizon(self, params: ModelParams) -> float:
        if self.horizon is not None:
            return self.horizon
        return 10.0 / min(params.mu_plus.m2, -params.mu_minus.m2)


@dataclass(frozen=True)
class GreenEstimate:
    mean: float
    stderr: float
    n_effective: int


@dataclass(frozen=True)
class EscapeEstimate:
    """Escape side classified by the sign of B at the horizon, counted
    only for paths with no axis visit in the final stretch; the rest are
    unresolved, so up + down = 1 - unresolved_fraction exactly."""

    up: float
    down: float
    stderr: float
    unresolved_fraction: float


@dataclass(frozen=True)
class PathSummary:
    index: int
    a_final: float
    b_final: float
    local_time: float
    last_axis_time: float | None
    resolved: bool


def _thread_count() -> int:
    raw = os.environ.get("LAYERED_GREEN_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"LAYERED_GREEN_THREADS={raw!r} is not an integer")
    if n > 0:
        return n
    return min(8, os.cpu_count() or 1)


# ---------------------------------------------------------------------------
# block engine
# ---------------------------------------------------------------------------

class _Request:
    """What a single simulation pass must accumulate."""

    def __init__(self, boxes=(), interval=None, phi_x=None,
                 summaries=False):
        self.boxes = list(boxes)
        self.interval = interval
        self.phi_x = phi_x
        self.summaries = summaries


class _Model:
    """Per-side constants of the triangular stepping, precomputed."""

    def __init__(self, params: ModelParams):
        sp, sm = params.sigma_plus, params.sigma_minus
        self.c11 = (math.sqrt(sp.s11 - sp.s12 ** 2 / sp.s22),
                    math.sqrt(sm.s11 - sm.s12 ** 2 / sm.s22))
        self.c12 = (sp.s12 / math.sqrt(sp.s22), sm.s12 / math.sqrt(sm.s22))
        self.sig = (math.sqrt(sp.s22), math.sqrt(sm.s22))
        self.s22 = (sp.s22, sm.s22)
        self.mu1 = (params.mu_plus.m1, params.mu_minus.m1)
        self.mu2 = (params.mu_plus.m2, params.mu_minus.m2)
        self.q1 = params.q.q1
        self.q2 = params.q.q2
        # skew parameter of the scale-mapped unit-diffusion motion
        wp = (1.0 + self.q2) / self.sig[0]
        wm = (1.0 - self.q2) / self.sig[1]
        self.beta = (wp - wm) / (wp + wm)

    def pick(self, pair, plus):
        return np.where(plus, pair[0], pair[1])


def _block_noise(master_seed: int, start: int, count: int, n_steps: int,
                 skew: bool) -> np.ndarray:
    cols = 3 if skew else 2
    noise = np.empty((n_steps, count, cols))
    for i in range(count):
        gen = np.random.Generator(np.random.Philox(
            key=np.array([master_seed, start + i], dtype=np.uint64)))
        noise[:, i, :2] = gen.standard_normal((n_steps, 2))
        if skew:
            noise[:, i, 2] = gen.random(n_steps)
    return noise


def _run_block(params, md: _Model, z0: Point, cfg: SimConfig, req: _Request,
               start: int, count: int, n_steps: int):
    dt = cfg.dt
    sqdt = math.sqrt(dt)
    band = cfg.resolved_band()
    skew = cfg.scheme == "skew"
    noise = _block_noise(cfg.master_seed, start, count, n_steps, skew)

    A = np.full(count, float(z0.a))
    B = np.full(count, float(z0.b))
    L = np.zeros(count)
    occ = np.zeros((count, len(req.boxes)))
    bnd = np.zeros(count)
    phv = np.zeros(count)
    last_axis = np.full(count, -1, dtype=np.int64)

    for k in range(n_steps):
        w = noise[k]
        plus = B >= 0.0
        in_band = np.abs(B) <= band
        dL = np.where(in_band, md.pick(md.s22, plus) * dt / (2.0 * band), 0.0)
        last_axis = np.where(in_band, k, last_axis)

        # accumulate functionals on the pre-step state
        for j, (alo, ahi, blo, bhi) in enumerate(req.boxes):
            occ[:, j] += dt * ((A >= alo) & (A <= ahi)
                               & (B >= blo) & (B <= bhi))
        if req.interval is not None:
            ilo, ihi = req.interval
            bnd += dL * ((A >= ilo) & (A <= ihi))
        if req.phi_x is not None:
            phv += dL * np.exp(req.phi_x * A)
        L += dL

        gauss_b = md.pick(md.sig, plus) * w[:, 1] * sqdt
        drift_b = md.pick(md.mu2, plus) * dt
        b_next = B + gauss_b + drift_b + md.q2 * dL
        if skew:
            y = B / md.pick(md.sig, plus)
            near = np.abs(y) < _NEAR_WIDTHS * sqdt
            if near.any():
                xa = np.abs(y)
                m = np.abs(xa + sqdt * w[:, 1])
                beta_eff = np.where(y >= 0.0, md.beta, -md.beta)
                d_far = np.exp(-(m + xa) ** 2 / (2.0 * dt))
                d_near = np.exp(-(m - xa) ** 2 / (2.0 * dt))
                p_neg = (1.0 - beta_eff) * d_far / (d_near + d_far)
                flip = np.where(w[:, 2] < p_neg, -1.0, 1.0)
                y_new = np.where(y >= 0.0, flip * m, -flip * m)
                b_exact = np.where(y_new >= 0.0, md.sig[0], md.sig[1]) \
                    * y_new + drift_b
                b_next = np.where(near, b_exact, b_next)
        A = A + md.pick(md.c11, plus) * w[:, 0] * sqdt \
            + md.pick(md.c12, plus) * w[:, 1] * sqdt \
            + md.pick(md.mu1, plus) * dt + md.q1 * dL
        B = b_next

    resolve_cut = int(_RESOLVE_FRACTION * n_steps)
    resolved = last_axis < resolve_cut
    return {
        "a": A, "b": B, "local": L, "occ": occ, "bnd": bnd, "phi": phv,
        "last_axis": last_axis, "resolved": resolved, "start": start,
    }


def _run(params: ModelParams, z0: Point, cfg: SimConfig, req: _Request):
    md = _Model(params)
    n_steps = int(math.ceil(cfg.resolved_horizon(params) / cfg.dt))
    blocks = [(s, min(_BLOCK, cfg.n_paths - s))
              for s in range(0, cfg.n_paths, _BLOCK)]
    workers = _thread_count()
    if workers == 1 or len(blocks) == 1:
        return [_run_block(params, md, z0, cfg, req, s, c, n_steps)
                for s, c in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futs = [pool.submit(_run_block, params, md, z0, cfg, req, s, c,
                            n_steps) for s, c in blocks]
        return [f.result() for f in futs]


def _reduce(values_per_block, n: int) -> GreenEstimate:
    """Mean and stderr over paths, fsum'ed in block order for bit-stable
    results across worker counts."""
    total = math.fsum(float(np.sum(v)) for v in values_per_block)
    total_sq = math.fsum(float(np.sum(v * v)) for v in values_per_block)
    nonzero = sum(int(np.count_nonzero(v)) for v in values_per_block)
    mean = total / n
    var = max((total_sq - n * mean * mean) / (n - 1), 0.0) if n > 1 else 0.0
    return GreenEstimate(mean, math.sqrt(var / n), nonzero)


# ---------------------------------------------------------------------------
# public estimators
# ---------------------------------------------------------------------------

def simulate_paths(params: ModelParams, z0: Point, cfg: SimConfig):
    """Stream per-path functionals (final point, accumulated local time,
    last axis visit) in path-index order."""
    md = _Model(params)
    n_steps = int(math.ceil(cfg.resolved_horizon(params) / cfg.dt))
    req = _Request(summaries=True)
    for s in range(0, cfg.n_paths, _BLOCK):
        c = min(_BLOCK, cfg.n_paths - s)
        blk = _run_block(params, md, z0, cfg, req, s, c, n_steps)
        for i in range(c):
            la = int(blk["last_axis"][i])
            yield PathSummary(
                index=s + i,
                a_final=float(blk["a"][i]),
                b_final=float(blk["b"][i]),
                local_time=float(blk["local"][i]),
                last_axis_time=la * cfg.dt if la >= 0 else None,
                resolved=bool(blk["resolved"][i]),
            )


def green_measure(params: ModelParams, z0: Point, boxes, cfg: SimConfig):
    """Occupation-time estimate of the Green measure of each box
    (a_lo, a_hi, b_lo, b_hi). Boxes must clear the local-time band."""
    band = cfg.resolved_band()
    boxes = [tuple(map(float, b)) for b in boxes]
    for alo, ahi, blo, bhi in boxes:
        if alo > ahi or blo > bhi:
            raise InputError(f"empty box ({alo},{ahi},{blo},{bhi})")
        if not (blo >= band or bhi <= -band):
            raise BoxTouchesAxis(
                f"box [{blo},{bhi}] intersects the band |b| <= {band}")
    blocks = _run(params, z0, cfg, _Request(boxes=boxes))
    return [_reduce([blk["occ"][:, j] for blk in blocks], cfg.n_paths)
            for j in range(len(boxes))]


def boundary_measure(params: ModelParams, z0: Point, interval,
                     cfg: SimConfig) -> GreenEstimate:
    """Local-time mass the paths deposit on {a in interval}: estimates the
    boundary Green measure, i.e. (s22+ + s22-)/2 times the integral of the
    interface density over the interval."""
    lo, hi = float(interval[0]), float(interval[1])
    blocks = _run(params, z0, cfg, _Request(interval=(lo, hi)))
    return _reduce([blk["bnd"] for blk in blocks], cfg.n_paths)


def escape_estimate(params: ModelParams, z0: Point,
                    cfg: SimConfig) -> EscapeEstimate:
    blocks = _run(params, z0, cfg, _Request())
    n = cfg.n_paths
    up = sum(int(np.count_nonzero(blk["resolved"] & (blk["b"] > 0.0)))
             for blk in blocks)
    down = sum(int(np.count_nonzero(blk["resolved"] & (blk["b"] <= 0.0)))
               for blk in blocks)
    unresolved = n - up - down
    frac = unresolved / n
    if frac > 0.01:
        raise HorizonTooShort(
            f"{100 * frac:.2f}% of paths visited the axis in the final "
            f"{100 * (1 - _RESOLVE_FRACTION):.0f}% of the horizon; "
            "increase horizon")
    p = up / n
    return EscapeEstimate(p, down / n, math.sqrt(p * (1.0 - p) / n), frac)


def phi_estimate(params: ModelParams, z0: Point, x: float,
                 cfg: SimConfig) -> GreenEstimate:
    """Monte Carlo value of the boundary transform: accumulated
    exp(x A) dL along the paths. Defined for x strictly between the branch
    points, where the exponential moment is finite."""
    bp = algebra.branching_points(params)
    margin = 0.01 * (bp.x_bind - bp.x_tilde)
    if not (bp.x_tilde + margin <= x <= bp.x_bind - margin):
        raise InputError(
            f"x={x} outside the transform strip "
            f"({bp.x_tilde:.6g}, {bp.x_bind:.6g}) with margin")
    blocks = _run(params, z0, cfg, _Request(phi_x=x))
    return _reduce([blk["phi"] for blk in blocks], cfg.n_paths)
