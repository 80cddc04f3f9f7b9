"""Bound states of the radial system by shooting on the origin amplitude c.

Every integration lands on the same uniform sample grid r_k = r0 + k dr, so
the classification seen during bisection and the trajectory returned at the
end come from identical step sequences. Beyond the radius where the two final
bracket trajectories separate, the profile is continued with the decaying
solution of the linearised system,

    v = A K_S(mu r),  u = A mu / (m + omega) K_{S+1}(mu r),

which behaves like A e^{-mu r} / sqrt(r).

Negative S is solved in the mirrored frame (S' = -S-1, m' = -m) and mapped
back with (u, v) = (-v', u').
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

import numpy as np

from .domain import PhysParams, RadialProfile
from .errors import BracketNotFound, NoConvergence
from .greens import bessel_kn
from .integrator import dopri5
from .radial import (
    action_radial,
    mirror_index,
    profile_residual,
    r_series_max,
    rhs,
    series_origin_canonical,
)


class ShotKind(enum.Enum):
    UNDERSHOOT = "undershoot"
    OVERSHOOT = "overshoot"
    CONVERGED = "converged"


@dataclass(frozen=True)
class ShotOutcome:
    kind: ShotKind
    r_event: float
    profile: Optional[RadialProfile] = None


@dataclass(frozen=True)
class ShootingConfig:
    """Shooting controls; ``None`` radii are derived from the parameters
    (r0 = 1e-2 min(1, 1/mu), R = max(40/mu, 20))."""

    r0: Optional[float] = None
    R: Optional[float] = None
    dr: float = 0.005
    tail_threshold: float = 1e-8
    blowup_threshold: float = 1e4
    c_bracket: Optional[Tuple[float, float]] = None
    c_seed: float = 1.0
    tol_c: float = 1e-9
    rtol: float = 1e-10
    atol: float = 1e-14
    max_iter: int = 200
    max_scan: int = 60
    divergence_tol: float = 1e-6
    residual_tol: float = 1e-6

    def __post_init__(self):
        if self.r0 is not None and self.R is not None and not 0 < self.r0 < self.R:
            raise ValueError("need 0 < r0 < R")
        if self.c_bracket is not None and not self.c_bracket[0] < self.c_bracket[1]:
            raise ValueError("c_bracket must satisfy c_lo < c_hi")
        for name in ("dr", "tail_threshold", "blowup_threshold", "tol_c", "rtol", "atol",
                     "divergence_tol", "residual_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    def halved(self) -> "ShootingConfig":
        return replace(self, rtol=self.rtol / 2, atol=self.atol / 2)


@dataclass(frozen=True)
class _Frame:
    """Canonical frame S >= 0 with a mass of either sign."""

    S: int
    m: float
    omega: float
    mirrored: bool
    mu: float
    r0: float
    R: float
    grid: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, params: PhysParams, cfg: ShootingConfig) -> "_Frame":
        params.check(solver_grade=True)
        mu = params.mu
        r0 = cfg.r0 if cfg.r0 is not None else r_series_max(params)
        R = cfg.R if cfg.R is not None else max(40.0 / mu, 20.0)
        if not 0 < r0 < R:
            raise ValueError("need 0 < r0 < R")
        grid = r0 + cfg.dr * np.arange(int(math.ceil((R - r0) / cfg.dr)) + 1)
        if params.S > 0:
            return cls(params.S, params.m, params.omega, False, mu, r0, R, grid)
        return cls(mirror_index(params.S), -params.m, params.omega, True, mu, r0, R, grid)

    def f(self):
        S, a, b = self.S, self.m - self.omega, self.m + self.omega

        def f(r, y):
            u, v = y
            ff = u * u + v * v
            return (-(S + 1) / r * u + (ff - a) * v, S / r * v - (ff + b) * u)

        return f

    def tail(self, r):
        """Decaying linear solution with unit amplitude: (u, v)."""
        x = self.mu * np.asarray(r, dtype=float)
        kv = bessel_kn(self.S, x)
        ku = bessel_kn(self.S + 1, x)
        return self.mu / (self.m + self.omega) * ku, kv

    def to_physical(self, u, v):
        return (-v, u) if self.mirrored else (u, v)


def _integrate(c: float, frame: _Frame, cfg: ShootingConfig, record: bool):
    u0, v0 = series_origin_canonical(c, frame.m, frame.omega, frame.S, frame.r0)
    state = {"kind": None, "r": frame.R, "dv_prev": None}
    blow = cfg.blowup_threshold
    # the physical v component, which stays positive on the bound state
    j = 0 if frame.mirrored else 1

    def watch(r, y, dy):
        u, v = y
        if y[j] <= 0.0:
            state["kind"] = ShotKind.OVERSHOOT
        elif u * u + v * v > blow:
            state["kind"] = ShotKind.UNDERSHOOT
        elif state["dv_prev"] is not None and state["dv_prev"] < 0.0 <= dy[j]:
            # v turns back up while positive: the trajectory falls inside the
            # homoclinic loop instead of reaching the origin
            state["kind"] = ShotKind.UNDERSHOOT
        else:
            state["dv_prev"] = dy[j]
            return False
        state["r"] = r
        return True

    traj = dopri5(frame.f(), frame.r0, (u0, v0), frame.grid[-1], rtol=cfg.rtol, atol=cfg.atol,
                  h0=cfg.dr, t_eval=frame.grid, callback=watch, record=record)
    kind = state["kind"]
    if kind is None:
        u, v = traj.y[-1] if record else (None, None)
        kind = ShotKind.UNDERSHOOT
        if record and u * u + v * v < cfg.tail_threshold**2:
            kind = ShotKind.CONVERGED
    return kind, state["r"], traj


def classify_shot(c: float, params: PhysParams, cfg: ShootingConfig = ShootingConfig()
                  ) -> ShotOutcome:
    if not c > 0:
        raise ValueError("shooting amplitude c must be positive")
    frame = _Frame.build(params, cfg)
    kind, r_event, _ = _integrate(c, frame, cfg, record=False)
    return ShotOutcome(kind, r_event)


def scan_brackets(params: PhysParams, cfg: ShootingConfig = ShootingConfig(),
                  k_range: Tuple[int, int] = (-8, 8)) -> List[Tuple[float, float]]:
    """All consecutive pairs of c = 2^k c_seed with different classifications."""
    frame = _Frame.build(params, cfg)
    cs = [cfg.c_seed * 2.0**k for k in range(k_range[0], k_range[1] + 1)]
    kinds = [_integrate(c, frame, cfg, record=False)[0] for c in cs]
    return [(a, b) for a, b, ka, kb in zip(cs, cs[1:], kinds, kinds[1:]) if ka != kb]


def find_bracket(params: PhysParams, cfg: ShootingConfig = ShootingConfig()
                 ) -> Tuple[float, float]:
    """Geometric scan from c_seed (doubling or halving) until the
    classification flips."""
    if cfg.c_bracket is not None:
        return cfg.c_bracket
    frame = _Frame.build(params, cfg)
    c = cfg.c_seed
    k0 = _integrate(c, frame, cfg, record=False)[0]
    step = 2.0 if k0 is ShotKind.UNDERSHOOT else 0.5
    for _ in range(cfg.max_scan):
        c_next = c * step
        if _integrate(c_next, frame, cfg, record=False)[0] != k0:
            return (c, c_next) if step > 1 else (c_next, c)
        c = c_next
    raise BracketNotFound(f"no classification flip within 2^±{cfg.max_scan} of c_seed")


def bisect_amplitude(params: PhysParams, bracket: Tuple[float, float],
                     cfg: ShootingConfig = ShootingConfig()) -> dict:
    """Bisect to floating-point adjacency; returns the final bracket, its kinds
    and the iteration count. The widths seen along the way are kept so the
    bracket invariant can be checked."""
    frame = _Frame.build(params, cfg)
    lo, hi = bracket
    k_lo = _integrate(lo, frame, cfg, record=False)[0]
    k_hi = _integrate(hi, frame, cfg, record=False)[0]
    if k_lo == k_hi:
        raise BracketNotFound(f"both ends of [{lo}, {hi}] classify as {k_lo.value}")
    widths = [hi - lo]
    it = 0
    for it in range(1, cfg.max_iter + 1):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        k_mid = _integrate(mid, frame, cfg, record=False)[0]
        if k_mid == k_lo:
            lo = mid
        else:
            hi = mid
        widths.append(hi - lo)
    if hi - lo > cfg.tol_c:
        raise NoConvergence(f"bracket width {hi - lo:.3e} > tol_c after {it} iterations")
    return {"lo": lo, "hi": hi, "kind_lo": k_lo, "kind_hi": k_hi, "iterations": it,
            "widths": widths}


def _assemble(params: PhysParams, frame: _Frame, cfg: ShootingConfig, bis: dict
              ) -> RadialProfile:
    _, r_lo, t_lo = _integrate(bis["lo"], frame, cfg, record=True)
    _, r_hi, t_hi = _integrate(bis["hi"], frame, cfg, record=True)
    n = min(len(t_lo.t), len(t_hi.t))
    y_lo = np.array(t_lo.y[:n])
    y_hi = np.array(t_hi.y[:n])
    y = 0.5 * (y_lo + y_hi)
    amp = np.hypot(y[:, 0], y[:, 1])
    gap = np.hypot(*(y_hi - y_lo).T)
    peak = int(np.argmax(amp))
    bad = np.nonzero(gap[peak:] > cfg.divergence_tol * amp[peak:])[0]
    k_match = peak + (int(bad[0]) - 1 if bad.size else n - 1 - peak)
    if k_match <= peak or amp[k_match] > 1e-3 * amp[peak]:
        raise NoConvergence(
            f"trajectories separate too early (r={frame.grid[k_match]:.3g}, "
            f"relative amplitude {amp[k_match] / amp[peak]:.2e})")

    r = frame.grid
    u = np.empty_like(r)
    v = np.empty_like(r)
    u[:k_match + 1] = y[:k_match + 1, 0]
    v[:k_match + 1] = y[:k_match + 1, 1]
    # least-squares amplitude of the decaying tail at the matching radius
    tu, tv = frame.tail(r[k_match])
    A = (u[k_match] * tu + v[k_match] * tv) / (tu * tu + tv * tv)
    tu, tv = frame.tail(r[k_match + 1:])
    u[k_match + 1:] = A * tu
    v[k_match + 1:] = A * tv
    mismatch = math.hypot(u[k_match] - A * frame.tail(r[k_match])[0],
                          v[k_match] - A * frame.tail(r[k_match])[1])

    du, dv = rhs(r, u, v, frame.m, frame.omega, frame.S)
    u, v = frame.to_physical(u, v)
    du, dv = frame.to_physical(du, dv)
    meta = {
        "m": params.m, "omega": params.omega, "S": params.S,
        "c_star": 0.5 * (bis["lo"] + bis["hi"]), "c_lo": bis["lo"], "c_hi": bis["hi"],
        "iterations": bis["iterations"], "r_match": float(r[k_match]),
        "tail_amplitude": float(A), "tail_mismatch": float(mismatch),
        "r0": frame.r0, "R": frame.R, "dr": cfg.dr, "mu": frame.mu,
        "event_lo": r_lo, "event_hi": r_hi,
    }
    return RadialProfile(r, u, v, du, dv, meta=meta)


def _monotone_tail(profile: RadialProfile) -> bool:
    R = profile.r[-1]
    amp = profile.amplitude[profile.r >= R / 10]
    return bool(np.all(np.diff(amp) < 0))


def solve_bound_state(params: PhysParams, cfg: ShootingConfig = ShootingConfig()
                      ) -> RadialProfile:
    """Bound state from the first classification flip above/below c_seed."""
    frame = _Frame.build(params, cfg)
    bracket = find_bracket(params, cfg)
    bis = bisect_amplitude(params, bracket, cfg)
    return _finish(params, frame, cfg, bis)


def _finish(params, frame, cfg, bis) -> RadialProfile:
    profile = _assemble(params, frame, cfg, bis)
    res = profile_residual(profile, params)
    amp_R = float(profile.amplitude[-1])
    parts = action_radial(profile, params)
    profile.meta.update({
        "residual_max": float(np.max(res)),
        "residual_rms": float(np.sqrt(np.mean(res**2))),
        "amplitude_R": amp_R,
        "monotone_tail": _monotone_tail(profile),
        "action": parts.action,
        "threshold": abs(2 * params.S + 1) * math.pi,
    })
    if not (amp_R < cfg.tail_threshold and profile.meta["monotone_tail"]):
        raise NoConvergence(f"tail amplitude {amp_R:.2e} at R or non-monotone decay")
    if profile.meta["residual_max"] > cfg.residual_tol:
        raise NoConvergence(f"ODE residual {profile.meta['residual_max']:.2e} "
                            f"exceeds {cfg.residual_tol:.1e}")
    return profile


def solve_all(params: PhysParams, cfg: ShootingConfig = ShootingConfig(),
              k_range: Tuple[int, int] = (-8, 8)) -> List[RadialProfile]:
    """Every bound state bracketed by the geometric scan, sorted by action; the
    first carries meta['lowest_action'] = True."""
    frame = _Frame.build(params, cfg)
    out = []
    for bracket in scan_brackets(params, cfg, k_range):
        try:
            bis = bisect_amplitude(params, bracket, cfg)
            out.append(_finish(params, frame, cfg, bis))
        except (NoConvergence, BracketNotFound):
            continue
    out.sort(key=lambda p: p.meta["action"])
    for i, p in enumerate(out):
        p.meta["lowest_action"] = i == 0
    return out


def node_count(profile: RadialProfile) -> Tuple[int, int]:
    """Strict sign changes of u and v over the samples (zeros skipped)."""
    def changes(a):
        s = np.sign(a)
        s = s[s != 0]
        return int(np.count_nonzero(s[1:] != s[:-1]))

    return changes(profile.u), changes(profile.v)
