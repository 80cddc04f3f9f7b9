"""Closed-form solutions of the massless limit equation D Psi = |Psi|^2 Psi.

For an angular index S the symmetric bubbles are

    u(r) = sigma * sqrt(2|2S+1|) r^S      / (r^(2S+1) + r^-(2S+1))
    v(r) = tau   * sqrt(2|2S+1|) r^(-S-1) / (r^(2S+1) + r^-(2S+1))

with sigma = tau for S >= 0 and sigma = -tau for S < 0, and quartic energy
(1/4) int |Psi|^4 = |2S+1| pi.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from scipy.ndimage import map_coordinates

from .domain import PhysParams, RadialProfile, SpinorField2D, grid_coords
from .errors import InvalidParameters, NonPositiveRadius, NonPositiveScale
from .quadrature import log_panel_quad


@dataclass(frozen=True)
class BubbleSpec:
    S: int
    sigma: int = 1
    tau: int = 1

    def __post_init__(self):
        if self.sigma not in (-1, 1) or self.tau not in (-1, 1):
            raise InvalidParameters("sigma and tau must be +1 or -1")
        if self.S >= 0 and self.sigma != self.tau:
            raise InvalidParameters("S >= 0 requires sigma == tau")
        if self.S < 0 and self.sigma != -self.tau:
            raise InvalidParameters("S < 0 requires sigma == -tau")

    @classmethod
    def canonical(cls, S: int) -> "BubbleSpec":
        """The bubble with tau = +1 (v > 0)."""
        return cls(S, 1 if S >= 0 else -1, 1)

    @property
    def amplitude(self) -> float:
        return math.sqrt(2 * abs(2 * self.S + 1))

    def __call__(self, r):
        return bubble_eval(self, r)


def bubble_eval(spec: BubbleSpec, r) -> Tuple[np.ndarray, np.ndarray]:
    """(u, v) of the bubble at radius/radii ``r``."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise NonPositiveRadius("bubble evaluation needs r > 0")
    a = abs(2 * spec.S + 1)
    s = np.log(r)
    # log(r^a + r^-a) with the dominant power factored out
    log_den = a * np.abs(s) + np.log1p(np.exp(-2.0 * a * np.abs(s)))
    c = spec.amplitude
    u = spec.sigma * c * np.exp(spec.S * s - log_den)
    v = spec.tau * c * np.exp((-spec.S - 1) * s - log_den)
    return u, v


def bubble_energy(S: int, tol: float = 1e-13, r_min: float = 1e-6, r_max: float = 1e6) -> float:
    """(1/4) int_{R^2} |Psi|^4 dx by panel quadrature."""
    spec = BubbleSpec.canonical(S)

    def quartic(r):
        u, v = bubble_eval(spec, r)
        return (u * u + v * v) ** 2

    return 0.25 * 2 * math.pi * log_panel_quad(quartic, r_min, r_max, tol)


def bubble_threshold(S: int) -> float:
    return abs(2 * S + 1) * math.pi


def bubble_residual(spec: BubbleSpec, rgrid, u_factor: float = 1.0) -> float:
    """Max residual of the massless radial system on ``rgrid`` (6th-order FD)."""
    from .radial import residual_fd

    def func(r):
        u, v = bubble_eval(spec, r)
        return u_factor * u, v

    return float(np.max(residual_fd(func, PhysParams(0.0, 0.0, spec.S), rgrid)))


def bubble_profile(spec: BubbleSpec, r_min: float = 1e-6, r_max: float = 1e6,
                   n: int = 4001) -> RadialProfile:
    r = np.geomspace(r_min, r_max, n)
    u, v = bubble_eval(spec, r)
    return RadialProfile(r, u, v, meta={"kind": "bubble", "S": spec.S})


def scale_field(obj, delta: float):
    """Conformal rescaling phi -> delta^-1 phi(delta^-2 x).

    Accepts a RadialProfile (samples are moved, not resampled), a radial
    callable r -> (u, v), or a SpinorField2D (cubic resampling on the grid).
    """
    if not delta > 0:
        raise NonPositiveScale(f"scale must be positive, got {delta}")
    d2 = delta * delta
    if isinstance(obj, RadialProfile):
        du = None if obj.du is None else obj.du / (delta * d2)
        dv = None if obj.dv is None else obj.dv / (delta * d2)
        return RadialProfile(obj.r * d2, obj.u / delta, obj.v / delta, du, dv,
                             meta=dict(obj.meta, delta=delta))
    if isinstance(obj, SpinorField2D):
        return _scale_grid(obj, delta)
    if callable(obj):
        def scaled(r):
            u, v = obj(np.asarray(r, dtype=float) / d2)
            return np.asarray(u) / delta, np.asarray(v) / delta
        return scaled
    raise TypeError(f"cannot scale object of type {type(obj).__name__}")


def _scale_grid(field: SpinorField2D, delta: float) -> SpinorField2D:
    n, L = field.n, field.L
    X, Y = grid_coords(n, L)
    # fractional grid indices of the points x / delta^2
    coords = np.stack([(X / delta**2 + L / 2) / field.dx, (Y / delta**2 + L / 2) / field.dx])
    out = np.empty_like(field.values)
    for comp in range(2):
        re = map_coordinates(field.values[comp].real, coords, order=3, mode="grid-wrap")
        im = map_coordinates(field.values[comp].imag, coords, order=3, mode="grid-wrap")
        out[comp] = (re + 1j * im) / delta
    return field.like(out)


def bubble_moment_M(S: int, params: PhysParams, tol: float = 1e-13) -> float:
    """M = int <Psi, (omega - m sigma_3) Psi> dx for the canonical bubble.

    Only the mass and frequency of ``params`` are used. S = 0 is refused: the
    S = 0 bubbles are not square integrable.
    """
    if S == 0:
        raise InvalidParameters("M is undefined for S = 0 (bubble not square integrable)")
    spec = BubbleSpec.canonical(S)
    m, w = params.m, params.omega

    def density(r):
        u, v = bubble_eval(spec, r)
        return w * (u * u + v * v) - m * (v * v - u * u)

    return 2 * math.pi * log_panel_quad(density, 1e-8, 1e8, tol)


def bubble_l2_squared(S: int, tol: float = 1e-13) -> float:
    spec = BubbleSpec.canonical(S)

    def density(r):
        u, v = bubble_eval(spec, r)
        return u * u + v * v

    return 2 * math.pi * log_panel_quad(density, 1e-8, 1e8, tol)
