"""Radial reduction of (D + m sigma_3 - omega) psi = |psi|^2 psi.

Under the symmetric ansatz the equation becomes

    u' + (S+1) u / r = (u^2 + v^2) v - (m - omega) v
    v' -  S    v / r = -(u^2 + v^2) u - (m + omega) u

Negative indices are handled through the mirror map S -> -S-1,
(u, v) -> (v, -u), m -> -m, which sends the system for S to the system for
-S-1 with the sign of the mass flipped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Union

import numpy as np

from .domain import PhysParams, RadialProfile
from .quadrature import log_panel_quad, sample_integral

# 6th-order central first-derivative stencil
_FD6_OFFSETS = np.array([-3, -2, -1, 1, 2, 3])
_FD6_WEIGHTS = np.array([-1, 9, -45, 45, -9, 1]) / 60.0


@dataclass(frozen=True)
class RadialState:
    r: float
    u: float
    v: float


def rhs(r, u, v, m: float, omega: float, S: int):
    """Right-hand side (u', v') of the radial system; works on scalars or arrays."""
    f = u * u + v * v
    du = -(S + 1) / r * u + (f - (m - omega)) * v
    dv = S / r * v - (f + (m + omega)) * u
    return du, dv


def rhs_state(state: RadialState, params: PhysParams):
    return rhs(state.r, state.u, state.v, params.m, params.omega, params.S)


def mirror_index(S: int) -> int:
    return -S - 1


def series_origin_canonical(c: float, m: float, omega: float, S: int, r):
    """Regular expansion at r = 0 for S >= 0 and a mass of either sign:
    v = c r^S + d r^(S+2), u = b r^(S+1)."""
    b = -(m - omega) * c / (2 * (S + 1))
    d = -(m + omega) * b / 2
    u = b * r ** (S + 1)
    v = c * r**S + d * r ** (S + 2)
    return u, v


def series_origin(c: float, params: PhysParams, r: float) -> RadialState:
    """Regular branch at the origin with leading amplitude ``c``."""
    S = params.S
    if S >= 0:
        u, v = series_origin_canonical(c, params.m, params.omega, S, r)
        return RadialState(r, u, v)
    ut, vt = series_origin_canonical(c, -params.m, params.omega, mirror_index(S), r)
    return RadialState(r, -vt, ut)


def r_series_max(params: PhysParams) -> float:
    mu = math.sqrt(max(params.m**2 - params.omega**2, 0.0))
    return 1e-2 * min(1.0, 1.0 / mu) if mu > 0 else 1e-2


def fd_derivative(func: Callable, r: np.ndarray, rel_step: float = 2e-3):
    """6th-order central differences of a radial callable with step rel_step*r."""
    r = np.asarray(r, dtype=float)
    h = rel_step * r
    du = np.zeros_like(r)
    dv = np.zeros_like(r)
    for off, w in zip(_FD6_OFFSETS, _FD6_WEIGHTS):
        u, v = func(r + off * h)
        du += w * np.asarray(u)
        dv += w * np.asarray(v)
    return du / h, dv / h


def residual_fd(func: Callable, params: PhysParams, rgrid, rel_step: float = 2e-3) -> np.ndarray:
    """Pointwise max-component residual of the radial system for ``func``,
    derivatives by 6th-order central differences."""
    rgrid = np.asarray(rgrid, dtype=float)
    du, dv = fd_derivative(func, rgrid, rel_step)
    u, v = func(rgrid)
    fu, fv = rhs(rgrid, np.asarray(u), np.asarray(v), params.m, params.omega, params.S)
    return np.maximum(np.abs(du - fu), np.abs(dv - fv))


def profile_residual(profile: RadialProfile, params: PhysParams) -> np.ndarray:
    """Residual of the radial system on a uniformly sampled profile, with
    6th-order differences of the samples (the outer three points per side are
    dropped)."""
    r, u, v = profile.r, profile.u, profile.v
    h = np.diff(r)
    if not np.allclose(h, h[0], rtol=1e-6, atol=0):
        raise ValueError("profile_residual needs a uniform grid")
    h = h[0]
    n = r.size
    sl = slice(3, n - 3)
    du = np.zeros(n - 6)
    dv = np.zeros(n - 6)
    for off, w in zip(_FD6_OFFSETS, _FD6_WEIGHTS):
        du += w * u[3 + off:n - 3 + off]
        dv += w * v[3 + off:n - 3 + off]
    du /= h
    dv /= h
    fu, fv = rhs(r[sl], u[sl], v[sl], params.m, params.omega, params.S)
    return np.maximum(np.abs(du - fu), np.abs(dv - fv))


class ActionParts(NamedTuple):
    kinetic: float
    mass_freq: float
    quartic: float
    action: float


def _densities(r, u, v, du, dv, params: PhysParams):
    S, m, w = params.S, params.m, params.omega
    kin = v * du - u * dv + (2 * S + 1) * u * v / r
    mf = (m - w) * v * v - (m + w) * u * u
    quart = (u * u + v * v) ** 2
    return kin, mf, quart


def action_radial(profile: Union[RadialProfile, Callable], params: PhysParams,
                  tol: float = 1e-12) -> ActionParts:
    """Kinetic term <D psi, psi>, mass/frequency term, quartic term and the
    action of a symmetric spinor (all integrated over the plane).

    A RadialProfile is integrated over its samples (derivatives from ``du``,
    ``dv`` when present); a callable r -> (u, v) is integrated by panel
    quadrature on [1e-6, 1e6] with finite-difference derivatives.
    """
    two_pi = 2 * math.pi
    if isinstance(profile, RadialProfile):
        r, u, v = profile.r, profile.u, profile.v
        du, dv = profile.derivatives()
        kin, mf, quart = _densities(r, u, v, du, dv, params)
        K = two_pi * sample_integral(r, kin)
        Mf = two_pi * sample_integral(r, mf)
        Q = two_pi * sample_integral(r, quart)
    else:
        func = profile

        def part(i):
            def g(r):
                u, v = func(r)
                du, dv = fd_derivative(func, r)
                return _densities(r, np.asarray(u), np.asarray(v), du, dv, params)[i]
            return g

        K = two_pi * log_panel_quad(part(0), tol=tol)
        Mf = two_pi * log_panel_quad(part(1), tol=tol)
        Q = two_pi * log_panel_quad(part(2), tol=tol)
    return ActionParts(K, Mf, Q, 0.5 * (K + Mf) - 0.25 * Q)


def l2_squared(profile: Union[RadialProfile, Callable], tol: float = 1e-13) -> float:
    if isinstance(profile, RadialProfile):
        return 2 * math.pi * sample_integral(profile.r, profile.u**2 + profile.v**2)

    def g(r):
        u, v = profile(r)
        return np.asarray(u) ** 2 + np.asarray(v) ** 2

    return 2 * math.pi * log_panel_quad(g, tol=tol)
