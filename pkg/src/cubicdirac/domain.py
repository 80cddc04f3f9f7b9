"""Parameter and field types, Pauli algebra, and the symmetric ansatz embedding.

A symmetric spinor is stored as a pair of real radial functions (u, v) and
lives on the plane as

    psi(r, theta) = ( v(r) exp(i S theta), i u(r) exp(i (S+1) theta) ).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.interpolate import CubicSpline, PchipInterpolator

from .errors import (
    FrequencyOutOfGap,
    InvalidParameters,
    NonPositiveMass,
    ProfileTooShort,
    ZeroAngularIndex,
)

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA1, SIGMA2, SIGMA3)


@dataclass(frozen=True)
class PhysParams:
    """Mass ``m``, frequency ``omega`` and angular index ``S``.

    Construction only checks that the numbers are finite so that massless
    (m = omega = 0) parameter sets can be used for the limit equation; use
    :func:`make_params` or :meth:`check` to enforce the gap conditions.
    """

    m: float
    omega: float
    S: int

    def __post_init__(self):
        if not (math.isfinite(self.m) and math.isfinite(self.omega)):
            raise InvalidParameters("m and omega must be finite")
        if int(self.S) != self.S:
            raise InvalidParameters(f"S must be an integer, got {self.S!r}")
        object.__setattr__(self, "S", int(self.S))

    def check(self, solver_grade: bool = True) -> "PhysParams":
        if not self.m > 0:
            raise NonPositiveMass(f"mass must be positive, got m={self.m}")
        if not abs(self.omega) < self.m:
            raise FrequencyOutOfGap(
                f"omega={self.omega} must lie in the open gap (-{self.m}, {self.m})"
            )
        if solver_grade and self.S == 0:
            raise ZeroAngularIndex("bound-state paths require S != 0")
        return self

    @property
    def mu(self) -> float:
        return mu(self)


def make_params(m: float, omega: float, S: int, solver_grade: bool = True) -> PhysParams:
    return PhysParams(float(m), float(omega), S).check(solver_grade)


def mu(params: PhysParams) -> float:
    """Linearised decay rate sqrt(m^2 - omega^2)."""
    return math.sqrt(params.m**2 - params.omega**2)


@dataclass(frozen=True)
class RadialProfile:
    """Samples of (u, v) on a strictly increasing positive grid.

    ``du``/``dv`` are optional exact derivatives (e.g. from the ODE right-hand
    side); consumers fall back to spline derivatives when they are absent.
    """

    r: np.ndarray
    u: np.ndarray
    v: np.ndarray
    du: Optional[np.ndarray] = None
    dv: Optional[np.ndarray] = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        arrays = {}
        for name in ("r", "u", "v", "du", "dv"):
            val = getattr(self, name)
            if val is None:
                continue
            arr = np.array(val, dtype=float)
            arr.setflags(write=False)
            arrays[name] = arr
            object.__setattr__(self, name, arr)
        r = arrays["r"]
        if r.ndim != 1 or r.size < 2:
            raise ValueError("r must be a 1D array with at least two samples")
        for name, arr in arrays.items():
            if arr.shape != r.shape:
                raise ValueError(f"{name} has shape {arr.shape}, expected {r.shape}")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} contains non-finite samples")
        if r[0] <= 0 or np.any(np.diff(r) <= 0):
            raise ValueError("r must be strictly increasing with r[0] > 0")

    @property
    def amplitude(self) -> np.ndarray:
        return np.hypot(self.u, self.v)

    def has_derivatives(self) -> bool:
        return self.du is not None and self.dv is not None

    def derivatives(self) -> Tuple[np.ndarray, np.ndarray]:
        if self.has_derivatives():
            return self.du, self.dv
        du = CubicSpline(self.r, self.u).derivative()(self.r)
        dv = CubicSpline(self.r, self.v).derivative()(self.r)
        return du, dv

    def with_values(self, u=None, v=None) -> "RadialProfile":
        return RadialProfile(
            self.r,
            self.u if u is None else u,
            self.v if v is None else v,
            meta=dict(self.meta),
        )


@dataclass(frozen=True)
class SpinorField2D:
    """Two-component complex field on the periodic grid
    x_jk = (-L/2 + j L/n, -L/2 + k L/n); ``values`` has shape (2, n, n)."""

    n: int
    L: float
    values: np.ndarray

    def __post_init__(self):
        n = int(self.n)
        if n < 8 or n & (n - 1):
            raise ValueError(f"grid side must be a power of two >= 8, got {self.n}")
        if not self.L > 0:
            raise ValueError("grid extent L must be positive")
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (2, n, n):
            raise ValueError(f"values must have shape (2, {n}, {n}), got {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("field values must be finite")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "values", vals)

    @property
    def dx(self) -> float:
        return self.L / self.n

    def like(self, values: np.ndarray) -> "SpinorField2D":
        return SpinorField2D(self.n, self.L, values)

    def __mul__(self, t):
        return self.like(self.values * t)

    __rmul__ = __mul__

    def norm2(self) -> float:
        """Grid L2 norm."""
        return math.sqrt(float(np.sum(np.abs(self.values) ** 2)) * self.dx**2)

    def modulus(self) -> np.ndarray:
        return np.sqrt(np.sum(np.abs(self.values) ** 2, axis=0))


def grid_coords(n: int, L: float) -> Tuple[np.ndarray, np.ndarray]:
    x = -L / 2 + np.arange(n) * (L / n)
    return np.meshgrid(x, x, indexing="ij")


def _phases(S: int, theta: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    return np.exp(1j * S * theta), 1j * np.exp(1j * (S + 1) * theta)


def _origin_exponents(S: int) -> Tuple[int, int]:
    """Leading powers (for u, v) of the regular solution at r = 0."""
    if S >= 0:
        return S + 1, S
    return -S - 1, -S


def embed_function(func: Callable, S: int, n: int, L: float) -> SpinorField2D:
    """Embed an exactly known radial pair ``func(r) -> (u, v)``."""
    X, Y = grid_coords(n, L)
    r = np.hypot(X, Y)
    theta = np.arctan2(Y, X)
    origin = r == 0
    r_safe = np.where(origin, 1.0, r)
    u, v = func(r_safe)
    u = np.array(u, dtype=float)
    v = np.array(v, dtype=float)
    pu, pv = _origin_exponents(S)
    # only an exponent-0 component survives at the origin
    r_tiny = 1e-8 * (L / n)
    u0, v0 = func(np.array([r_tiny]))
    u[origin] = float(u0[0]) if pu == 0 else 0.0
    v[origin] = float(v0[0]) if pv == 0 else 0.0
    p1, p2 = _phases(S, theta)
    return SpinorField2D(n, L, np.stack([v * p1, u * p2]))


def profile_interpolant(profile: RadialProfile, S: int) -> Callable:
    """Monotone cubic interpolant of (u, v); zero beyond the last sample and
    power-law extrapolated below the first one."""
    iu = PchipInterpolator(profile.r, profile.u, extrapolate=False)
    iv = PchipInterpolator(profile.r, profile.v, extrapolate=False)
    r0, rmax = profile.r[0], profile.r[-1]
    u0, v0 = profile.u[0], profile.v[0]
    pu, pv = _origin_exponents(S)

    def func(r):
        r = np.asarray(r, dtype=float)
        inside = (r >= r0) & (r <= rmax)
        inner = r < r0
        u = np.zeros_like(r)
        v = np.zeros_like(r)
        u[inside] = iu(r[inside])
        v[inside] = iv(r[inside])
        u[inner] = u0 * (r[inner] / r0) ** pu
        v[inner] = v0 * (r[inner] / r0) ** pv
        return u, v

    return func


def ansatz_embed(profile: RadialProfile, S: int, n: int, L: float) -> SpinorField2D:
    """Embed a sampled radial profile on the n x n grid of extent L.

    The profile must reach the grid corners, r = L / sqrt(2).
    """
    reach = L / math.sqrt(2)
    if profile.r[-1] < reach * (1 - 1e-12):
        raise ProfileTooShort(
            f"profile ends at r={profile.r[-1]:.6g} but the grid needs r >= {reach:.6g}"
        )
    return embed_function(profile_interpolant(profile, S), S, n, L)


def rotate_field(field: SpinorField2D, quarter_turns: int = 1) -> SpinorField2D:
    """Return the field x -> psi(R x), R the counterclockwise rotation by
    ``quarter_turns`` right angles about the origin node."""
    n = field.n
    shifted = np.roll(field.values, (-(n // 2), -(n // 2)), axis=(1, 2))
    idx = np.arange(n)
    out = shifted
    for _ in range(quarter_turns % 4):
        # R x = (-k, j) for x = (j, k)
        out = out[:, (-idx[None, :]) % n, idx[:, None]]
    return field.like(np.roll(out, (n // 2, n // 2), axis=(1, 2)))


def s1_phase(S: int, angle: float) -> np.ndarray:
    """Diagonal phase matrix of the rotation action on symmetric spinors."""
    return np.diag([np.exp(1j * S * angle), np.exp(1j * (S + 1) * angle)])
