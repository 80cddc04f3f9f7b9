"""Modified Bessel functions K0, K1 and the Green's kernels of -Delta + mu^2
and of the massive Dirac operator.

K0/K1 use the ascending series of Abramowitz & Stegun 9.6.10-9.6.13 for
x <= 2 and Steed's continued fraction (Temme's CF2 form) for x > 2, with the
exp(-x) sqrt(pi / 2x) factor split off. Both are accurate to a few ulp.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import integrate

from .domain import SIGMA1, SIGMA2, SIGMA3, PhysParams, grid_coords
from .errors import GapClosed, NonPositiveArgument, OriginSingularity

EULER_GAMMA = 0.57721566490153286061
_SERIES_TERMS = 24
_CF_EPS = 1e-16
_CF_MAXIT = 10_000

_KFACT = np.array([math.factorial(k) for k in range(_SERIES_TERMS + 2)], dtype=float)
_HARMONIC = np.concatenate([[0.0], np.cumsum(1.0 / np.arange(1, _SERIES_TERMS + 2))])


def _as_positive(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise NonPositiveArgument("modified Bessel K needs x > 0")
    return x


def _series_k01(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    q = 0.25 * x * x
    lg = np.log(0.5 * x)
    i0 = np.zeros_like(x)
    i1 = np.zeros_like(x)
    s0 = np.zeros_like(x)
    s1 = np.zeros_like(x)
    qk = np.ones_like(x)
    for k in range(_SERIES_TERMS):
        w0 = qk / (_KFACT[k] * _KFACT[k])
        w1 = qk / (_KFACT[k] * _KFACT[k + 1])
        i0 += w0
        i1 += w1
        s0 += w0 * _HARMONIC[k]
        # psi(k+1) + psi(k+2) = -2 gamma + H_k + H_{k+1}
        s1 += w1 * (-2 * EULER_GAMMA + _HARMONIC[k] + _HARMONIC[k + 1])
        qk = qk * q
    i1 *= 0.5 * x
    k0 = -(lg + EULER_GAMMA) * i0 + s0
    k1 = 1.0 / x + lg * i1 - 0.25 * x * s1
    return k0, k1


def _cf2_k01_scaled(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """exp(x) K0(x), exp(x) K1(x) by Steed's CF2 (order 0)."""
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = d.copy()
    delh = d.copy()
    q1 = np.zeros_like(x)
    q2 = np.ones_like(x)
    a1 = 0.25
    q = np.full_like(x, a1)
    c = np.full_like(x, a1)
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, _CF_MAXIT):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q = q + c * qnew
        b = b + 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h = h + delh
        dels = q * delh
        s = s + dels
        if np.all(np.abs(dels / s) < _CF_EPS):
            break
    h = a1 * h
    k0e = np.sqrt(np.pi / (2.0 * x)) / s
    k1e = k0e * (x + 0.5 - h) / x
    return k0e, k1e


def _k01(x, scaled: bool = False):
    x = _as_positive(x)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    k0 = np.empty_like(x)
    k1 = np.empty_like(x)
    small = x <= 2.0
    if np.any(small):
        a, b = _series_k01(x[small])
        if scaled:
            e = np.exp(x[small])
            a, b = a * e, b * e
        k0[small], k1[small] = a, b
    if np.any(~small):
        a, b = _cf2_k01_scaled(x[~small])
        if not scaled:
            e = np.exp(-x[~small])
            a, b = a * e, b * e
        k0[~small], k1[~small] = a, b
    if scalar:
        return float(k0[0]), float(k1[0])
    return k0, k1


def bessel_k0(x):
    return _k01(x)[0]


def bessel_k1(x):
    return _k01(x)[1]


def bessel_kn(n: int, x, scaled: bool = False):
    """K_n(x) for integer n by upward recurrence (stable for K)."""
    n = abs(int(n))
    k0, k1 = _k01(x, scaled)
    if n == 0:
        return k0
    x = np.asarray(x, dtype=float)
    km, k = k0, k1
    for j in range(1, n):
        km, k = k, km + (2.0 * j / x) * k
    return k


def bessel_k_integral(nu: float, x: float) -> float:
    """Independent check value: K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt."""
    if not x > 0:
        raise NonPositiveArgument("modified Bessel K needs x > 0")
    # integrand is below 1e-300 once x (cosh t - 1) > 700
    t_max = math.acosh(1.0 + 720.0 / x)
    val, _ = integrate.quad(lambda t: math.exp(-x * (math.cosh(t) - 1.0)) * math.cosh(nu * t),
                            0.0, t_max, epsabs=0.0, epsrel=2e-14, limit=400)
    return val * math.exp(-x)


@dataclass(frozen=True)
class GreenKernel:
    """Kernel of (D + m sigma_3 - omega)^{-1} on the plane."""

    params: PhysParams

    def __post_init__(self):
        if not self.params.m**2 > self.params.omega**2:
            raise GapClosed("Green's kernel needs m^2 > omega^2")

    @property
    def mu(self) -> float:
        return math.sqrt(self.params.m**2 - self.params.omega**2)

    def scalar(self, x):
        return green_scalar(x, self.params)

    def __call__(self, x):
        return gamma_kernel(x, self.params)


def _radius(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != 2:
        raise ValueError("points must have a trailing dimension of length 2")
    r = np.hypot(x[..., 0], x[..., 1])
    if np.any(r == 0):
        raise OriginSingularity("Green's kernel is singular at x = 0")
    return r


def _mu(params: PhysParams) -> float:
    if not params.m**2 > params.omega**2:
        raise GapClosed("Green's kernel needs m^2 > omega^2")
    return math.sqrt(params.m**2 - params.omega**2)


def green_scalar(x, params: PhysParams):
    """G(x) = K0(mu |x|) / (2 pi), the kernel of (-Delta + mu^2)^{-1}."""
    mu = _mu(params)
    r = _radius(x)
    return bessel_k0(mu * r) / (2 * math.pi)


def gamma_kernel(x, params: PhysParams) -> np.ndarray:
    """Gamma(x) = (D + m sigma_3 + omega) G(x)
             = (m sigma_3 + omega) G + (i mu / 2 pi) K1(mu |x|) sigma . x/|x|.

    Returns an array of shape x.shape[:-1] + (2, 2)."""
    mu = _mu(params)
    x = np.asarray(x, dtype=float)
    r = _radius(x)
    k0, k1 = _k01(mu * r)
    G = np.asarray(k0) / (2 * math.pi)
    odd = 1j * mu / (2 * math.pi) * np.asarray(k1) / r
    diag = params.m * SIGMA3 + params.omega * np.eye(2)
    out = (G[..., None, None] * diag
           + odd[..., None, None] * (x[..., 0, None, None] * SIGMA1
                                     + x[..., 1, None, None] * SIGMA2))
    return out


def gamma_kernel_fft(params: PhysParams, n: int, L: float, t_smooth: float) -> np.ndarray:
    """Gamma on the grid from its Fourier symbol (D_m(p) + omega) / (|p|^2 + mu^2).

    The symbol is damped by exp(-(|p|^2 + mu^2) t_smooth); in real space this
    changes G only by a term bounded by exp(-|x|^2 / (4 t_smooth)), so away
    from the origin the result is Gamma up to that term and periodic images.
    Returns shape (2, 2, n, n) on the standard grid (origin at index n/2).
    """
    mu = _mu(params)
    k = np.fft.fftfreq(n, d=L / n) * 2 * np.pi
    P1, P2 = np.meshgrid(k, k, indexing="ij")
    p2 = P1**2 + P2**2
    damp = np.exp(-(p2 + mu**2) * t_smooth) / (p2 + mu**2)
    m, w = params.m, params.omega
    sym = np.empty((2, 2, n, n), dtype=complex)
    sym[0, 0] = (m + w) * damp
    sym[1, 1] = (-m + w) * damp
    sym[0, 1] = (P1 - 1j * P2) * damp
    sym[1, 0] = (P1 + 1j * P2) * damp
    # grid point j sits at x = j L/n before the shift
    real = np.fft.ifft2(sym, axes=(-2, -1)) * (n / L) ** 2
    return np.fft.fftshift(real, axes=(-2, -1))


def origin_cell_average_G(params: PhysParams, h: float, order: int = 40,
                          core: float = 1e-6) -> float:
    """Average of G over the square cell [-h/2, h/2]^2 (2D Gauss quadrature in
    polar coordinates over the eight symmetric triangles)."""
    mu = _mu(params)
    nodes, weights = np.polynomial.legendre.leggauss(order)
    th = (nodes + 1) * (math.pi / 8)
    wth = weights * (math.pi / 8)
    total = 0.0
    for t, wt in zip(th, wth):
        rmax = 0.5 * h / math.cos(t)
        # split the radial range geometrically to resolve the log singularity
        edges = np.geomspace(core, rmax, 12)
        for a, b in zip(edges[:-1], edges[1:]):
            rr = 0.5 * (b - a) * (nodes + 1) + a
            total += wt * 0.5 * (b - a) * np.sum(weights * bessel_k0(mu * rr) * rr)
    return 8 * total / (2 * math.pi) / h**2


def sampled_kernel(params: PhysParams, n: int, L: float) -> np.ndarray:
    """Gamma sampled on the grid for convolution; the singular origin cell
    holds the cell average (the odd part averages to zero)."""
    X, Y = grid_coords(n, L)
    pts = np.stack([X, Y], axis=-1)
    origin = (X == 0) & (Y == 0)
    pts[origin] = (1.0, 0.0)
    ker = gamma_kernel(pts, params)
    avg = origin_cell_average_G(params, L / n)
    ker[origin] = avg * (params.m * SIGMA3 + params.omega * np.eye(2))
    return np.moveaxis(ker, (-2, -1), (0, 1))


def convolve_kernel(values: np.ndarray, kernel: np.ndarray, L: float) -> np.ndarray:
    """Periodic grid convolution sum_y Gamma(x - y) f(y) h^2 of a (2, n, n)
    field with a (2, 2, n, n) kernel centred at index n/2."""
    n = values.shape[-1]
    h2 = (L / n) ** 2
    kc = np.fft.ifftshift(kernel, axes=(-2, -1))
    kf = np.fft.fft2(kc, axes=(-2, -1))
    ff = np.fft.fft2(values, axes=(-2, -1))
    out = np.einsum("ijab,jab->iab", kf, ff)
    return np.fft.ifft2(out, axes=(-2, -1)) * h2


def weak_l2_profile(params: PhysParams, eps_list) -> np.ndarray:
    """int_{eps < |x| < 1} |Gamma|_F^2 dx for each eps (radial quadrature)."""
    def density(r):
        pts = np.stack([r, np.zeros_like(r)], axis=-1)
        g = gamma_kernel(pts, params)
        return np.sum(np.abs(g) ** 2, axis=(-2, -1))

    out = []
    for eps in eps_list:
        val, _ = integrate.quad(lambda s: float(density(np.array([math.exp(s)]))[0])
                                * math.exp(2 * s), math.log(eps), 0.0, epsrel=1e-12, limit=200)
        out.append(2 * math.pi * val)
    return np.array(out)
