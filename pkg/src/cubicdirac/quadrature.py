"""Radial quadrature on logarithmic scales.

All radial integrals in this package have the form 2*pi * int g(r) r dr with
integrands that are smooth in s = ln r, so both routines below work in s.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicSpline

from .errors import QuadratureNotConverged


@lru_cache(maxsize=None)
def _gauss_legendre(order: int):
    return np.polynomial.legendre.leggauss(order)


def log_panel_quad(func, r_min: float = 1e-6, r_max: float = 1e6, tol: float = 1e-13,
                   panels: int = 16, order: int = 16, max_doublings: int = 10) -> float:
    """int_{r_min}^{r_max} func(r) r dr by Gauss-Legendre panels on log-spaced
    breakpoints, doubling the panel count until the relative change is < tol."""
    nodes, weights = _gauss_legendre(order)
    s0, s1 = math.log(r_min), math.log(r_max)

    def estimate(npanel):
        edges = np.linspace(s0, s1, npanel + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        s = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
        w = (half[:, None] * weights[None, :]).ravel()
        r = np.exp(s)
        return float(np.sum(w * np.asarray(func(r)) * r * r))

    prev = estimate(panels)
    for _ in range(max_doublings):
        panels *= 2
        cur = estimate(panels)
        if abs(cur - prev) <= tol * max(abs(cur), 1e-300):
            return cur
        if cur == 0.0 and prev == 0.0:
            return 0.0
        prev = cur
    raise QuadratureNotConverged(
        f"panel quadrature did not reach tol={tol:g} with {panels} panels "
        f"(last change {abs(cur - prev):.3e})"
    )


def sample_integral(r: np.ndarray, g: np.ndarray) -> float:
    """int g(r) r dr over the sampled range, via a cubic spline in ln r."""
    r = np.asarray(r, dtype=float)
    s = np.log(r)
    y = np.asarray(g, dtype=float) * r * r
    return float(CubicSpline(s, y).integrate(s[0], s[-1]))


def log_trapezoid(func, r_min: float, r_max: float, n: int) -> float:
    """Plain trapezoid rule in ln r; used as an independent brute-force check."""
    s = np.linspace(math.log(r_min), math.log(r_max), n)
    r = np.exp(s)
    y = np.asarray(func(r)) * r * r
    return float(integrate.trapezoid(y, s))
