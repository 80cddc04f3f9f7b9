"""Exponential tail rates and derivative identities along radial solutions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .domain import PhysParams, RadialProfile, _origin_exponents
from .errors import WindowNotFound
from .radial import _FD6_OFFSETS, _FD6_WEIGHTS, rhs
from .report import DiagnosticsReport


@dataclass(frozen=True)
class DecayFit:
    window: Tuple[float, float]
    rate: float
    intercept: float
    rms_residual: float
    n_points: int

    def __post_init__(self):
        if not self.window[0] < self.window[1]:
            raise ValueError("fit window must satisfy r1 < r2")


def tail_fit(profile: RadialProfile, band: Tuple[float, float] = (1e-10, 1e-4),
             min_points: int = 8) -> DecayFit:
    """Least-squares line through (r, log |psi|) where |psi| lies in ``band``
    beyond the amplitude peak; rate = -slope."""
    amp = profile.amplitude
    peak = int(np.argmax(amp))
    r = profile.r[peak:]
    a = amp[peak:]
    lo, hi = band
    sel = (a >= lo) & (a <= hi)
    if np.count_nonzero(sel) < min_points:
        raise WindowNotFound(f"fewer than {min_points} samples with amplitude in [{lo:g}, {hi:g}]")
    x = r[sel]
    y = np.log(a[sel])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return DecayFit((float(x[0]), float(x[-1])), float(-slope), float(intercept),
                    float(np.sqrt(np.mean(resid**2))), int(x.size))


def _fd_uniform(y: np.ndarray, h: float) -> np.ndarray:
    """6th-order first derivative at interior samples 3..n-4."""
    n = y.size
    d = np.zeros(n - 6)
    for off, w in zip(_FD6_OFFSETS, _FD6_WEIGHTS):
        d += w * y[3 + off:n - 3 + off]
    return d / h


def _uniform_step(r: np.ndarray) -> float:
    h = np.diff(r)
    if not np.allclose(h, h[0], rtol=1e-6, atol=0):
        raise ValueError("identity checks need a uniformly sampled profile")
    return float(h[0])


def _rms(x: np.ndarray) -> float:
    return float(np.sqrt(np.mean(x**2))) if x.size else 0.0


def second_derivatives(r, u, v, du, dv, params: PhysParams):
    """(u'', v'') from differentiating the radial system once more."""
    S, m, w = params.S, params.m, params.omega
    f = u * u + v * v
    df = 2 * (u * du + v * dv)
    d2u = (S + 1) * u / r**2 - (S + 1) * du / r + df * v + (f - (m - w)) * dv
    d2v = -S * v / r**2 + S * dv / r - df * u - (f + (m + w)) * du
    return d2u, d2v


def identity_residuals(profile: RadialProfile, params: PhysParams) -> dict:
    """RMS residuals of the derivative identities against 6th-order
    differences of the samples (interior samples only)."""
    r, u, v = profile.r, profile.u, profile.v
    h = _uniform_step(r)
    S, m, w = params.S, params.m, params.omega
    sl = slice(3, r.size - 3)
    ri, ui, vi = r[sl], u[sl], v[sl]
    f = u * u + v * v

    d_uv = _fd_uniform(u * v, h)
    uv_rhs = (-ui * vi / ri + (vi**2 - ui**2) * (ui**2 + vi**2) - (m - w) * vi**2
              - (m + w) * ui**2)

    d_f = _fd_uniform(f, h)
    f_rhs = -2 * (S + 1) * ui**2 / ri + 2 * S * vi**2 / ri - 4 * m * ui * vi
    # the same identity without the factor 2
    f_printed = -(S + 1) * ui**2 / ri + S * vi**2 / ri - 2 * m * ui * vi

    du, dv = rhs(r, u, v, m, w, S)
    d2u, d2v = second_derivatives(r, u, v, du, dv, params)
    f2_rhs = 2 * (u * d2u + v * d2v + du**2 + dv**2)
    d2_f = (f[2:] - 2 * f[1:-1] + f[:-2]) / h**2
    # second differences are only 2nd order; compare at samples away from the ends
    f2_res = d2_f[2:-2] - f2_rhs[3:-3]

    return {
        "uv": _rms(d_uv - uv_rhs),
        "f_prime": _rms(d_f - f_rhs),
        "f_prime_printed": _rms(d_f - f_printed),
        "f_second": _rms(f2_res),
        "uv_scale": _rms(uv_rhs),
        "f_scale": _rms(f_rhs),
    }


def origin_behaviour(profile: RadialProfile, S: int, n_samples: int = 10) -> dict:
    """|psi(r)| / r^k over the first samples, k the smallest regular-branch
    exponent; bounded ratios and k >= 1 give psi(0) = 0."""
    pu, pv = _origin_exponents(S)
    k = min(pu, pv)
    r = profile.r[:n_samples]
    ratio = profile.amplitude[:n_samples] / r**k
    lo, hi = float(np.min(ratio)), float(np.max(ratio))
    return {
        "exponent": k,
        "ratio_min": lo,
        "ratio_max": hi,
        "ratio_spread": (hi - lo) / hi if hi > 0 else 0.0,
        "psi_origin": 0.0 if k >= 1 else float(profile.amplitude[0]),
    }


def identity_checks(profile: RadialProfile, params: PhysParams, tol: float = 1e-6
                    ) -> DiagnosticsReport:
    res = identity_residuals(profile, params)
    org = origin_behaviour(profile, params.S)
    rep = DiagnosticsReport(title=f"identities m={params.m} omega={params.omega} S={params.S}")
    rep.upper("uv_identity_rms", res["uv"], tol)
    rep.upper("f_prime_identity_rms", res["f_prime"], tol,
              note="f' = -2(S+1)u^2/r + 2S v^2/r - 4m uv")
    rep.info("f_prime_without_factor_2_rms", res["f_prime_printed"],
             note="half of the derived right-hand side; reported only")
    rep.info("f_second_surrogate_rms", res["f_second"],
             note="2nd-order differences of f vs 2(u u'' + v v'' + u'^2 + v'^2)")
    rep.info("origin_exponent", org["exponent"])
    rep.upper("origin_ratio_spread", org["ratio_spread"], 0.1,
              note="|psi|/r^k over the first samples stays bounded")
    rep.close("psi_at_origin", org["psi_origin"], 0.0, 0.0)
    return rep


def decay_report(profile: RadialProfile, params: PhysParams) -> DiagnosticsReport:
    fit = tail_fit(profile)
    mu = params.mu
    bound = math.sqrt(params.m - params.omega) / 2
    rep = DiagnosticsReport(title=f"decay m={params.m} omega={params.omega} S={params.S}")
    rep.info("rate", fit.rate)
    rep.info("window", list(fit.window))
    rep.info("fit_rms", fit.rms_residual)
    rep.lower("rate_vs_bound", fit.rate, bound, note="sqrt(m - omega)/2")
    rep.info("rate_relative_to_mu", abs(fit.rate - mu) / mu,
             note="soft check: within 0.05 expected")
    return rep
