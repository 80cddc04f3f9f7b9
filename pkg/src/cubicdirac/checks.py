"""Composite diagnostics used by the command line and the experiment scripts."""
from __future__ import annotations

import math
from dataclasses import replace
from typing import Iterable, Optional, Sequence

import numpy as np

from .bubbles import (BubbleSpec, bubble_energy, bubble_moment_M, bubble_residual,
                      bubble_threshold, scale_field)
from .decay import decay_report, identity_checks
from .domain import PhysParams, RadialProfile, grid_coords
from .greens import (bessel_k0, bessel_k1, bessel_k_integral, gamma_kernel, gamma_kernel_fft)
from .radial import action_radial, l2_squared
from .report import DiagnosticsReport
from .shooting import ShootingConfig, node_count
from .spectral import integral_residual


def bubble_report(S_list: Iterable[int], m: float = 1.0, omega: float = 0.0,
                  deltas: Sequence[float] = (0.5, 2.0)) -> DiagnosticsReport:
    rep = DiagnosticsReport(title="bubbles")
    rgrid = np.geomspace(1e-3, 1e3, 2000)
    massless = lambda S: PhysParams(0.0, 0.0, S)  # noqa: E731
    for S in S_list:
        tag = f"S={S}"
        beta = bubble_threshold(S)
        rep.close(f"energy[{tag}]", bubble_energy(S), beta, 1e-8, relative=True,
                  note="(1/4) int |Psi|^4 = |2S+1| pi")
        spec = BubbleSpec.canonical(S)
        rep.upper(f"residual[{tag}]", bubble_residual(spec, rgrid), 1e-6)
        base = action_radial(spec, massless(S))
        l2 = l2_squared(spec) if S != 0 else None
        for d in deltas:
            scaled = scale_field(spec, d)
            parts = action_radial(scaled, massless(S))
            rep.close(f"quartic_scaling[{tag},delta={d:g}]", parts.quartic, base.quartic, 1e-6,
                      relative=True)
            rep.close(f"dirac_form_scaling[{tag},delta={d:g}]", parts.kinetic, base.kinetic, 1e-6,
                      relative=True)
            if l2 is not None:
                ratio = math.sqrt(l2_squared(scaled) / l2)
                rep.close(f"l2_scaling[{tag},delta={d:g}]", ratio, d, 1e-10, relative=True)
        if S == 0:
            rep.skipped(f"M[{tag}]", "skipped: not square integrable")
        else:
            rep.info(f"M[{tag}]", bubble_moment_M(S, PhysParams(m, omega, S)))
    return rep


def solve_report(profile: RadialProfile, params: PhysParams, residual_rms_tol: float = 1e-8
                 ) -> DiagnosticsReport:
    meta = profile.meta
    parts = action_radial(profile, params)
    beta = bubble_threshold(params.S)
    rep = DiagnosticsReport(title=f"bound state m={params.m} omega={params.omega} S={params.S}")
    rep.info("c_star", meta["c_star"])
    rep.info("bisection_iterations", meta["iterations"])
    rep.info("r_match", meta["r_match"])
    rep.info("tail_amplitude", meta["tail_amplitude"])
    rep.upper("residual_rms", meta["residual_rms"], residual_rms_tol)
    rep.info("residual_max", meta["residual_max"])
    rep.upper("amplitude_at_R", meta["amplitude_R"], 1e-8)
    rep.info("kinetic", parts.kinetic)
    rep.info("mass_freq", parts.mass_freq)
    rep.info("quartic", parts.quartic)
    rep.close("virial", parts.kinetic + parts.mass_freq, parts.quartic, 1e-6, relative=True,
              note="kinetic + mass_freq = quartic")
    rep.lower("action_positive", parts.action, 0.0, strict=True)
    rep.upper("action_below_threshold", parts.action, beta, strict=True,
              note="|2S+1| pi")
    nu, nv = node_count(profile)
    rep.info("nodes_u", nu)
    rep.info("nodes_v", nv)
    return rep


def stability_report(params: PhysParams, cfg: ShootingConfig, c_star: float
                     ) -> DiagnosticsReport:
    from .shooting import solve_bound_state

    rep = DiagnosticsReport(title="halved-tolerance stability")
    again = solve_bound_state(params, cfg.halved())
    rep.upper("c_star_shift", abs(again.meta["c_star"] - c_star), 10 * cfg.tol_c,
              note="10 tol_c")
    return rep


def decay_identity_report(profile: RadialProfile, params: PhysParams) -> DiagnosticsReport:
    rep = decay_report(profile, params)
    rep.extend(identity_checks(profile, params))
    return rep


def integral_report(profile: RadialProfile, params: PhysParams, n: int, L: float
                    ) -> DiagnosticsReport:
    rep = DiagnosticsReport(title="integral form")
    rep.upper("integral_residual", integral_residual(profile, params, n, L), 1e-3)
    rep.info("integral_residual_single_grid", integral_residual(profile, params, n, L,
                                                                 oversample=1))
    rep.upper("discrete_inverse_residual",
              integral_residual(profile, params, n, L, source="operator", oversample=1), 1e-12)
    return rep


def greens_report(params: Optional[PhysParams] = None) -> DiagnosticsReport:
    params = params or PhysParams(1.0, 0.5, 1)
    rep = DiagnosticsReport(title="Bessel and Green's kernel")
    xs = np.geomspace(0.05, 20.0, 41)
    k0, k1 = bessel_k0(xs), bessel_k1(xs)
    o0 = np.array([bessel_k_integral(0, x) for x in xs])
    o1 = np.array([bessel_k_integral(1, x) for x in xs])
    rep.upper("k0_vs_integral", float(np.max(np.abs(k0 - o0) / o0)), 1e-9)
    rep.upper("k1_vs_integral", float(np.max(np.abs(k1 - o1) / o1)), 1e-9)
    xd = np.linspace(0.1, 10.0, 100)
    h = 1e-5
    fd = (bessel_k0(xd + h) - bessel_k0(xd - h)) / (2 * h)
    rep.upper("k0_derivative", float(np.max(np.abs(fd + bessel_k1(xd)))), 1e-6)
    n, L = 1024, 40.0
    G = gamma_kernel_fft(params, n, L, t_smooth=1 / 120)
    X, Y = grid_coords(n, L)
    r = np.hypot(X, Y)
    sel = (r >= 1.0) & (r <= 8.0)
    exact = gamma_kernel(np.stack([X[sel], Y[sel]], axis=-1), params)
    num = np.moveaxis(G[:, :, sel], -1, 0)
    rep.upper("gamma_vs_fft_symbol", float(np.max(np.abs(exact - num))), 1e-4)
    return rep


def shooting_for_grid(cfg: ShootingConfig, params: PhysParams, L: float) -> ShootingConfig:
    """Extend R so the profile reaches the corners of an extent-L grid."""
    R = cfg.R if cfg.R is not None else max(40.0 / params.mu, 20.0)
    return replace(cfg, R=max(R, L / math.sqrt(2) + 1.0))
