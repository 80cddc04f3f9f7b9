"""Dormand-Prince 5(4) integrator with PI step-size control.

Written for small systems (the radial system has two unknowns), so states are
plain tuples of floats: numpy's per-call overhead dominates at this size.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import IntegratorStalled

# Butcher tableau (Dormand & Prince 1980)
C2, C3, C4, C5 = 1 / 5, 3 / 10, 4 / 5, 8 / 9
A21 = 1 / 5
A31, A32 = 3 / 40, 9 / 40
A41, A42, A43 = 44 / 45, -56 / 15, 32 / 9
A51, A52, A53, A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
A61, A62, A63, A64, A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
B1, B3, B4, B5, B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
# difference between the 5th- and embedded 4th-order weights
E1, E3, E4, E5, E6, E7 = (71 / 57600, -71 / 16695, 71 / 1920, -17253 / 339200,
                          22 / 525, -1 / 40)

SAFETY = 0.9
FAC_MIN, FAC_MAX = 0.2, 10.0
PI_BETA = 0.04
PI_ALPHA = 0.2 - 0.75 * PI_BETA


@dataclass
class Trajectory:
    t: List[float] = field(default_factory=list)
    y: List[Tuple[float, ...]] = field(default_factory=list)
    dy: List[Tuple[float, ...]] = field(default_factory=list)
    stopped: bool = False
    nfev: int = 0
    naccept: int = 0
    nreject: int = 0


def dopri5(f: Callable[[float, Sequence[float]], Tuple[float, ...]], t0: float,
           y0: Sequence[float], t_end: float, rtol: float = 1e-10, atol: float = 1e-12,
           h0: Optional[float] = None, t_eval: Optional[Sequence[float]] = None,
           callback: Optional[Callable] = None, max_steps: int = 1_000_000,
           record: bool = True) -> Trajectory:
    """Integrate y' = f(t, y) from t0 to t_end (t_end > t0).

    ``t_eval``: increasing output times; steps are shortened to land on them
    exactly and only those points are recorded. Otherwise every accepted step
    is recorded. ``callback(t, y, dy)`` is called after each accepted step and
    stops the integration by returning True.
    """
    y = tuple(float(v) for v in y0)
    n = len(y)
    t = float(t0)
    k1 = f(t, y)
    out = Trajectory(nfev=1)
    outputs = list(t_eval) if t_eval is not None else None
    oi = 0
    if outputs is not None:
        while oi < len(outputs) and outputs[oi] <= t:
            if record and outputs[oi] == t:
                out.t.append(t)
                out.y.append(y)
                out.dy.append(k1)
            oi += 1
    elif record:
        out.t.append(t)
        out.y.append(y)
        out.dy.append(k1)

    if h0 is None:
        d0 = math.sqrt(sum((yi / (atol + rtol * abs(yi))) ** 2 for yi in y) / n)
        d1 = math.sqrt(sum((ki / (atol + rtol * abs(yi))) ** 2 for ki, yi in zip(k1, y)) / n)
        h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
        h0 = min(h0, abs(t_end - t0))
    h = h0
    err_old = 1e-4
    rejected = False

    for _ in range(max_steps):
        if t >= t_end:
            break
        target = t_end
        if outputs is not None and oi < len(outputs):
            target = min(target, outputs[oi])
        land = t + h >= target
        step = target - t if land else h
        if step <= 1e-14 * max(abs(t), 1.0):
            raise IntegratorStalled(f"step size underflow at t={t:.17g} (h={step:.3e})")

        hs = step
        k2 = f(t + C2 * hs, tuple(y[i] + hs * A21 * k1[i] for i in range(n)))
        k3 = f(t + C3 * hs, tuple(y[i] + hs * (A31 * k1[i] + A32 * k2[i]) for i in range(n)))
        k4 = f(t + C4 * hs, tuple(y[i] + hs * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i])
                                 for i in range(n)))
        k5 = f(t + C5 * hs, tuple(y[i] + hs * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i]
                                             + A54 * k4[i]) for i in range(n)))
        k6 = f(t + hs, tuple(y[i] + hs * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i]
                                        + A65 * k5[i]) for i in range(n)))
        y_new = tuple(y[i] + hs * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i]
                                  + B6 * k6[i]) for i in range(n))
        k7 = f(t + hs, y_new)
        out.nfev += 6

        acc = 0.0
        for i in range(n):
            e = step * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i]
                        + E7 * k7[i])
            sc = atol + rtol * max(abs(y[i]), abs(y_new[i]))
            acc += (e / sc) ** 2
        err = math.sqrt(acc / n)
        if not math.isfinite(err):
            err = 1e10

        fac11 = err**PI_ALPHA if err > 0 else 0.0
        if err <= 1.0:
            # PI controller: h_new = h * SAFETY * err^-alpha * err_old^beta
            fac = fac11 / err_old**PI_BETA / SAFETY
            fac = max(1 / FAC_MAX, min(1 / FAC_MIN, fac))
            h_next = step / fac
            if rejected:
                h_next = min(h_next, step)
            err_old = max(err, 1e-4)
            t = target if land else t + step
            y, k1 = y_new, k7
            out.naccept += 1
            rejected = False
            if outputs is not None:
                if land and oi < len(outputs) and target == outputs[oi]:
                    if record:
                        out.t.append(t)
                        out.y.append(y)
                        out.dy.append(k1)
                    oi += 1
                    # a clipped step says nothing about the controller's step
                    h_next = max(h_next, h) if step < h else h_next
            elif record:
                out.t.append(t)
                out.y.append(y)
                out.dy.append(k1)
            h = h_next
            if callback is not None and callback(t, y, k1):
                out.stopped = True
                break
        else:
            h = step / min(1 / FAC_MIN, fac11 / SAFETY)
            rejected = True
            out.nreject += 1
    else:
        raise IntegratorStalled(f"exceeded max_steps={max_steps} at t={t:.6g}")
    return out
