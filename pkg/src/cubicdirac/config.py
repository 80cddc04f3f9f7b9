"""Run configuration: a TOML file with optional sections, overridden by flags.

    [params]   m, omega, S
    [shooting] any ShootingConfig field (r0, R, dr, rtol, tol_c, ...)
    [grid]     n, L
    [dual]     eps = [0.05, 0.1, 0.2], n, L
    [output]   prefix
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any, Dict, Optional, Tuple

import tomli

from .shooting import ShootingConfig


@dataclass(frozen=True)
class GridConfig:
    n: int = 512
    L: float = 60.0

    def __post_init__(self):
        if self.n < 8 or self.n & (self.n - 1):
            raise ValueError(f"grid n must be a power of two >= 8, got {self.n}")
        if not self.L > 0:
            raise ValueError("grid extent must be positive")


@dataclass(frozen=True)
class RunConfig:
    m: float = 1.0
    omega: float = 0.0
    S: Tuple[int, ...] = (1,)
    shooting: ShootingConfig = field(default_factory=ShootingConfig)
    grid: GridConfig = field(default_factory=GridConfig)
    dual_grid: GridConfig = field(default_factory=lambda: GridConfig(512, 12.0))
    eps: Tuple[float, ...] = (0.05, 0.1, 0.2)
    delta: Tuple[float, ...] = (0.5, 2.0)
    tol: Optional[float] = None
    out_prefix: str = "cubicdirac"

    @property
    def spin(self) -> int:
        return self.S[0]

    def to_dict(self) -> Dict[str, Any]:
        d = asdict(self)
        d["S"] = list(self.S)
        d["eps"] = list(self.eps)
        d["delta"] = list(self.delta)
        return d

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, default=repr).encode()
        return hashlib.sha256(blob).hexdigest()


def _as_tuple(x, cast) -> tuple:
    if isinstance(x, (list, tuple)):
        return tuple(cast(v) for v in x)
    if isinstance(x, str):
        return tuple(cast(v) for v in x.split(",") if v.strip())
    return (cast(x),)


def _shooting_from(d: Dict[str, Any], base: ShootingConfig) -> ShootingConfig:
    known = {f.name for f in fields(ShootingConfig)}
    bad = set(d) - known
    if bad:
        raise ValueError(f"unknown [shooting] keys: {sorted(bad)}")
    if "c_bracket" in d:
        d = dict(d, c_bracket=tuple(d["c_bracket"]))
    return replace(base, **d)


def load_toml(path: str) -> Dict[str, Any]:
    with open(path, "rb") as fh:
        return tomli.load(fh)


def build_config(file_data: Optional[Dict[str, Any]] = None,
                 overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """Merge file sections and flag overrides (flags win) into a RunConfig."""
    data = file_data or {}
    ov = {k: v for k, v in (overrides or {}).items() if v is not None}
    known = {"params", "shooting", "grid", "dual", "output", "tol", "delta"}
    bad = set(data) - known
    if bad:
        raise ValueError(f"unknown config sections: {sorted(bad)}")

    params = dict(data.get("params", {}))
    m = float(ov.get("mass", params.get("m", 1.0)))
    omega = float(ov.get("omega", params.get("omega", 0.0)))
    S = _as_tuple(ov.get("spin", params.get("S", 1)), int)

    shooting = _shooting_from(dict(data.get("shooting", {})), ShootingConfig())
    if "rmax" in ov:
        shooting = replace(shooting, R=float(ov["rmax"]))
    tol = ov.get("tol", data.get("tol"))
    if tol is not None:
        shooting = replace(shooting, rtol=float(tol))

    g = dict(data.get("grid", {}))
    grid = GridConfig(int(ov.get("grid_n", g.get("n", 512))), float(ov.get("extent", g.get("L", 60.0))))
    dd = dict(data.get("dual", {}))
    dual_grid = GridConfig(int(ov.get("grid_n", dd.get("n", 512))),
                           float(ov.get("extent", dd.get("L", 12.0))))
    eps = _as_tuple(ov.get("eps", dd.get("eps", (0.05, 0.1, 0.2))), float)
    delta = _as_tuple(ov.get("delta", data.get("delta", (0.5, 2.0))), float)
    prefix = str(ov.get("out_prefix", data.get("output", {}).get("prefix", "cubicdirac")))
    return RunConfig(m, omega, S, shooting, grid, dual_grid, eps, delta,
                     None if tol is None else float(tol), prefix)
