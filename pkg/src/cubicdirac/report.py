"""Named diagnostics with tolerances and pass/fail flags, exported as JSON."""
from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class Entry:
    name: str
    value: Any
    kind: str  # abs | rel | upper | lower | info | skipped
    target: Optional[float] = None
    tolerance: Optional[float] = None
    passed: Optional[bool] = None
    note: str = ""

    @property
    def asserted(self) -> bool:
        return self.kind in ("abs", "rel", "upper", "lower")


def _finite(x) -> bool:
    return isinstance(x, (int, float)) and math.isfinite(x)


@dataclass
class DiagnosticsReport:
    title: str = ""
    entries: List[Entry] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)

    def close(self, name: str, value: float, target: float, tol: float,
              relative: bool = False, note: str = "") -> Entry:
        err = abs(value - target)
        if relative:
            err /= abs(target) if target != 0 else 1.0
        ok = _finite(value) and err <= tol
        return self._add(Entry(name, value, "rel" if relative else "abs", target, tol, ok, note))

    def upper(self, name: str, value: float, bound: float, strict: bool = False,
              note: str = "") -> Entry:
        """Pass iff value <= bound (< when strict)."""
        ok = _finite(value) and (value < bound if strict else value <= bound)
        return self._add(Entry(name, value, "upper", bound, bound, ok, note))

    def lower(self, name: str, value: float, bound: float, strict: bool = False,
              note: str = "") -> Entry:
        """Pass iff value >= bound (> when strict)."""
        ok = _finite(value) and (value > bound if strict else value >= bound)
        return self._add(Entry(name, value, "lower", bound, bound, ok, note))

    def info(self, name: str, value: Any, note: str = "") -> Entry:
        return self._add(Entry(name, value, "info", note=note))

    def skipped(self, name: str, note: str) -> Entry:
        return self._add(Entry(name, None, "skipped", note=note))

    def _add(self, e: Entry) -> Entry:
        if isinstance(e.value, float) or hasattr(e.value, "item"):
            e.value = float(e.value)
        self.entries.append(e)
        return e

    def extend(self, other: "DiagnosticsReport", prefix: str = "") -> None:
        for e in other.entries:
            self.entries.append(Entry(prefix + e.name, e.value, e.kind, e.target, e.tolerance,
                                      e.passed, e.note))

    def __getitem__(self, name: str) -> Entry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def value(self, name: str):
        return self[name].value

    @property
    def all_passed(self) -> bool:
        return all(e.passed for e in self.entries if e.asserted)

    def failures(self) -> List[Entry]:
        return [e for e in self.entries if e.asserted and not e.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {"title": self.title, "all_passed": self.all_passed,
                "entries": [asdict(e) for e in self.entries], "meta": dict(self.meta)}

    def to_json(self, indent: int = 2) -> str:
        # Python's float repr is the shortest string that round-trips exactly
        return json.dumps(self.to_dict(), indent=indent, allow_nan=True, default=_json_default)

    def summary_lines(self) -> List[str]:
        out = []
        for e in self.entries:
            flag = {True: "PASS", False: "FAIL", None: "----"}[e.passed]
            val = "-" if e.value is None else (f"{e.value:.10g}" if isinstance(e.value, float)
                                               else str(e.value))
            tgt = "" if e.target is None else f" (target {e.target:.6g})"
            note = f"  [{e.note}]" if e.note else ""
            out.append(f"{flag} {e.name} = {val}{tgt}{note}")
        return out


def _json_default(obj):
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if hasattr(obj, "value"):
        return obj.value
    raise TypeError(f"not JSON serialisable: {type(obj).__name__}")


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        return False
