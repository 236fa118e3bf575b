"""Check reports shared by every verification routine and the CLI."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
INFO = "info"  # diagnostic line; never affects the exit code


@lru_cache(maxsize=None)
def anchors() -> dict[str, str]:
    """Citation labels keyed by check name, loaded from package data."""
    text = resources.files("polyharmonic").joinpath("data/anchors.json").read_text(encoding="utf-8")
    return json.loads(text)


def _jsonable(v: Any) -> Any:
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (str, bool, int)) or v is None:
        return v
    try:
        f = float(v)
    except (TypeError, ValueError):
        return str(v)
    return f


def _as_float_list(v: Any) -> list[complex]:
    if isinstance(v, (list, tuple)):
        return [complex(x) for x in v]
    return [complex(v)]


@dataclass
class CheckReport:
    """Outcome of one numerical or exact verification.

    ``computed`` and ``reference`` are scalars or equal-length lists; when the
    check is a self-consistency statement (a spread, a defect) the reference is
    the number zero and ``computed`` is the measured defect.
    """

    name: str
    inputs: dict
    computed: Any
    reference: Any
    tolerance: float
    paper_anchor: str = ""
    passed: bool | None = None
    runtime_s: float = 0.0
    precision_digits: int = 15
    status: str = ""
    breakdown: dict = field(default_factory=dict)
    note: str = ""

    def __post_init__(self) -> None:
        if not self.paper_anchor:
            self.paper_anchor = anchors().get(self.name, "")
        if self.passed is None:
            self.passed = self.within_tolerance()
        if not self.status:
            self.status = PASS if self.passed else FAIL

    def within_tolerance(self) -> bool:
        c = _as_float_list(self.computed)
        r = _as_float_list(self.reference)
        if len(r) == 1 and len(c) > 1:
            r = r * len(c)
        if len(c) != len(r):
            return False
        for a, b in zip(c, r):
            d = abs(a - b)
            if not math.isfinite(d) or d > self.tolerance:
                return False
        return True

    def mark_inconclusive(self, reason: str) -> None:
        self.status = INCONCLUSIVE
        self.passed = False
        self.note = (self.note + "; " if self.note else "") + reason

    def mark_info(self, reason: str) -> None:
        self.status = INFO
        self.note = (self.note + "; " if self.note else "") + reason

    @property
    def max_defect(self) -> float:
        c = _as_float_list(self.computed)
        r = _as_float_list(self.reference)
        if len(r) == 1 and len(c) > 1:
            r = r * len(c)
        return max(abs(a - b) for a, b in zip(c, r)) if c and len(c) == len(r) else float("nan")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["computed"] = _jsonable(self.computed)
        d["reference"] = _jsonable(self.reference)
        d["inputs"] = _jsonable(self.inputs)
        d["breakdown"] = _jsonable(self.breakdown)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def schema_dict(self) -> dict:
        """Flat form {name, inputs, value, reference, tolerance, pass, runtime_s, breakdown}."""
        return {
            "name": self.name,
            "inputs": _jsonable(self.inputs),
            "value": _jsonable(self.computed),
            "reference": _jsonable(self.reference),
            "tolerance": self.tolerance,
            "pass": bool(self.passed),
            "status": self.status,
            "runtime_s": self.runtime_s,
            "breakdown": _jsonable(self.breakdown),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CheckReport":
        def back(v):
            if isinstance(v, dict) and set(v) == {"re", "im"}:
                return complex(v["re"], v["im"])
            if isinstance(v, list):
                return [back(x) for x in v]
            return v

        kw = dict(d)
        kw["computed"] = back(kw["computed"])
        kw["reference"] = back(kw["reference"])
        return cls(**kw)

    @classmethod
    def from_json(cls, s: str) -> "CheckReport":
        return cls.from_dict(json.loads(s))

    def line(self) -> str:
        tag = self.status.upper()
        if self.status == INFO:
            tag += " within tol" if self.within_tolerance() else " outside tol"
        out = f"[{tag}] {self.name}: defect={self.max_defect:.3e} tol={self.tolerance:.1e} ({self.runtime_s:.2f}s)"
        return out + (f"  # {self.note}" if self.note else "")


def exit_code(reports: list[CheckReport]) -> int:
    if any(r.status == FAIL for r in reports):
        return 1
    if any(r.status == INCONCLUSIVE for r in reports):
        return 2
    return 0
