"""The record produced by every identity check."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one identity check.

    ``passed`` holds iff ``abs_err <= tol`` or ``rel_err <= tol`` where
    ``rel_err = abs_err / max(1, |rhs|)``.  Failed evaluations carry NaN
    sides and an explanatory ``notes`` string.
    """

    check_id: str
    params: dict[str, Any]
    lhs: float
    rhs: float
    abs_err: float
    rel_err: float
    tol: float
    passed: bool
    notes: str = ""

    @classmethod
    def compare(
        cls,
        check_id: str,
        params: dict[str, Any],
        lhs: float,
        rhs: float,
        tol: float,
        notes: str = "",
    ) -> "CheckReport":
        lhs = float(lhs)
        rhs = float(rhs)
        abs_err = abs(lhs - rhs)
        rel_err = abs_err / max(1.0, abs(rhs))
        passed = bool(abs_err <= tol or rel_err <= tol)
        return cls(check_id, dict(params), lhs, rhs, abs_err, rel_err, float(tol), passed, notes)

    @classmethod
    def failure(cls, check_id: str, params: dict[str, Any], tol: float, notes: str) -> "CheckReport":
        nan = math.nan
        return cls(check_id, dict(params), nan, nan, nan, nan, float(tol), False, notes)

    def to_dict(self) -> dict[str, Any]:
        return {
            "check_id": self.check_id,
            "params": dict(self.params),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "tol": self.tol,
            "pass": self.passed,
            "notes": self.notes,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CheckReport":
        def num(v):
            return math.nan if v is None else float(v)

        return cls(
            d["check_id"],
            dict(d["params"]),
            num(d["lhs"]),
            num(d["rhs"]),
            num(d["abs_err"]),
            num(d["rel_err"]),
            num(d["tol"]),
            bool(d["pass"]),
            d.get("notes", ""),
        )
