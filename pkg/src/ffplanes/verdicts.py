"""Small record types for exact pass/fail check results."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Verdict:
    """Outcome of one exact comparison.

    Both sides are rational integers after both were scaled by the stated
    power of q (clearing every q**-1 in the original statement), so the
    comparison is exact integer arithmetic.
    """

    check: str
    relation: str  # "==" or "<="
    lhs: int
    rhs: int
    cleared_power_of_q: int
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "check": self.check,
            "relation": self.relation,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "cleared_power_of_q": self.cleared_power_of_q,
            "pass": self.passed,
        }
