"""Inequality reports and the verdict rule shared by every verifier."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

INDETERMINATE_BAND = 1e-9

HOLDS = "holds"
VIOLATED = "violated"
INDETERMINATE = "indeterminate"


def slack_of(lhs_log: float, rhs_log: float) -> float:
    if lhs_log == -math.inf and rhs_log == -math.inf:
        return 0.0
    return rhs_log - lhs_log


def decide(lhs_log: float, rhs_log: float, exact_holds: bool | None = None) -> str:
    """Verdict for lhs <= rhs.

    With an exact comparison available it is final; otherwise float verdicts
    whose relative gap is below INDETERMINATE_BAND are left undecided.
    """
    if exact_holds is not None:
        return HOLDS if exact_holds else VIOLATED
    if lhs_log == -math.inf:
        return HOLDS
    if rhs_log == -math.inf:
        return VIOLATED
    slack = rhs_log - lhs_log
    if -math.expm1(-abs(slack)) < INDETERMINATE_BAND:
        return INDETERMINATE
    return HOLDS if slack > 0 else VIOLATED


def json_float(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _exact_str(x) -> str | None:
    if x is None:
        return None
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    return str(x)


@dataclass
class InequalityReport:
    theorem_id: str
    inputs: dict[str, Any]
    lhs_log: float
    rhs_log: float
    verdict: str
    mode: str
    lhs: Any = None  # exact value, when the mode provides one
    rhs: Any = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def slack_log(self) -> float:
        return slack_of(self.lhs_log, self.rhs_log)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_json(self) -> dict:
        out = {
            "theorem_id": self.theorem_id,
            "inputs": self.inputs,
            "lhs_log": json_float(self.lhs_log),
            "rhs_log": json_float(self.rhs_log),
            "holds": {HOLDS: True, VIOLATED: False}.get(self.verdict, INDETERMINATE),
            "slack_log": json_float(self.slack_log),
            "mode": self.mode,
        }
        if self.lhs is not None:
            out["lhs_exact"] = _exact_str(self.lhs)
        if self.rhs is not None:
            out["rhs_exact"] = _exact_str(self.rhs)
        return out


def build_report(theorem_id, inputs, lhs_log, rhs_log, mode, lhs=None, rhs=None,
                 exact_holds=None, details=None) -> InequalityReport:
    return InequalityReport(theorem_id, inputs, lhs_log, rhs_log,
                            decide(lhs_log, rhs_log, exact_holds), mode,
                            lhs, rhs, details or {})
