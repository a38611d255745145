"""Dual numeric backend: exact rationals or floats carried in log space."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

LOG2 = math.log(2.0)


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


def infer_mode(*values) -> str:
    """Exact iff every given number is an int or Fraction."""
    if all(isinstance(x, (int, Fraction)) for x in values if x is not None):
        return EXACT
    return FLOAT


def convert(x, mode: str):
    if mode == EXACT:
        return x if isinstance(x, (int, Fraction)) else Fraction(x)
    return float(x)


def parse_number(text: str) -> Fraction | float:
    """``"1/2"`` -> Fraction, ``"0.3"`` -> float."""
    text = text.strip()
    if "/" in text:
        return Fraction(text)
    return float(text)


def log_of(x) -> float:
    """Natural log of a non-negative int, Fraction or float; log 0 = -inf.

    Rationals are scaled by a power of two first so that huge numerators and
    denominators do not lose relative precision.
    """
    if x == 0:
        return -math.inf
    if x < 0:
        raise ValueError(f"log of negative value {x}")
    if isinstance(x, float):
        return math.log(x)
    q = Fraction(x)
    num, den = q.numerator, q.denominator
    e = num.bit_length() - den.bit_length()
    if e >= 0:
        m = Fraction(num, den << e)
    else:
        m = Fraction(num << -e, den)
    return math.log(float(m)) + e * LOG2


def logsumexp(logs: Iterable[float]) -> float:
    logs = [x for x in logs if x != -math.inf]
    if not logs:
        return -math.inf
    top = max(logs)
    return top + math.log(math.fsum(math.exp(x - top) for x in logs))


def logs_close(a: float, b: float, rel: float = 1e-12) -> bool:
    if math.isinf(a) or math.isinf(b):
        return a == b
    return math.isclose(a, b, rel_tol=rel, abs_tol=0.0) or a == b
