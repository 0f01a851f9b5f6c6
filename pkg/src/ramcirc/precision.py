"""Working-precision policy and exact-argument trigonometry.

IEEE doubles decide almost every comparison in this package.  Whenever a
margin lands inside the escalation window, the comparison is re-evaluated
with mpmath at a configurable number of digits, and every trigonometric
argument is first reduced modulo the period in exact integer arithmetic so
that accuracy survives moduli around 10**13 and far beyond.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp

from .errors import ValidationError

## doubles carry ~15.9 significant digits; above this modulus the
## comparisons made here cannot be trusted to a double at all, so the
## extended path is taken from the start.
AUTO_EXTENDED_THRESHOLD = 1 << 40


@dataclass(frozen=True)
class NumericPolicy:
    """How borderline comparisons are resolved.

    escalation_margin: absolute margin below which a double-precision
        comparison is considered unresolved and recomputed with mpmath.
    extended_digits: decimal digits used for the first extended pass
        (adaptively doubled if the margin is still below the noise floor).
    """

    escalation_margin: float = 1e-9
    extended_digits: int = 50

    def __post_init__(self):
        if self.escalation_margin <= 0:
            raise ValidationError("escalation_margin must be positive")
        if self.extended_digits < 30:
            raise ValidationError("extended_digits must be at least 30")

    def start_digits(self, m: int) -> int:
        """Digits for the first extended pass on a comparison at modulus m."""
        return max(self.extended_digits, len(str(m)) + 25)


DEFAULT_POLICY = NumericPolicy()

MAX_DIGITS = 400


def cos2pi_frac(num: int, den: int) -> float:
    """cos(2*pi*num/den) with the argument reduced mod den exactly."""
    return math.cos(math.tau * ((num % den) / den))


def mp_cos2pi_frac(num: int, den: int):
    """cos(2*pi*num/den) at the current mpmath precision, exact reduction."""
    return mp.cospi(mp.mpf(2 * (num % den)) / den)


def mp_sinpi_frac(num: int, den: int):
    """sin(pi*num/den) at the current mpmath precision, exact reduction."""
    return mp.sinpi(mp.mpf(num % (2 * den)) / den)


def refine_margin(margin_fn, policy: NumericPolicy, start_digits: int,
                  scale: float = 1.0):
    """Evaluate margin_fn(digits) -> mpf at increasing precision.

    Doubles the working precision until the computed margin clears the
    noise floor scale * 10**(12 - digits).  Returns (margin, digits,
    resolved); an unresolved margin after MAX_DIGITS is reported as a tie.
    """
    digits = max(30, start_digits)
    while True:
        with mp.workdps(digits):
            val = margin_fn(digits)
            floor = mp.mpf(scale) * mp.mpf(10) ** (12 - digits)
            if abs(val) > floor:
                return float(val), digits, True
        if digits >= MAX_DIGITS:
            return float(val), digits, False
        digits = min(2 * digits, MAX_DIGITS)
