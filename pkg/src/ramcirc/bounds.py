"""The trivial covalency bound and the candidate set of possibly
exceptional orders.

For odd m let l0(m) = 2*floor(sqrt(m) - 3/2) + 1, the largest odd l
with l <= 2*(sqrt(m) - 1); every class of covalency at most l0 is
automatically Ramanujan.  Whether anything beyond l0 survives is governed
by the sign of the window excess

    d(m) = sin(pi*(2k+3)/m)/sin(pi/m) - 2*sqrt(m - 2k - 4),

the amount by which the canonical window set at covalency l0 + 2 beats
the Ramanujan bound (k = floor(sqrt(m) - 3/2), so 2k + 3 = l0 + 2).
A positive excess certifies m ordinary.  The excess is negative exactly
on a short window around k^2 + 5k, which confines every exceptional
order to the candidate set: the odd numbers 15..29 together with the
values k^2 + 5k + c for c in {-5,-3,-1,1,3,5} (k >= 4, and k >= 19 when
c = -5).  Membership is decided by an exact integer square test on
4m + 25 - 4c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import isqrt

import mpmath as mp

from .errors import InternalInvariantError, ValidationError
from .precision import DEFAULT_POLICY, NumericPolicy, mp_sinpi_frac
from .spectra import check_modulus, ramanujan_bound, window_eigenvalue

## admissible offsets c and their discriminants c' = 25 - 4c
C_OFFSETS = (-5, -3, -1, 1, 3, 5)
CPRIMES = {c: 25 - 4 * c for c in C_OFFSETS}

SMALL_WINDOW = frozenset(range(15, 30, 2))


def trivial_bound(m: int) -> int:
    """l0(m) = 2*floor(sqrt(m) - 3/2) + 1, in exact integer arithmetic."""
    check_modulus(m)
    return 2 * ((isqrt(4 * m) - 3) // 2) + 1


def interval_index(m: int) -> int:
    """The k with k^2 + 3k + 9/4 <= m < k^2 + 5k + 25/4."""
    check_modulus(m)
    return (isqrt(4 * m) - 3) // 2


def window_excess(m: int, policy: NumericPolicy = DEFAULT_POLICY) -> float:
    """Signed excess of the canonical window set over the Ramanujan bound.

    Positive excess certifies m ordinary.  Near-zero values are
    re-evaluated in extended precision before being reported.
    """
    check_modulus(m)
    if m < 5:
        raise ValidationError("window excess needs odd m >= 5")
    l = trivial_bound(m) + 2
    d = -window_eigenvalue(m, l, 1) - ramanujan_bound(m, l)
    if abs(d) >= policy.escalation_margin:
        return d
    with mp.workdps(policy.start_digits(m)):
        val = mp_sinpi_frac(l, m) / mp_sinpi_frac(1, m) - 2 * mp.sqrt(m - l - 1)
        return float(val)


def negative_excess_window(k: int) -> tuple[int, int]:
    """Closed integer interval of m in the k-th band with negative excess.

    For k <= 3 the excess is negative on the whole band.  For k >= 4 the
    window is [k^2 + 5k - c, k^2 + 5k + 5] with c = 3 for k <= 18 and
    c = 5 from k = 19 on.
    """
    if k < 4:
        raise ValidationError("the sign window is stated for k >= 4")
    c = 3 if k <= 18 else 5
    return (k * k + 5 * k - c, k * k + 5 * k + 5)


@dataclass(frozen=True)
class CandidateWitness:
    """How (and whether) m sits in the candidate set.

    source is "small_window" for odd 15 <= m <= 29 and "quadratic" when
    4m + 25 - 4c is an odd perfect square s^2 with k = (s - 5)/2 in range;
    c and k are filled only in the quadratic case.
    """

    m: int
    member: bool
    source: str | None = None
    c: int | None = None
    k: int | None = None

    @property
    def cprime(self) -> int | None:
        return None if self.c is None else 25 - 4 * self.c


def in_candidate_set(m: int) -> CandidateWitness:
    """Exact membership test for the candidate set of exceptional orders."""
    check_modulus(m)
    if m in SMALL_WINDOW:
        return CandidateWitness(m, True, "small_window")
    found = []
    for c in C_OFFSETS:
        s2 = 4 * m + CPRIMES[c]
        s = isqrt(s2)
        if s * s != s2:
            continue
        k = (s - 5) // 2
        if k >= (19 if c == -5 else 4):
            found.append((c, k))
    if len(found) > 1:
        ## two quadratic representations would need odd squares closer
        ## than the discriminant spread allows
        raise InternalInvariantError(f"multiple quadratic witnesses for m={m}: {found}")
    if found:
        c, k = found[0]
        return CandidateWitness(m, True, "quadratic", c, k)
    return CandidateWitness(m, False)


def deep_window_max_h(m: int) -> int:
    """Largest h with 4h <= (sqrt(m) - 2)^2, by exact integer comparison."""
    check_modulus(m)

    def ok(h):
        r = m + 4 - 4 * h
        return h >= 0 and r >= 0 and r * r >= 16 * m

    h = max(0, (m + 4 - 4 * isqrt(m)) // 4)
    while ok(h + 1):
        h += 1
    while h > 0 and not ok(h):
        h -= 1
    return h


def window_violation(m: int, h: int,
                     policy: NumericPolicy = DEFAULT_POLICY) -> bool:
    """Check that the window set at covalency l0 + 2h breaks the bound.

    Valid for odd m >= 39 and 2 <= h <= floor((sqrt(m) - 2)^2 / 4); in
    that range the window covalency stays below m/2 and the violation is
    guaranteed, so a False return signals an internal problem upstream.
    """
    check_modulus(m)
    if m < 39:
        raise ValidationError("the deep-window check needs m >= 39")
    hmax = deep_window_max_h(m)
    if not 2 <= h <= hmax:
        raise ValidationError(f"h must lie in [2, {hmax}] for m={m}, got {h}")
    l = trivial_bound(m) + 2 * h
    if 2 * l >= m:
        raise InternalInvariantError(f"window covalency {l} reached m/2 at m={m}")
    excess = -window_eigenvalue(m, l, 1) - ramanujan_bound(m, l)
    if abs(excess) < policy.escalation_margin:
        with mp.workdps(policy.start_digits(m)):
            excess = float(mp_sinpi_frac(l, m) / mp_sinpi_frac(1, m)
                           - 2 * mp.sqrt(m - l - 1))
    return excess > 0
