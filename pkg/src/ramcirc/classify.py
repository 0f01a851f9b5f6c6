"""Deciding the edge-removal bound for a single odd order.

For odd m >= 15 the bound is hat_l = l0 + eps with eps in {0, 2}; m is
called exceptional when eps = 2 and ordinary otherwise (for 3 <= m <= 13
every class is Ramanujan and hat_l = m - 2, outside the dichotomy).  An
exceptional m must lie in the candidate set and be of one of three
arithmetic kinds:

  I    m prime (every prime in the candidate set is exceptional),
  II   m = p*q with p < q <= 4p - 5, decided by comparing three
       closed-form candidate maxima against the Ramanujan bound,
  III  m in {25, 49}.

Any other composite member of the candidate set (cofactor at least
4p - 3 over its least prime p) is ordinary via an explicit witness whose
eigenvalue is exactly l0 + 2.  Orders outside the candidate set are
ordinary because the window excess is positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import mpmath as mp

from .bounds import (
    CPRIMES,
    C_OFFSETS,
    CandidateWitness,
    in_candidate_set,
    trivial_bound,
    window_excess,
)
from .errors import InternalInvariantError, ValidationError
from .numtheory import Factorization, factorize, is_prime
from .precision import (
    AUTO_EXTENDED_THRESHOLD,
    DEFAULT_POLICY,
    NumericPolicy,
    mp_cos2pi_frac,
    mp_sinpi_frac,
    refine_margin,
)
from .spectra import CayleySet, check_modulus, ramanujan_bound, window_eigenvalue

## arithmetic kinds, as serialized
KIND_SMALL = "small"
KIND_I = "I"
KIND_II = "II"
KIND_III = "III"
KIND_OUTSIDE = "outside_J"
KIND_OTHER = "other_composite"

VERDICT_ORDINARY = "ordinary"
VERDICT_EXCEPTIONAL = "exceptional"
VERDICT_ALL_RAMANUJAN = "all_ramanujan"


@dataclass(frozen=True)
class Verdict:
    """Outcome of classifying one odd order.

    mu_hat is the decisive eigenvalue magnitude where the decision is
    numeric (candidate maximum for kinds I/II, window value outside the
    candidate set, the exact integer l0 + 2 for kind "other"); it stays
    None for kind III and for m <= 13.  epsilon is None for m <= 13.
    """

    m: int
    l0: int
    witness: CandidateWitness
    kind: str
    verdict: str
    epsilon: int | None
    hat_l: int
    p: int | None = None
    q: int | None = None
    mu_hat: float | None = None
    rb: float | None = None
    margin: float | None = None
    near_threshold: bool | None = None

    def to_json_dict(self) -> dict:
        w = self.witness
        return {
            "m": self.m,
            "l0": self.l0,
            "inJ": {"member": w.member, "source": w.source, "c": w.c, "k": w.k},
            "kind": self.kind,
            "p": self.p,
            "q": self.q,
            "verdict": self.verdict,
            "epsilon": self.epsilon,
            "hatl": self.hat_l,
            "mu_hat": self.mu_hat,
            "rb": self.rb,
            "margin": self.margin,
            "near_threshold": self.near_threshold,
        }


def semiprime_candidates(p: int, q: int, l0: int | None = None,
                         digits: int | None = None):
    """The three candidate class maxima for m = p*q, p < q <= 4p - 5.

    mu0 is the window value at covalency l0 + 2; mu1 and mu2 come from
    complements packed into residue classes mod p and mod q.  mu2 has an
    integer branch test: the single-class shape applies while
    l0 + 2 <= 3p, the two-class shape beyond.  With digits set, all
    three are mpmath values at that precision.
    """
    if p % 2 == 0 or q % 2 == 0 or p < 3:
        raise ValidationError("factors must be odd and at least 3")
    if p == q:
        raise ValidationError("factors must be distinct")
    if q < p:
        raise ValidationError("factors must be ordered p < q")
    if q > 4 * p - 5:
        raise ValidationError(
            f"q={q} exceeds 4p-5={4 * p - 5}; the candidate maxima do not apply")
    m = p * q
    if l0 is None:
        l0 = trivial_bound(m)
    C = l0 + 2
    if digits is not None:
        with mp.workdps(digits):
            mu0 = mp_sinpi_frac(C, m) / mp_sinpi_frac(1, m)
            mu1 = q + (C - q) * mp_cos2pi_frac(1, p)
            if C <= 3 * p:
                mu2 = p + (C - p) * mp_cos2pi_frac(1, q)
            else:
                mu2 = (p + 2 * p * mp_cos2pi_frac(1, q)
                       + (C - 3 * p) * mp_cos2pi_frac(2, q))
            return mu0, mu1, mu2
    mu0 = -window_eigenvalue(m, C, 1)
    mu1 = q + (C - q) * math.cos(math.tau / p)
    if C <= 3 * p:
        mu2 = p + (C - p) * math.cos(math.tau / q)
    else:
        mu2 = (p + 2 * p * math.cos(math.tau / q)
               + (C - 3 * p) * math.cos(2 * math.tau / q))
    return mu0, mu1, mu2


def _normalize_factors(m: int, factors) -> Factorization:
    if isinstance(factors, Factorization):
        fac = factors
    else:
        fac = Factorization.from_primes(m, factors)
    if fac.n != m:
        raise ValidationError("supplied factorisation does not match m")
    return fac


def _semiprime_margin(p: int, q: int, l0: int, policy: NumericPolicy):
    """(mu_hat, rb, margin) for kind II, escalating borderline margins."""
    m = p * q
    rb_d = ramanujan_bound(m, l0 + 2)
    if m <= AUTO_EXTENDED_THRESHOLD:
        mu_hat = max(semiprime_candidates(p, q, l0))
        margin = rb_d - mu_hat
        if abs(margin) >= policy.escalation_margin:
            return mu_hat, rb_d, margin

    def margin_fn(_digits):
        cands = semiprime_candidates(p, q, l0, digits=_digits)
        return 2 * mp.sqrt(m - l0 - 3) - max(cands)

    margin, digits, resolved = refine_margin(
        margin_fn, policy, policy.start_digits(m), scale=max(1.0, math.sqrt(m)))
    with mp.workdps(digits):
        mu_hat = float(max(semiprime_candidates(p, q, l0, digits=digits)))
        rb = float(2 * mp.sqrt(m - l0 - 3))
    if not resolved:
        margin = 0.0
    return mu_hat, rb, margin


def _window_margin(m: int, l0: int, policy: NumericPolicy):
    """(mu_window, rb, margin) at covalency l0 + 2, extended when needed."""
    l = l0 + 2
    if m <= AUTO_EXTENDED_THRESHOLD:
        mu = -window_eigenvalue(m, l, 1)
        rb = ramanujan_bound(m, l)
        margin = rb - mu
        if abs(margin) >= policy.escalation_margin:
            return mu, rb, margin

    def margin_fn(_digits):
        return (2 * mp.sqrt(m - l - 1)
                - mp_sinpi_frac(l, m) / mp_sinpi_frac(1, m))

    margin, digits, _ = refine_margin(
        margin_fn, policy, policy.start_digits(m), scale=max(1.0, math.sqrt(m)))
    with mp.workdps(digits):
        mu = float(mp_sinpi_frac(l, m) / mp_sinpi_frac(1, m))
        rb = float(2 * mp.sqrt(m - l - 1))
    return mu, rb, margin


def _near_threshold(p: int, q: int, c: int | None) -> bool | None:
    """Whether sqrt(q/p) falls between the analytic threshold pair for c."""
    if c is None:
        return None
    th = thresholds()
    x = math.sqrt(q / p)
    return th.xbar1[c] < x < th.xunder2[c]


def classify(m: int, factors=None,
             policy: NumericPolicy = DEFAULT_POLICY) -> Verdict:
    """Classify one odd order and compute its edge-removal bound.

    factors optionally supplies the prime factorisation (a Factorization
    or an iterable of primes with multiplicity); it is required above
    2**64 where the built-in factoriser refuses.
    """
    check_modulus(m)
    l0 = trivial_bound(m)
    if m <= 13:
        return Verdict(m, l0, CandidateWitness(m, False), KIND_SMALL,
                       VERDICT_ALL_RAMANUJAN, None, m - 2)
    w = in_candidate_set(m)
    if not w.member:
        mu, rb, margin = _window_margin(m, l0, policy)
        if margin >= 0:
            raise InternalInvariantError(
                f"positive window excess expected outside the candidate set, m={m}")
        return Verdict(m, l0, w, KIND_OUTSIDE, VERDICT_ORDINARY, 0, l0,
                       mu_hat=mu, rb=rb, margin=margin)

    if factors is None:
        if m >= 1 << 64:
            raise ValidationError(
                "orders at or above 2**64 need an explicit factorisation")
        fac = factorize(m)
    else:
        fac = _normalize_factors(m, factors)

    if fac.is_prime:
        mu, rb, margin = _window_margin(m, l0, policy)
        if margin < 0:
            raise InternalInvariantError(
                f"prime candidate {m} shows a positive window excess")
        return Verdict(m, l0, w, KIND_I, VERDICT_EXCEPTIONAL, 2, l0 + 2,
                       mu_hat=mu, rb=rb, margin=margin)

    primes = fac.prime_list()
    if len(primes) == 2 and primes[0] == primes[1]:
        if m not in (25, 49):
            raise InternalInvariantError(
                f"unexpected prime square {m} inside the candidate set")
        return Verdict(m, l0, w, KIND_III, VERDICT_EXCEPTIONAL, 2, l0 + 2,
                       p=primes[0], q=primes[1])

    pq = fac.distinct_semiprime
    if pq is not None and pq[1] <= 4 * pq[0] - 5:
        p, q = pq
        mu_hat, rb, margin = _semiprime_margin(p, q, l0, policy)
        exceptional = margin >= 0
        return Verdict(
            m, l0, w, KIND_II,
            VERDICT_EXCEPTIONAL if exceptional else VERDICT_ORDINARY,
            2 if exceptional else 0,
            l0 + 2 if exceptional else l0,
            p=p, q=q, mu_hat=mu_hat, rb=rb, margin=margin,
            near_threshold=_near_threshold(p, q, w.c))

    ## remaining composites: cofactor t = m/p over the least prime p is
    ## at least 4p - 3, so the multiples-of-p witness pins hat_l = l0
    p = primes[0]
    t = m // p
    if t < 4 * p - 3 or l0 + 2 > t:
        raise InternalInvariantError(
            f"no qualifying witness decomposition for m={m}")
    if (l0 + 4) ** 2 <= 4 * m:
        raise InternalInvariantError(
            f"witness eigenvalue l0+2 failed to beat the bound at m={m}")
    rb = ramanujan_bound(m, l0 + 2)
    return Verdict(m, l0, w, KIND_OTHER, VERDICT_ORDINARY, 0, l0,
                   p=p, q=t if pq is not None else None,
                   mu_hat=float(l0 + 2), rb=rb, margin=rb - (l0 + 2))


@dataclass(frozen=True)
class OrdinaryWitness:
    """A complement packed into multiples of p with an exact eigenvalue.

    At index j = m/p every removed residue contributes 1, so the
    eigenvalue is exactly -(l0 + 2), and (l0 + 2)^2 > 4(m - l0 - 3) holds
    as an integer inequality, certifying the class non-Ramanujan.
    """

    cayley: CayleySet
    index: int
    value: int


def ordinary_witness(m: int, p: int | None = None) -> OrdinaryWitness:
    """Build the multiples-of-p witness for a qualifying composite m."""
    check_modulus(m)
    if m < 15:
        raise ValidationError("witness construction applies from m = 15 on")
    if p is None:
        fac = factorize(m)
        if fac.is_prime:
            raise ValidationError(f"{m} is prime; no composite witness exists")
        p = fac.factors[0][0]
    if m % p or p == m or not is_prime(p):
        raise ValidationError(f"{p} is not a proper prime divisor of {m}")
    t = m // p
    if t < 4 * p - 3:
        raise ValidationError(
            f"cofactor {t} is below 4p-3={4 * p - 3}; no qualifying witness")
    l0 = trivial_bound(m)
    if l0 + 2 > t:
        raise InternalInvariantError(
            f"window l0+2={l0 + 2} does not fit the {t} multiples of {p}")
    if (l0 + 4) ** 2 <= 4 * m:
        raise InternalInvariantError(
            f"witness value l0+2 fails to beat the bound at m={m}")
    cayley = CayleySet.from_pairs(m, (j * p for j in range(1, (l0 + 1) // 2 + 1)))
    return OrdinaryWitness(cayley, t, l0 + 2)


## --------------------------------------------------------------- thresholds

def _bisect(f, lo: float, hi: float, iters: int = 200) -> float:
    flo = f(lo)
    if flo == 0:
        return lo
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class Thresholds:
    """Analytic constants controlling the ratio x = sqrt(q/p) in (1, 2).

    gamma1..gamma4 are the roots in (1, 2) of four fixed cubics/sextics
    reordering the candidate maxima; gamma5[c] is where mu1 crosses the
    Ramanujan bound for offset c.  xbar1[c] and xunder2[c] bracket the
    region where the exceptional/ordinary outcome genuinely depends on
    finer terms; x1/x2 are their extremes over c, xi1/xi2 the squares
    (bounds on the ratio q/p itself).
    """

    gamma1: float
    gamma2: float
    gamma3: float
    gamma4: float
    gamma5: dict[int, float]
    xbar1: dict[int, float]
    xunder2: dict[int, float]
    x1: float
    x2: float
    xi1: float
    xi2: float


@lru_cache(maxsize=1)
def thresholds() -> Thresholds:
    pi2 = math.pi * math.pi
    g1 = _bisect(lambda x: 2 * x ** 3 - 6 * x + 3, 1.0, 2.0)
    g2 = _bisect(lambda x: x ** 3 - 12 * x + 15, 1.0, 2.0)
    g3 = _bisect(lambda x: x ** 6 - 2 * x ** 5 + 8 * x - 10, 1.0, 2.0)
    g4 = _bisect(lambda x: 3 * x ** 3 - 6 * x * x + 2, 1.0, 2.0)
    g5 = {c: _bisect(lambda x, cp=CPRIMES[c]:
                     8 * pi2 * x ** 3 - 16 * pi2 * x * x + cp, 1.0, 2.0)
          for c in C_OFFSETS}
    xbar1 = {c: 2 - CPRIMES[c] / (8 * pi2) for c in C_OFFSETS}
    xunder2 = {c: 2 - CPRIMES[c] / (32 * pi2) for c in C_OFFSETS}
    x1 = min(xbar1.values())
    x2 = max(xunder2.values())
    return Thresholds(g1, g2, g3, g4, g5, xbar1, xunder2,
                      x1, x2, x1 * x1, x2 * x2)


## the ascending candidate order per regime of x = sqrt(q/p)
REGIME_ORDERS = {
    1: ("mu1", "mu2", "mu0", "rb"),
    2: ("mu1", "mu0", "mu2", "rb"),
    3: ("mu1", "mu2", "mu0", "rb"),
    4: ("mu2", "mu1", "mu0", "rb"),
    5: ("mu2", "mu0", "mu1", "rb"),
    6: ("mu2", "mu0", "rb", "mu1"),
}


@dataclass(frozen=True)
class SpectralOrdering:
    p: int
    q: int
    c: int
    x: float
    regime: int
    predicted: tuple[str, ...]
    computed: tuple[str, ...]
    matches: bool


def spectral_ordering(p: int, q: int, c: int | None = None) -> SpectralOrdering:
    """Predicted vs computed ordering of the candidate maxima for m = p*q.

    The offset c is taken from the quadratic membership witness of p*q
    when not supplied; orders without one are rejected since the regime
    boundaries depend on c.
    """
    m = p * q
    if c is None:
        w = in_candidate_set(m)
        if w.c is None:
            raise ValidationError(
                f"m={m} has no quadratic candidate witness; pass c explicitly")
        c = w.c
    elif c not in C_OFFSETS:
        raise ValidationError(f"offset c must be one of {C_OFFSETS}, got {c}")
    x = math.sqrt(q / p)
    th = thresholds()
    cuts = (th.gamma1, th.gamma2, th.gamma3, th.gamma4, th.gamma5[c])
    regime = 1 + sum(x > b for b in cuts)
    l0 = trivial_bound(m)
    digits = None if m <= AUTO_EXTENDED_THRESHOLD else DEFAULT_POLICY.start_digits(m)
    mu0, mu1, mu2 = semiprime_candidates(p, q, l0, digits=digits)
    if digits is None:
        rb = ramanujan_bound(m, l0 + 2)
    else:
        with mp.workdps(digits):
            rb = 2 * mp.sqrt(m - l0 - 3)
    ranked = sorted(zip((mu0, mu1, mu2, rb), ("mu0", "mu1", "mu2", "rb")))
    computed = tuple(name for _, name in ranked)
    predicted = REGIME_ORDERS[regime]
    return SpectralOrdering(p, q, c, x, regime, predicted, computed,
                            predicted == computed)


## ----------------------------------------------------------------- profiles

@dataclass(frozen=True)
class ProfilePoint:
    """Asymptotic candidate maxima along the ratio x = sqrt(q/p)."""

    c: int
    k: int
    x: float
    mu0: float
    mu1: float
    mu2: float
    rb: float
    d0: float
    d1: float
    d2: float


def profile_point(c: int, k: int, x: float) -> ProfilePoint:
    """Evaluate the profile at ratio x in (1, 2), branch point excluded."""
    if c not in C_OFFSETS:
        raise ValidationError(f"offset c must be one of {C_OFFSETS}, got {c}")
    if k < 1:
        raise ValidationError("band index k must be positive")
    if not 1.0 < x < 2.0:
        raise ValidationError("ratio x must lie strictly inside (1, 2)")
    if x == 1.5:
        raise ValidationError("x = 3/2 is the branch point of mu2; perturb x")
    rb = 2.0 * math.sqrt(k * k + 3 * k + c - 4)
    B = math.sqrt(k * k + 5 * k + c)
    C = 2 * k + 3
    mu0 = math.sin(math.pi * C / (B * B)) / math.sin(math.pi / (B * B))
    mu1 = B * x + (C - B * x) * math.cos(math.tau * x / B)
    y = B / x
    if x < 1.5:
        mu2 = y + (C - y) * math.cos(math.tau / (B * x))
    else:
        mu2 = (y + 2 * y * math.cos(math.tau / (B * x))
               + (C - 3 * y) * math.cos(2 * math.tau / (B * x)))
    return ProfilePoint(c, k, x, mu0, mu1, mu2, rb,
                        mu0 - rb, mu1 - rb, mu2 - rb)


## ------------------------------------------------------------------- census

def scan_range(lo: int, hi: int,
               policy: NumericPolicy = DEFAULT_POLICY) -> list[Verdict]:
    """Classify every odd order in [lo, hi] (both at least 3)."""
    if lo > hi:
        raise ValidationError("empty scan range")
    lo = max(3, lo)
    if lo % 2 == 0:
        lo += 1
    return [classify(m, policy=policy) for m in range(lo, hi + 1, 2)]


def exceptional_orders(x: int,
                       policy: NumericPolicy = DEFAULT_POLICY) -> list[int]:
    """All exceptional orders m <= x (the census behind the density counts)."""
    return [v.m for v in scan_range(15, x, policy)
            if v.verdict == VERDICT_EXCEPTIONAL]


def rho_e(x: int, policy: NumericPolicy = DEFAULT_POLICY) -> int:
    """Number of exceptional orders up to x."""
    return len(exceptional_orders(x, policy))
