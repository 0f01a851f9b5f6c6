"""Primality, factorisation, quadratic residues, the polynomial families
that generate semiprime candidates, and the counting functions behind the
census experiments.

Primality is a deterministic Miller-Rabin over the standard twelve-witness
set, valid for every input below 2**64; factorisation is trial division
followed by Brent's cycle-finding variant of Pollard rho.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .bounds import CPRIMES, C_OFFSETS
from .errors import InternalInvariantError, ValidationError

## deterministic below 2**64
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_TRIAL = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality for 0 <= n < 2**64."""
    if not isinstance(n, int) or n < 0 or n >= 1 << 64:
        raise ValidationError("primality testing is limited to 64-bit inputs")
    if n < 2:
        return False
    for p in _SMALL_TRIAL:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """A nontrivial factor of composite n (n odd, no small factors)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m_batch, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m_batch, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m_batch
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise InternalInvariantError(f"factor search failed for {n}")


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), primes ascending

    def __post_init__(self):
        prod = 1
        for p, e in self.factors:
            prod *= p ** e
        if prod != self.n:
            raise ValidationError("factor list does not multiply back to n")

    @classmethod
    def from_primes(cls, n: int, primes) -> "Factorization":
        """Build from a multiset of prime factors, verifying primality."""
        counts: dict[int, int] = {}
        for p in primes:
            if not is_prime(p):
                raise ValidationError(f"{p} is not prime")
            counts[p] = counts.get(p, 0) + 1
        return cls(n, tuple(sorted(counts.items())))

    def prime_list(self) -> list[int]:
        out = []
        for p, e in self.factors:
            out.extend([p] * e)
        return out

    @property
    def is_prime(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    @property
    def distinct_semiprime(self) -> tuple[int, int] | None:
        if len(self.factors) == 2 and all(e == 1 for _, e in self.factors):
            return self.factors[0][0], self.factors[1][0]
        return None


def factorize(n: int) -> Factorization:
    """Full factorisation for 1 <= n < 2**64."""
    if not isinstance(n, int) or n < 1 or n >= 1 << 64:
        raise ValidationError("factorisation is limited to 64-bit inputs")
    factors: dict[int, int] = {}
    for p in _SMALL_TRIAL:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    p = 41
    while p * p <= n and p < 1000:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        v = stack.pop()
        if v == 1:
            continue
        if is_prime(v):
            factors[v] = factors.get(v, 0) + 1
            continue
        d = _brent_rho(v)
        stack.extend((d, v // d))
    total = 1
    for q, e in factors.items():
        total *= q ** e
    return Factorization(total, tuple(sorted(factors.items())))


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValidationError("Jacobi symbol needs an odd positive lower argument")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def avoids_candidate_set(p: int) -> bool:
    """Whether the prime p divides no member of the quadratic candidate set.

    True exactly when every discriminant 25 - 4c is a quadratic non-residue
    mod p, i.e. the six polynomials k^2 + 5k + c have no root mod p; then
    no multiple of p beyond the finite small window can be exceptional.
    """
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    return all(jacobi(cp, p) == -1 for cp in CPRIMES.values())


@lru_cache(maxsize=8)
def _sieve_cached(limit: int) -> np.ndarray:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (cached; do not mutate)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    return _sieve_cached(int(limit))


## ---------------------------------------------------------------- families

@dataclass(frozen=True)
class FamilyPoint:
    """One member of the two-parameter family of semiprime candidates.

    For every a >= 1, y and admissible c the three integer polynomials
    below satisfy p*q = k^2 + 5k + c identically, so whenever p and q are
    both prime the product lands in the candidate set with ratio
    sqrt(q/p) tending to 2 - 2/(2a+1) as y grows.
    """

    a: int
    y: int
    c: int
    p: int
    q: int
    k: int

    @property
    def m(self) -> int:
        return self.p * self.q

    @property
    def in_domain(self) -> bool:
        return self.p > 0 and self.q > 0

    @property
    def ratio_sqrt(self) -> float | None:
        if not self.in_domain:
            return None
        return math.sqrt(self.q / self.p)

    @property
    def ratio_limit(self) -> float:
        return 2.0 - 2.0 / (2 * self.a + 1)


def family_eval(a: int, y: int, c: int) -> FamilyPoint:
    """Evaluate the family polynomials at (a, y, c), exactly."""
    if c not in C_OFFSETS:
        raise ValidationError(f"offset c must be one of {C_OFFSETS}, got {c}")
    if not isinstance(a, int) or a < 1:
        raise ValidationError("family parameter a must be a positive integer")
    b = 2 * a + 1
    p = a * a * b * b * y * y - a * b * (8 * a + 5) * y \
        + (4 * c - 9) * a * a + (4 * c - 5) * a + c
    q = 16 * a ** 4 * y * y - 8 * a * a * (8 * a + 1) * y \
        + 4 * (4 * c - 9) * a * a + 16 * a + 1
    k = 4 * a ** 3 * b * y * y - a * (32 * a * a + 20 * a + 1) * y \
        + 2 * (4 * c - 9) * a * a + (4 * c - 1) * a
    if p * q != k * k + 5 * k + c:
        raise InternalInvariantError(
            f"family identity failed at a={a}, y={y}, c={c}")
    return FamilyPoint(a, y, c, p, q, k)


def family_scan(a: int, c: int, y_max: int,
                require_prime: bool = True) -> list[FamilyPoint]:
    """Family points for 1 <= y <= y_max with positive p and q.

    With require_prime, keeps only points where both p and q are prime
    (so the product is a semiprime candidate of known factorisation).
    """
    if y_max < 1:
        raise ValidationError("y_max must be at least 1")
    out = []
    for y in range(1, y_max + 1):
        pt = family_eval(a, y, c)
        if not pt.in_domain:
            continue
        if require_prime and not (is_prime(pt.p) and is_prime(pt.q)):
            continue
        out.append(pt)
    return out


## ---------------------------------------------------------------- counting

def poly_eval(coeffs, x: int) -> int:
    """Evaluate an integer polynomial (coefficients highest degree first)."""
    acc = 0
    for a in coeffs:
        acc = acc * x + a
    return acc


def root_count_mod_p(p: int, coeffs) -> int:
    """Number of roots of the polynomial mod p, by direct evaluation."""
    if not is_prime(p) or p >= 10 ** 6:
        raise ValidationError("root counting needs a prime p < 10**6")
    cs = [a % p for a in coeffs]
    return sum(1 for x in range(p) if poly_eval(cs, x) % p == 0)


@dataclass(frozen=True)
class SeriesEstimate:
    value: float
    oscillation: float
    prime_limit: int


def hardy_littlewood_constant(c: int, prime_limit: int = 10 ** 7) -> SeriesEstimate:
    """Truncated singular series prod_{3 <= p <= limit} (1 - (c'/p)/(p-1)).

    c' = 25 - 4c.  Because every c' here is 1 mod 4, (c'/p) equals the
    Jacobi symbol (p mod c' / c'), so the factor per prime is a table
    lookup.  The spread of the partial products over the last decade of
    the truncation range is reported as the oscillation estimate.
    """
    if c not in C_OFFSETS:
        raise ValidationError(f"offset c must be one of {C_OFFSETS}, got {c}")
    if prime_limit < 100:
        raise ValidationError("prime_limit must be at least 100")
    cp = CPRIMES[c]
    odd_primes = sieve_primes(prime_limit)[1:]
    table = np.array([jacobi(r, cp) for r in range(cp)], dtype=np.int64)
    sym = table[odd_primes % cp]
    terms = 1.0 - sym / (odd_primes.astype(np.float64) - 1.0)
    partial = np.cumprod(terms)
    tail = partial[odd_primes > prime_limit // 10]
    osc = float(tail.max() - tail.min()) if tail.size else 0.0
    return SeriesEstimate(float(partial[-1]), osc, prime_limit)


@dataclass(frozen=True)
class ExceptionalBuckets:
    """k values (4 <= k <= k_max) whose family value is exceptional."""

    c: int
    k_max: int
    type_i: tuple[int, ...]
    type_ii: tuple[int, ...]
    type_iii: tuple[int, ...]


def count_exceptionals(c: int, k_max: int) -> ExceptionalBuckets:
    """Classify k^2 + 5k + c for 4 <= k <= k_max and bucket by type."""
    from .classify import classify  # deferred: classify depends on this module

    if c not in C_OFFSETS:
        raise ValidationError(f"offset c must be one of {C_OFFSETS}, got {c}")
    buckets: dict[str, list[int]] = {"I": [], "II": [], "III": []}
    for k in range(4, k_max + 1):
        v = classify(k * k + 5 * k + c)
        if v.verdict == "exceptional":
            buckets[v.kind].append(k)
    return ExceptionalBuckets(c, k_max, tuple(buckets["I"]),
                              tuple(buckets["II"]), tuple(buckets["III"]))


def count_p2_ratio(a: float, x: int) -> int:
    """Count m <= x of the form m = p*q, p < q < a*p, p and q prime.

    The prime 2 participates.  Counting is done with one sieve to x/2 and
    binary searches, so x up to 10**8 stays comfortable.
    """
    if a <= 1:
        raise ValidationError("ratio bound a must exceed 1")
    if x < 6:
        return 0
    primes = sieve_primes(x // 2)
    total = 0
    for p in primes[primes <= isqrt(x)]:
        p = int(p)
        ## q < a*p strictly; the epsilon guards against float round-up
        hi = min(math.ceil(a * p - 1e-9) - 1, x // p)
        if hi <= p:
            continue
        lo_idx = np.searchsorted(primes, p, side="right")
        hi_idx = np.searchsorted(primes, hi, side="right")
        total += int(hi_idx - lo_idx)
    return total


def is_distinct_semiprime(n: int) -> bool:
    """Whether n = p*q with p < q prime."""
    if n < 6:
        return False
    return factorize(n).distinct_semiprime is not None


def count_poly(coeffs, x: int, mode: str = "prime") -> int:
    """Count 1 <= k <= x with f(k) prime, or a distinct-prime semiprime."""
    if mode not in ("prime", "semiprime_distinct"):
        raise ValidationError("mode must be 'prime' or 'semiprime_distinct'")
    total = 0
    for k in range(1, x + 1):
        n = poly_eval(coeffs, k)
        if n < 0:
            raise ValidationError(f"polynomial is negative at k={k}")
        if mode == "prime":
            total += n >= 2 and is_prime(n)
        else:
            total += is_distinct_semiprime(n)
    return total


def landau_normalizer(x: float) -> float:
    """x * log(log x) / log x, the classical two-prime normalizer."""
    if x <= math.e:
        raise ValidationError("normalizer needs x > e")
    return x * math.log(math.log(x)) / math.log(x)
