"""Primality, factorisation, symbols, families, and the counting layer."""

import math

import pytest
from hypothesis import given, strategies as st

from ramcirc.errors import ValidationError
from ramcirc.numtheory import (
    Factorization,
    avoids_candidate_set,
    count_exceptionals,
    count_p2_ratio,
    count_poly,
    factorize,
    family_eval,
    family_scan,
    hardy_littlewood_constant,
    is_distinct_semiprime,
    is_prime,
    jacobi,
    landau_normalizer,
    poly_eval,
    root_count_mod_p,
    sieve_primes,
)
from ramcirc import golden


def trial_division_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def legendre_euler(a: int, p: int) -> int:
    e = pow(a % p, (p - 1) // 2, p)
    return 0 if e == 0 else (1 if e == 1 else -1)


class TestPrimality:
    def test_small_range_matches_trial_division(self):
        for n in range(50000):
            assert is_prime(n) == trial_division_prime(n)

    def test_strong_pseudoprimes_rejected(self):
        ## composite survivors of small witness sets
        for n in (3215031751, 25326001, 3825123056546413051):
            assert not is_prime(n)

    def test_large_primes_accepted(self):
        assert is_prime(2 ** 61 - 1)
        assert is_prime(18446744073709551557)  # largest prime below 2**64

    @given(st.integers(min_value=2, max_value=10 ** 12))
    def test_factorize_roundtrip(self, n):
        fac = factorize(n)
        prod = 1
        for p, e in fac.factors:
            assert is_prime(p)
            prod *= p ** e
        assert prod == n

    def test_factorization_views(self):
        fac = factorize(360)
        assert fac.factors == ((2, 3), (3, 2), (5, 1))
        assert fac.prime_list() == [2, 2, 2, 3, 3, 5]
        assert not fac.is_prime
        assert fac.distinct_semiprime is None
        assert factorize(15).distinct_semiprime == (3, 5)
        assert factorize(25).distinct_semiprime is None
        assert factorize(2 ** 61 - 1).is_prime

    def test_from_primes_validates(self):
        assert Factorization.from_primes(45, [3, 3, 5]).factors == ((3, 2), (5, 1))
        with pytest.raises(ValidationError):
            Factorization.from_primes(45, [3, 15])


class TestJacobi:
    def test_against_euler_criterion(self):
        for p in [int(q) for q in sieve_primes(311)[1:]]:
            for a in range(p):
                assert jacobi(a, p) == legendre_euler(a, p)

    @given(st.integers(min_value=-10 ** 6, max_value=10 ** 6),
           st.integers(min_value=-10 ** 6, max_value=10 ** 6),
           st.integers(min_value=0, max_value=10 ** 6).map(lambda n: 2 * n + 1))
    def test_multiplicative_in_numerator(self, a, b, n):
        assert jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n)

    @given(st.integers(min_value=1, max_value=10 ** 6).map(lambda n: 2 * n + 1),
           st.integers(min_value=1, max_value=10 ** 6).map(lambda n: 2 * n + 1))
    def test_quadratic_reciprocity(self, a, b):
        if math.gcd(a, b) != 1:
            return
        sign = -1 if (a % 4 == 3 and b % 4 == 3) else 1
        assert jacobi(a, b) * jacobi(b, a) == sign

    def test_rejects_even_modulus(self):
        with pytest.raises(ValidationError):
            jacobi(3, 10)


class TestResidueTest:
    def test_first_five_avoiding_primes(self):
        found = []
        p = 2
        while len(found) < 5:
            p += 1
            if is_prime(p) and avoids_candidate_set(p):
                found.append(p)
        assert tuple(found) == golden.AVOIDS_FIRST5 == (97, 577, 827, 853, 947)

    def test_definition_unfolds(self):
        for p in (97, 577):
            assert all(jacobi(cp, p) == -1 for cp in (45, 37, 29, 21, 13, 5))

    def test_avoiding_prime_divides_no_member(self):
        ## corroboration on actual candidate values
        from ramcirc.bounds import in_candidate_set
        for m in range(31, 200000, 2):
            if in_candidate_set(m).member:
                for p in golden.AVOIDS_FIRST5:
                    assert m % p != 0

    def test_rejects_composite(self):
        with pytest.raises(ValidationError):
            avoids_candidate_set(91)


class TestSieve:
    def test_prime_counts(self):
        assert len(sieve_primes(10)) == 4
        assert len(sieve_primes(10 ** 6)) == 78498

    def test_agrees_with_trial_division(self):
        assert [int(p) for p in sieve_primes(50)] == [
            n for n in range(51) if trial_division_prime(n)]


class TestFamily:
    @given(st.integers(min_value=1, max_value=100),
           st.integers(min_value=-10 ** 4, max_value=10 ** 4),
           st.sampled_from((-5, -3, -1, 1, 3, 5)))
    def test_product_identity(self, a, y, c):
        pt = family_eval(a, y, c)
        assert pt.p * pt.q == pt.k * pt.k + 5 * pt.k + c

    @given(st.integers(min_value=1, max_value=40),
           st.integers(min_value=1, max_value=200),
           st.sampled_from((-5, -3, -1, 1, 3, 5)))
    def test_products_join_candidate_set(self, a, y, c):
        from ramcirc.bounds import in_candidate_set
        pt = family_eval(a, y, c)
        if pt.p > 1 and pt.q > 1 and pt.k >= (19 if c == -5 else 4):
            assert in_candidate_set(pt.m).member

    def test_reference_points(self):
        pt = family_eval(1, 7, -5)
        assert (pt.p, pt.q) == (109, 181)
        pt6 = family_eval(64, 39, 5)
        assert (pt6.p, pt6.q) == (103507276549, 407634920449)
        assert pt6.ratio_limit == pytest.approx(2 - 2 / 129)

    def test_scan_prime_filter_reproduces_row_set(self):
        ys = [pt.y for pt in family_scan(1, -5, 110)]
        assert ys == [7, 17, 25, 35, 40, 62, 82, 104]
        assert len(family_scan(1, -5, 110, require_prime=False)) == 105

    def test_rejects_bad_offset(self):
        with pytest.raises(ValidationError):
            family_eval(1, 7, -7)
        with pytest.raises(ValidationError):
            family_eval(0, 7, -5)


class TestCounting:
    def test_poly_eval_horner(self):
        assert poly_eval((1, 5, 5), 4) == 41
        assert poly_eval((2, 0, -1), 3) == 17

    def test_root_counts(self):
        assert root_count_mod_p(5, (1, 0, 1)) == 2
        assert root_count_mod_p(7, (1, 0, 1)) == 0
        assert root_count_mod_p(2, (1, 5, 5)) == 0
        ## 1 + (cp/p) for odd p not dividing the discriminant
        for p in (3, 7, 11, 13):
            for c, cp in ((-5, 45), (-3, 37), (5, 5)):
                if cp % p:
                    assert root_count_mod_p(p, (1, 5, c)) == 1 + jacobi(cp, p)

    def test_count_poly_reference_values(self):
        assert count_poly((1, 0, 1), 10, "prime") == 5
        assert count_poly((1, 0, 1), 10, "semiprime_distinct") == 4
        assert count_poly((1, 5, 5), 4, "prime") == 4
        with pytest.raises(ValidationError):
            count_poly((1, 0, 1), 10, "semiprime")

    def test_distinct_semiprime_predicate(self):
        assert is_distinct_semiprime(15)
        assert not is_distinct_semiprime(9)
        assert not is_distinct_semiprime(30)
        assert not is_distinct_semiprime(13)

    def test_p2_reference_values(self):
        assert count_p2_ratio(4, 100) == 13
        assert count_p2_ratio(2, 30) == 2

    def test_p2_matches_double_loop(self):
        def brute(a, x):
            ps = [int(p) for p in sieve_primes(x // 2)]
            return sum(1 for i, p in enumerate(ps) for q in ps[i + 1:]
                       if q < a * p and p * q <= x)
        assert count_p2_ratio(3, 5000) == brute(3, 5000) == 157
        assert count_p2_ratio(4, 100) == brute(4, 100)
        assert count_p2_ratio(1.5, 3000) == brute(1.5, 3000)

    def test_p2_normalized_count_stays_bounded(self):
        ## the ratio-constrained semiprime count grows like x/(log x)^2
        vals = []
        for x in (10 ** 6, 10 ** 7, 10 ** 8):
            n = count_p2_ratio(4, x)
            vals.append(n * math.log(x) ** 2 / x)
        assert all(2.0 < v < 4.0 for v in vals)
        assert max(vals) - min(vals) < 0.2

    def test_exceptional_buckets(self):
        b = count_exceptionals(-5, 50)
        assert b.type_i == (21, 24, 27, 28, 33, 34, 36, 37, 46, 48)
        assert b.type_ii == (22, 39, 43)
        assert b.type_iii == ()
        b1 = count_exceptionals(-1, 10)
        assert (b1.type_i, b1.type_ii, b1.type_iii) == ((7, 8, 10), (4, 6), (5,))

    def test_landau_normalizer(self):
        x = 10 ** 6
        assert landau_normalizer(x) == pytest.approx(
            x * math.log(math.log(x)) / math.log(x))
        with pytest.raises(ValidationError):
            landau_normalizer(2.0)


class TestSingularSeries:
    def test_matches_independent_euler_product(self):
        ## same product, no shared code: Euler-criterion symbols, plain loop
        limit = 10 ** 5
        ps = [int(p) for p in sieve_primes(limit)[1:]]
        for c, cp in ((-5, 45), (-3, 37), (-1, 29), (1, 21), (3, 13), (5, 5)):
            prod = 1.0
            for p in ps:
                prod *= 1.0 - legendre_euler(cp, p) / (p - 1)
            est = hardy_littlewood_constant(c, limit)
            assert est.value == pytest.approx(prod, rel=1e-9)

    def test_pinned_constants(self):
        for c in (-5, -3, 5):
            est = hardy_littlewood_constant(c, 10 ** 6)
            assert abs(est.value - golden.HL_CONSTANTS[c]) < golden.HL_TOLERANCE
            assert est.oscillation < 0.01

    def test_minus3_differs_from_minus5(self):
        ## distinct discriminants (37 vs 45) force distinct products; the
        ## p = 3 factor alone is 1/2 vs 1
        a = hardy_littlewood_constant(-3, 10 ** 5).value
        b = hardy_littlewood_constant(-5, 10 ** 5).value
        assert abs(a - b) > 0.5

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValidationError):
            hardy_littlewood_constant(-7, 10 ** 5)
        with pytest.raises(ValidationError):
            hardy_littlewood_constant(-5, 50)
