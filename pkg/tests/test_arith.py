"""Exact-arithmetic tests: every derived expectation is computed by an
independent brute-force oracle (trial division, quadratic-residue search,
divisor scan) before being asserted against the library."""

import math

import pytest
from hypothesis import given, strategies as st

from fibrank import (
    Factorization,
    OutOfRangeError,
    PrimePower,
    U64_MAX,
    divisors,
    factor,
    gcd_lcm,
    is_prime,
    jacobi,
    mobius,
)
from fibrank.arith import mobius_spf_sieve, primes_upto


def trial_factor(n):
    """Oracle: factorization by unbounded trial division."""
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def trial_is_prime(n):
    return n >= 2 and trial_factor(n) == [(n, 1)]


def divisor_scan(n):
    """Oracle: divisors by scanning every candidate."""
    return [d for d in range(1, n + 1) if n % d == 0]


def as_pairs(f: Factorization):
    return [(pp.p, pp.e) for pp in f.factors]


class TestIsPrime:
    def test_unit_is_not_prime(self):
        assert not is_prime(1)

    def test_smallest_prime(self):
        assert is_prime(2)

    def test_3599131_matches_trial_division(self):
        # oracle: 3599131 = 31 * 116101
        assert not trial_is_prime(3599131)
        assert not is_prime(3599131)

    def test_small_range_vs_trial_division(self):
        for n in range(1, 5000):
            assert is_prime(n) == trial_is_prime(n), n

    def test_large_known_primes(self):
        for p in (10**9 + 7, 10**9 + 9, 2**61 - 1):
            assert is_prime(p)
        assert not is_prime(2**61 - 1 + 2)

    def test_rejects_out_of_range(self):
        with pytest.raises(OutOfRangeError):
            is_prime(2**64)
        with pytest.raises(OutOfRangeError):
            is_prime(0)

    @given(st.integers(1, 10**6))
    def test_agrees_with_trial_division(self, n):
        assert is_prime(n) == trial_is_prime(n)


class TestFactor:
    def test_one_has_empty_factorization(self):
        f = factor(1)
        assert f.value == 1 and f.factors == ()

    def test_fib12(self):
        assert as_pairs(factor(144)) == [(2, 4), (3, 2)]

    def test_fib24(self):
        # oracle: trial division
        assert trial_factor(46368) == [(2, 5), (3, 2), (7, 1), (23, 1)]
        assert as_pairs(factor(46368)) == [(2, 5), (3, 2), (7, 1), (23, 1)]

    def test_exhaustive_small(self):
        for n in range(1, 10_000):
            assert as_pairs(factor(n)) == trial_factor(n), n

    def test_semiprime_needs_rho(self):
        n = (10**9 + 7) * (10**9 + 9)
        assert as_pairs(factor(n)) == [(10**9 + 7, 1), (10**9 + 9, 1)]

    def test_prime_square_needs_rho(self):
        n = (10**9 + 7) ** 2
        assert as_pairs(factor(n)) == [(10**9 + 7, 2)]

    def test_u64_boundary(self):
        assert as_pairs(factor(U64_MAX)) == [(3, 1), (5, 1), (17, 1), (257, 1), (641, 1), (65537, 1), (6700417, 1)]
        with pytest.raises(OutOfRangeError):
            factor(U64_MAX + 1)

    @given(st.integers(1, 10**7))
    def test_reconstructs_value(self, n):
        f = factor(n)
        prod = 1
        for p, e in as_pairs(f):
            assert trial_is_prime(p) or p > 10**6  # oracle affordable below 1e6
            prod *= p**e
        assert prod == n

    def test_factorization_type_rejects_garbage(self):
        with pytest.raises(ValueError):
            Factorization(12, (PrimePower(3, 1), PrimePower(2, 2)))  # unsorted
        with pytest.raises(ValueError):
            Factorization(12, (PrimePower(2, 2),))  # wrong product


class TestMobius:
    def test_examples(self):
        assert mobius(factor(1)) == 1
        assert mobius(factor(6)) == 1
        assert mobius(factor(12)) == 0

    @given(st.integers(1, 2000), st.integers(1, 2000))
    def test_multiplicative_on_coprime(self, a, b):
        if math.gcd(a, b) == 1:
            assert mobius(factor(a * b)) == mobius(factor(a)) * mobius(factor(b))

    def test_mobius_sum_is_unit_indicator(self):
        # sum_{d | n} mu(d) = [n == 1] for all n <= 10^4
        for n in range(1, 10_001):
            total = sum(mobius(factor(d)) for d in divisors(factor(n)))
            assert total == (1 if n == 1 else 0), n

    def test_sieve_agrees_with_factored_form(self):
        mu, spf = mobius_spf_sieve(3000)
        for n in range(1, 3001):
            assert mu[n] == mobius(factor(n)), n
            if n > 1:
                assert spf[n] == factor(n).factors[0].p


class TestDivisors:
    def test_examples(self):
        assert divisors(factor(1)) == [1]
        assert divisors(factor(12)) == [1, 2, 3, 4, 6, 12]
        assert divisor_scan(28) == [1, 2, 4, 7, 14, 28]
        assert divisors(factor(28)) == [1, 2, 4, 7, 14, 28]

    def test_exhaustive_small(self):
        for n in range(1, 2000):
            assert divisors(factor(n)) == divisor_scan(n), n

    @given(st.integers(1, 10**6))
    def test_count_is_tau(self, n):
        f = factor(n)
        ds = divisors(f)
        assert len(ds) == f.tau()
        assert ds == sorted(set(ds))

    def test_divisor_cap(self):
        # highly composite n below 2^64 with tau(n) = 5 * 4 * 3 * 2^11 = 122880 > 2^16
        n = 2**4 * 3**3 * 5**2 * (7 * 11 * 13 * 17 * 19 * 23 * 29 * 31 * 37 * 41 * 43)
        assert factor(n).tau() == 122880
        with pytest.raises(OutOfRangeError):
            divisors(factor(n))


class TestJacobi:
    def test_examples(self):
        assert jacobi(5, 11) == 1  # 4^2 = 16 = 5 (mod 11)
        assert jacobi(5, 7) == -1
        assert jacobi(0, 5) == 0

    def test_rejects_even_modulus(self):
        with pytest.raises(ValueError):
            jacobi(3, 8)

    def test_vs_quadratic_residue_search(self):
        # Legendre symbol oracle: exhaust squares mod p, for every odd prime p < 1000
        for p in primes_upto(999):
            if p == 2:
                continue
            squares = {x * x % p for x in range(1, p)}
            for a in range(p):
                expected = 0 if a == 0 else (1 if a in squares else -1)
                assert jacobi(a, p) == expected, (a, p)

    @given(st.integers(-10**6, 10**6), st.integers(0, 10**4))
    def test_multiplicative_in_top(self, a, i):
        n = 2 * i + 1
        assert jacobi(a * a, n) in (0, 1)
        assert jacobi(a % n if n > 1 else 0, n) == jacobi(a, n)


class TestGcdLcm:
    def test_examples(self):
        assert gcd_lcm(6, 8) == (2, 24)
        assert gcd_lcm(7, 1) == (1, 7)
        assert gcd_lcm(12, 144) == (12, 144)

    def test_zero_cases(self):
        assert gcd_lcm(0, 5) == (5, 0)
        with pytest.raises(ValueError):
            gcd_lcm(0, 0)

    def test_lcm_overflow_is_error_not_wrap(self):
        with pytest.raises(OutOfRangeError):
            gcd_lcm(2**63, 2**63 - 1)

    @given(st.integers(0, 10**9), st.integers(0, 10**9))
    def test_matches_math(self, a, b):
        if a == 0 and b == 0:
            return
        assert gcd_lcm(a, b) == (math.gcd(a, b), math.lcm(a, b))
