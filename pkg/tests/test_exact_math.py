import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from parallelo.exact_math import (
    build_sieves,
    ceil_div,
    distinct_prime_factors,
    egcd,
    floor_div,
    frac,
    gcd,
    is_prime,
    legendre_totient,
    legendre_totient_direct,
    mod_inverse,
    primes_up_to,
    set_sieve_max,
    shared_sieves,
    smallest_prime_factors,
    squarefree_divisors,
    sum_fractions,
    totient_ratio_sum,
)


def test_gcd_edge_cases():
    assert gcd(0, 0) == 0
    assert gcd(0, 5) == 5
    assert gcd(-4, 6) == 2
    assert gcd(12, 18) == 6


@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))
def test_egcd_bezout(a, b):
    if a == 0 and b == 0:
        with pytest.raises(ValueError):
            egcd(a, b)
        return
    g, x, y = egcd(a, b)
    assert g == gcd(a, b) > 0
    assert a * x + b * y == g


def test_egcd_known_value():
    assert egcd(240, 46) == (2, -9, 47)


def test_mod_inverse():
    assert mod_inverse(3, 7) == 5
    assert mod_inverse(1, 2) == 1
    assert mod_inverse(-3, 7) == mod_inverse(4, 7)
    with pytest.raises(ValueError, match="gcd"):
        mod_inverse(4, 8)
    with pytest.raises(ValueError, match="modulus"):
        mod_inverse(1, 1)


@given(st.integers(-10**6, 10**6), st.integers(-10**3, 10**3).filter(bool))
def test_floor_ceil_div_match_fractions(p, q):
    f = Fraction(p, q)
    assert floor_div(p, q) == f.numerator // f.denominator
    assert ceil_div(p, q) == -((-f.numerator) // f.denominator)


def test_div_by_zero():
    with pytest.raises(ZeroDivisionError):
        floor_div(1, 0)
    with pytest.raises(ZeroDivisionError):
        ceil_div(1, 0)


def test_frac_values():
    assert frac(Fraction(7, 3)) == Fraction(1, 3)
    assert frac(Fraction(-7, 3)) == Fraction(2, 3)
    assert frac(5) == 0
    assert frac(Fraction(-4)) == 0


@given(st.fractions(max_denominator=10**4))
def test_frac_reflection(x):
    if x.denominator == 1:
        assert frac(x) + frac(-x) == 0
    else:
        assert frac(x) + frac(-x) == 1


def test_build_sieves_small_tables():
    t = build_sieves(6)
    assert t.mobius[1:] == [1, -1, -1, 0, -1, 1]
    assert t.phi[1:] == [1, 1, 2, 2, 4, 2]
    t1 = build_sieves(1)
    assert t1.mobius[1:] == [1] and t1.phi[1:] == [1]


def test_build_sieves_budget():
    with pytest.raises(ValueError, match="sieve_max"):
        build_sieves(100, sieve_max=10)
    with pytest.raises(ValueError):
        build_sieves(0)


def test_sieve_divisor_sum_identities():
    t = build_sieves(2000)
    for m in range(1, 2001):
        divisor_mu = sum(mu for d, mu in squarefree_divisors(m))
        assert divisor_mu == (1 if m == 1 else 0)
        assert t.phi[m] == sum((m // d) * mu for d, mu in squarefree_divisors(m))


def test_squarefree_divisors():
    assert squarefree_divisors(1) == [(1, 1)]
    assert squarefree_divisors(12) == [(1, 1), (2, -1), (3, -1), (6, 1)]
    assert squarefree_divisors(30) == [
        (1, 1), (2, -1), (3, -1), (5, -1), (6, 1), (10, 1), (15, 1), (30, -1)]


def test_distinct_prime_factors():
    assert distinct_prime_factors(1) == []
    assert distinct_prime_factors(12) == [2, 3]
    assert distinct_prime_factors(97) == [97]
    assert distinct_prime_factors(2 * 3 * 5 * 49) == [2, 3, 5, 7]


def test_legendre_totient_values():
    assert legendre_totient(10, 6) == 3  # 1, 5, 7
    assert legendre_totient(0, 5) == 0
    assert legendre_totient(Fraction(10, 3), 2) == 2  # 1, 3
    with pytest.raises(ValueError):
        legendre_totient(-1, 5)
    with pytest.raises(ValueError):
        legendre_totient(5, 0)


def test_legendre_totient_matches_enumeration():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(1, 60)
        x = Fraction(rng.randint(0, 400), rng.randint(1, 9))
        assert legendre_totient(x, n) == legendre_totient_direct(x, n)


def test_legendre_totient_equals_phi_at_diagonal():
    phi = build_sieves(500).phi
    for m in range(1, 501):
        assert legendre_totient(m, m) == phi[m]


def test_sum_fractions_empty_and_simple():
    assert sum_fractions([]) == 0
    assert sum_fractions([(1, 2)]) == Fraction(1, 2)
    assert sum_fractions([(1, 2), (1, 3), (1, 6)]) == 1


@given(st.lists(st.tuples(st.integers(-50, 50), st.integers(1, 40)), max_size=40))
def test_sum_fractions_matches_naive(pairs):
    naive = sum((Fraction(n, d) for n, d in pairs), Fraction(0))
    assert sum_fractions(pairs) == naive


def test_totient_ratio_sum_values_and_cache_order():
    assert totient_ratio_sum(1) == 1
    assert totient_ratio_sum(2) == Fraction(3, 2)
    assert totient_ratio_sum(3) == Fraction(13, 6)
    # out-of-order queries must agree with a fresh linear computation
    phi = build_sieves(80).phi
    def fresh(a):
        return sum(Fraction(phi[s], s) for s in range(1, a + 1))
    for a in (50, 10, 37, 80, 11):
        assert totient_ratio_sum(a) == fresh(a)


def test_primes():
    assert primes_up_to(1) == []
    assert primes_up_to(2) == [2]
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    trial = [m for m in range(2, 1000)
             if all(m % d for d in range(2, int(m**0.5) + 1))]
    assert primes_up_to(999) == trial
    assert [m for m in range(200) if is_prime(m)] == primes_up_to(199)


def test_smallest_prime_factors():
    spf = smallest_prime_factors(30)
    assert spf[2] == 2 and spf[9] == 3 and spf[30] == 2 and spf[29] == 29
    assert spf[1] == 0


def test_shared_sieves_grow():
    t = shared_sieves(10)
    assert t.limit >= 10
    t2 = shared_sieves(5)
    assert t2.limit >= t.limit  # never shrinks


def test_set_sieve_max_guard():
    set_sieve_max(10**6)
    with pytest.raises(ValueError):
        set_sieve_max(0)
