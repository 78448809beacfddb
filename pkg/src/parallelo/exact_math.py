"""Exact integer and rational arithmetic underneath the lattice counts.

Everything in this module is exact.  Counts are Python ints, ratios are
``fractions.Fraction`` (always reduced, denominator positive, arbitrary
precision).  Floating point never participates in a count or a comparison
that decides one; floats only appear in convenience columns emitted by
callers.

The one piece with actual content is the Legendre totient

    phi(x, N) = #{ 1 <= m <= x : gcd(m, N) = 1 }
             = sum_{d | N} mu(d) * floor(x / d)

which drives the column-sum counting route.  The rest is support: extended
gcd, linear sieves for mu and phi, squarefree divisor enumeration, and a
balanced summation tree so that adding tens of thousands of fractions with
pairwise-huge lcm denominators stays affordable.
"""

from __future__ import annotations

import threading
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _math_gcd, isqrt

Rational = Fraction

DEFAULT_SIEVE_MAX = 10**6


def gcd(a: int, b: int) -> int:
    """Nonnegative gcd; gcd(x, 0) = |x| and gcd(0, 0) = 0."""
    return _math_gcd(a, b)


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) > 0.

    Inputs may be negative; both zero is an error since no positive g exists.
    """
    if a == 0 and b == 0:
        raise ValueError("egcd(0, 0) has no positive gcd")
    old_r, r = abs(a), abs(b)
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if a < 0:
        old_x = -old_x
    if b < 0:
        old_y = -old_y
    return old_r, old_x, old_y


def mod_inverse(a: int, n: int) -> int:
    """Inverse of a modulo n, in [1, n).  Requires n >= 2 and gcd(a, n) = 1."""
    if n < 2:
        raise ValueError(f"modulus must be at least 2, got {n}")
    g, x, _ = egcd(a % n, n)
    if g != 1:
        raise ValueError(
            f"{a} has no inverse modulo {n}: gcd(a, n) = {g}, must be 1"
        )
    return x % n


def floor_div(p: int, q: int) -> int:
    """floor(p / q) for q != 0, exact."""
    if q == 0:
        raise ZeroDivisionError("floor_div by zero")
    if q < 0:
        p, q = -p, -q
    return p // q


def ceil_div(p: int, q: int) -> int:
    """ceil(p / q) for q != 0, exact."""
    if q == 0:
        raise ZeroDivisionError("ceil_div by zero")
    if q < 0:
        p, q = -p, -q
    return -((-p) // q)


def frac(r: Fraction | int) -> Fraction:
    """Fractional part r - floor(r), always in [0, 1)."""
    r = Fraction(r)
    return r - (r.numerator // r.denominator)


# === sieves ===

@dataclass(frozen=True)
class SieveTables:
    """Mobius and Euler-phi values for 1..limit, indexed directly.

    Entry 0 of each list is a placeholder and must not be read.
    """

    limit: int
    mobius: list[int]
    phi: list[int]


def build_sieves(limit: int, sieve_max: int = DEFAULT_SIEVE_MAX) -> SieveTables:
    """Linear sieve for mu and phi up to limit.

    ``sieve_max`` is a memory guard: asking for more than the configured
    budget raises instead of silently allocating gigabytes.
    """
    if limit < 1:
        raise ValueError(f"sieve limit must be positive, got {limit}")
    if limit > sieve_max:
        raise ValueError(
            f"sieve limit {limit} exceeds sieve_max {sieve_max}; "
            "raise the budget explicitly if this is intended"
        )
    mob = [0] * (limit + 1)
    phi = [0] * (limit + 1)
    mob[1] = 1
    phi[1] = 1
    primes: list[int] = []
    for m in range(2, limit + 1):
        if phi[m] == 0:  # m is prime, untouched so far
            primes.append(m)
            mob[m] = -1
            phi[m] = m - 1
        for p in primes:
            mp = m * p
            if mp > limit:
                break
            if m % p == 0:
                mob[mp] = 0
                phi[mp] = phi[m] * p
                break
            mob[mp] = -mob[m]
            phi[mp] = phi[m] * (p - 1)
    return SieveTables(limit=limit, mobius=mob, phi=phi)


# Process-wide shared tables, grown monotonically to the largest limit seen.
# Workers in a process pool each build their own copy on first use.
_shared_lock = threading.Lock()
_shared_tables: SieveTables | None = None
_sieve_budget = DEFAULT_SIEVE_MAX


def set_sieve_max(sieve_max: int) -> None:
    """Adjust the process-wide sieve memory budget (config plumbing)."""
    global _sieve_budget
    if sieve_max < 1:
        raise ValueError(f"sieve_max must be positive, got {sieve_max}")
    _sieve_budget = sieve_max


def shared_sieves(limit: int) -> SieveTables:
    """Return sieve tables covering at least ``limit``, cached per process."""
    global _shared_tables
    with _shared_lock:
        if _shared_tables is None or _shared_tables.limit < limit:
            _shared_tables = build_sieves(limit, sieve_max=_sieve_budget)
        return _shared_tables


def smallest_prime_factors(limit: int) -> list[int]:
    """spf[m] = least prime factor of m for 2 <= m <= limit (spf[0..1] = 0)."""
    if limit < 1:
        raise ValueError(f"limit must be positive, got {limit}")
    spf = list(range(limit + 1))
    if limit >= 1:
        spf[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == p:
            for m in range(p * p, limit + 1, p):
                if spf[m] == m:
                    spf[m] = p
    return spf


def distinct_prime_factors(s: int) -> list[int]:
    """Distinct primes dividing s >= 1, ascending, by trial division."""
    if s < 1:
        raise ValueError(f"argument must be positive, got {s}")
    out = []
    m = s
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out.append(m)
    return out


def squarefree_divisors(s: int) -> list[tuple[int, int]]:
    """All (d, mu(d)) with d | s and d squarefree, ascending in d.

    Every divisor contributing to a Mobius sum over d | s is of this form;
    there are 2^omega(s) of them.
    """
    divs = [(1, 1)]
    for p in distinct_prime_factors(s):
        divs += [(d * p, -mu) for d, mu in divs]
    divs.sort()
    return divs


# === Legendre totient ===

def legendre_totient(x: Fraction | int, n: int) -> int:
    """phi(x, n) = #{1 <= m <= x : gcd(m, n) = 1} via Mobius inversion.

    x may be a nonnegative rational; only floor(x / d) enters.
    """
    if n < 1:
        raise ValueError(f"modulus argument must be positive, got {n}")
    if isinstance(x, Fraction):
        if x < 0:
            raise ValueError(f"x must be nonnegative, got {x}")
        num, den = x.numerator, x.denominator
    else:
        if x < 0:
            raise ValueError(f"x must be nonnegative, got {x}")
        num, den = x, 1
    total = 0
    for d, mu in squarefree_divisors(n):
        total += mu * (num // (den * d))
    return total


def legendre_totient_direct(x: Fraction | int, n: int) -> int:
    """Same as legendre_totient by literal enumeration; oracle use only."""
    if n < 1:
        raise ValueError(f"modulus argument must be positive, got {n}")
    x = Fraction(x)
    if x < 0:
        raise ValueError(f"x must be nonnegative, got {x}")
    top = x.numerator // x.denominator  # floor(x)
    return sum(1 for m in range(1, top + 1) if _math_gcd(m, n) == 1)


# === balanced rational summation ===

def sum_fractions(pairs: list[tuple[int, int]]) -> Fraction:
    """Exact sum of num/den pairs via a balanced merge tree.

    Naive left-to-right Fraction addition reduces against an accumulator
    whose denominator grows like lcm(1..k); for tens of thousands of terms
    that is the whole runtime.  Merging pairwise keeps intermediate
    denominators balanced and defers the single reduction to the end.
    """
    if not pairs:
        return Fraction(0)

    def merge(lo: int, hi: int) -> tuple[int, int]:
        if hi - lo == 1:
            return pairs[lo]
        mid = (lo + hi) // 2
        n1, d1 = merge(lo, mid)
        n2, d2 = merge(mid, hi)
        return n1 * d2 + n2 * d1, d1 * d2

    num, den = merge(0, len(pairs))
    return Fraction(num, den)


# Prefix sums S(a) = sum_{s <= a} phi(s)/s, cached so that repeated queries
# (scans touch many a values) extend from the nearest smaller checkpoint
# instead of recomputing from 1.
_prefix_lock = threading.Lock()
_prefix_keys: list[int] = []
_prefix_vals: dict[int, Fraction] = {}


def totient_ratio_sum(a: int) -> Fraction:
    """Exact S(a) = sum_{s=1}^{a} phi(s)/s."""
    if a < 1:
        raise ValueError(f"argument must be positive, got {a}")
    with _prefix_lock:
        i = bisect_right(_prefix_keys, a)
        base_a = _prefix_keys[i - 1] if i else 0
        base_s = _prefix_vals[base_a] if i else Fraction(0)
        if base_a == a:
            return base_s
        phi = shared_sieves(a).phi
        chunk = sum_fractions([(phi[s], s) for s in range(base_a + 1, a + 1)])
        total = base_s + chunk
        if a not in _prefix_vals:
            _prefix_keys.insert(i, a)
            _prefix_vals[a] = total
        return total


# === primes ===

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def primes_up_to(limit: int) -> list[int]:
    """Ascending primes <= limit by a plain byte sieve."""
    if limit < 2:
        return []
    mark = bytearray([1]) * (limit + 1)
    mark[0] = mark[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if mark[p]:
            mark[p * p :: p] = bytearray(len(mark[p * p :: p]))
    return [m for m in range(2, limit + 1) if mark[m]]
