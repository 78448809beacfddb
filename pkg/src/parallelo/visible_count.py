"""Counting visible lattice points in canonical clean parallelograms.

Two independent routes compute the same integer and are cross-checked
against each other everywhere:

* direct: the interior point at height k is (ceil(k*a/n), k), so the count
  is a single gcd scan over k = 1..n-1.

* formula: slice the parallelogram into a vertical strips.  Strip s holds
  the interior points whose height k satisfies (s-1)*n/a < k <= s*n/a, and
  the visible ones among them are counted by a Legendre totient:
  V(s) = phi(s*n/a, s) - phi((s-1)*n/a, s).  Because the strip range is
  half-open on the left, summing V(s) over s = 1..a picks up k = 1..n,
  i.e. every interior height plus the corner (a, n) (always visible, it is
  primitive), and nothing else.  Hence

      sum_{s=1}^{a} V(s) = V + 1

  and the parallelogram count is the column sum minus one.  Expanding the
  totient by Mobius inversion and splitting floor into value minus
  fractional part gives the exact ratio decomposition

      V/n = (1/a) * sum_{s<=a} phi(s)/s
            + (1/n) * sum_{s<=a} sum_{d|s} ({(s-1)n/(ad)} - {sn/(ad)}) mu(d)
            - 1/n

  with {t} the fractional part.  The double sum is the error term; its
  absolute value is bounded by sum_{s<=a} 2^omega(s).

Both expansions regroup the s-sum by squarefree d, which turns the inner
work into integer mod/floor arithmetic with one denominator a*d per group;
that is what makes exhaustive sweeps affordable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact_math import (
    ceil_div,
    gcd,
    is_prime,
    legendre_totient,
    mod_inverse,
    shared_sieves,
    squarefree_divisors,
    sum_fractions,
    totient_ratio_sum,
)
from .lattice import Parallelogram

METHOD_DIRECT = "direct"
METHOD_FORMULA = "formula"

# k*a + n - 1 < n*n + n must stay below 2^63 for the vectorized scan.
_INT64_SAFE_N = 3_000_000_000
# Below this the numpy call overhead loses to the plain loop.
_NUMPY_MIN_N = 100
# Vectorize a mod/floor group only when it has enough elements to pay off.
_NUMPY_MIN_GROUP = 64


@dataclass(frozen=True)
class CountBreakdown:
    parallelogram: Parallelogram
    v: int
    method: str
    columns: list[int] | None = None  # per-strip counts when requested

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.v, self.parallelogram.n)


@dataclass(frozen=True)
class ErrorTermReport:
    """Exact pieces of the ratio decomposition for one parallelogram."""

    parallelogram: Parallelogram
    main_term: Fraction   # (1/a) * sum phi(s)/s
    double_sum: Fraction  # fractional-part double sum, sign included
    bound: int            # sum_{s<=a} 2^omega(s), dominates |double_sum|


def count_direct(par: Parallelogram, impl: str = "auto") -> CountBreakdown:
    """Count visible interior points by scanning heights k = 1..n-1.

    impl: "auto" picks the vectorized scan for large n, "python" and
    "numpy" force one implementation (the two are cross-checked in tests).
    """
    if impl not in ("auto", "python", "numpy"):
        raise ValueError(f"impl must be auto, python or numpy, got {impl!r}")
    a, n = par.a, par.n
    if impl == "numpy" and n > _INT64_SAFE_N:
        raise ValueError(f"n = {n} exceeds the exact int64 range of the numpy scan")
    use_numpy = impl == "numpy" or (impl == "auto" and _NUMPY_MIN_N <= n <= _INT64_SAFE_N)
    if use_numpy:
        k = np.arange(1, n, dtype=np.int64)
        x = (k * a + (n - 1)) // n  # ceil(k*a/n), exact in int64
        v = int(np.count_nonzero(np.gcd(x, k) == 1))
    else:
        v = sum(1 for k in range(1, n) if gcd((k * a + n - 1) // n, k) == 1)
    return CountBreakdown(parallelogram=par, v=v, method=METHOD_DIRECT)


def count_column(s: int, par: Parallelogram) -> int:
    """Visible points in strip s, i.e. heights (s-1)*n/a < k <= s*n/a.

    Counted as a Legendre totient difference; coprimality to s is exactly
    visibility for points in this strip.
    """
    a, n = par.a, par.n
    if not 1 <= s <= a:
        raise ValueError(f"strip index must be in [1, {a}], got {s}")
    hi = legendre_totient(Fraction(s * n, a), s)
    lo = legendre_totient(Fraction((s - 1) * n, a), s)
    return hi - lo


def count_formula(par: Parallelogram, keep_columns: bool = False) -> CountBreakdown:
    """Count via the column sums: V = sum_s V(s) - 1.

    The minus one removes the corner (a, n), which the half-open strip
    ranges include at s = a.  With keep_columns the per-strip counts are
    computed one by one and returned; otherwise the double sum is regrouped
    by squarefree d for speed (same terms, different association order).
    """
    a, n = par.a, par.n
    if keep_columns:
        columns = [count_column(s, par) for s in range(1, a + 1)]
        v = sum(columns) - 1
        return CountBreakdown(parallelogram=par, v=v, method=METHOD_FORMULA,
                              columns=columns)
    mob = shared_sieves(a).mobius
    total = 0
    vectorize = a * n < 2**62  # keeps s*n exact in int64
    for d in range(1, a + 1):
        mu = mob[d]
        if mu == 0:
            continue
        ad = a * d
        if vectorize and a // d >= _NUMPY_MIN_GROUP:
            s = np.arange(d, a + 1, d, dtype=np.int64)
            sn = s * n
            t = int(np.sum(sn // ad - (sn - n) // ad))
        else:
            t = 0
            for s in range(d, a + 1, d):
                sn = s * n
                t += sn // ad - (sn - n) // ad
        total += mu * t
    return CountBreakdown(parallelogram=par, v=total - 1, method=METHOD_FORMULA)


def count_mobius_ratio(par: Parallelogram) -> tuple[Fraction, ErrorTermReport]:
    """Exact V/n as main term plus error term, with the divisor bound.

    Returns (ratio, report) where ratio = main_term + double_sum/n - 1/n
    and ratio * n is exactly the visible count.
    """
    a, n = par.a, par.n
    main = totient_ratio_sum(a) / a
    mob = shared_sieves(a).mobius
    terms: list[tuple[int, int]] = []
    bound = 0
    vectorize = a * n < 2**62
    for d in range(1, a + 1):
        mu = mob[d]
        if mu == 0:
            continue
        bound += a // d  # counts pairs (s, d) with d | s: equals sum 2^omega(s)
        ad = a * d
        if vectorize and a // d >= _NUMPY_MIN_GROUP:
            s = np.arange(d, a + 1, d, dtype=np.int64)
            sn = s * n
            t = int(np.sum((sn - n) % ad - sn % ad))
        else:
            t = 0
            for s in range(d, a + 1, d):
                sn = s * n
                t += (sn - n) % ad - sn % ad
        if t:
            # term is mu*t/(a*d); the shared 1/a factors out of the tree so
            # merged denominators stay as small as possible
            terms.append((mu * t, d))
    double = sum_fractions(terms) / a
    ratio = main + (double - 1) / n
    report = ErrorTermReport(parallelogram=par, main_term=main,
                             double_sum=double, bound=bound)
    return ratio, report


def double_sum_bound(a: int) -> int:
    """sum_{s<=a} 2^omega(s), computed as sum over squarefree d of floor(a/d)."""
    if a < 1:
        raise ValueError(f"argument must be positive, got {a}")
    mob = shared_sieves(a).mobius
    return sum(a // d for d in range(1, a + 1) if mob[d] != 0)


def closed_form_special(par: Parallelogram) -> int | None:
    """Exact count for the families with known closed forms, else None.

    a = 1 gives n - 1 (every interior point is (1, k), visible), a = n - 1
    gives 1 (points are (k, k), only (1, 1) visible), and for odd n the
    slopes 2, (n+1)/2, (n-1)/2, n-2 have closed forms split by n mod 4.
    """
    a, n = par.a, par.n
    if a == 1:
        return n - 1
    if a == n - 1:
        return 1
    if n % 2 == 1:
        if a == 2 or a == (n + 1) // 2:
            return (3 * n - 3) // 4 if n % 4 == 1 else (3 * n - 5) // 4
        if a == (n - 1) // 2 or a == n - 2:
            return (n + 1) // 2
    return None


def inverse_partner(par: Parallelogram) -> Parallelogram:
    """The parallelogram with slope a^{-1} mod n; shares the visible count."""
    return Parallelogram(a=mod_inverse(par.a, par.n), n=par.n)


def gcd_identity_check(par: Parallelogram, k: int) -> bool:
    """Check the equalities tying the complement slope n-a to the floor point.

    gcd(ceil(k(n-a)/n), k) = gcd(ceil(k(n-a)/n), floor(ka/n)) = gcd(floor(ka/n), k),
    and for prime n all three also equal gcd(ka mod n, k).
    """
    a, n = par.a, par.n
    if not 1 <= k < n:
        raise ValueError(f"height k must be in [1, {n - 1}], got {k}")
    up = ceil_div(k * (n - a), n)
    down = (k * a) // n
    g1 = gcd(up, k)
    g2 = gcd(up, down)
    g3 = gcd(down, k)
    if not g1 == g2 == g3:
        return False
    if is_prime(n) and g1 != gcd((k * a) % n, k):
        return False
    return True


def parity_upper_bound(par: Parallelogram) -> Fraction | None:
    """(3/4) * a * ceil(n/a) when a > 1 is even and ceil(n/a) is even, else None.

    Under those parity hypotheses the bound dominates the visible count.
    """
    a, n = par.a, par.n
    if a <= 1 or a % 2 != 0:
        return None
    m = ceil_div(n, a)
    if m % 2 != 0:
        return None
    return Fraction(3 * a * m, 4)


def count_visible(par: Parallelogram, method: str = "auto",
                  impl: str = "auto") -> CountBreakdown:
    """Dispatch: closed form when available under "auto", else chosen route."""
    if method == "auto":
        special = closed_form_special(par)
        if special is not None:
            return CountBreakdown(parallelogram=par, v=special,
                                  method="closed_form")
        return count_direct(par, impl=impl)
    if method == METHOD_DIRECT:
        return count_direct(par, impl=impl)
    if method == METHOD_FORMULA:
        return count_formula(par)
    raise ValueError(f"method must be auto, direct or formula, got {method!r}")
