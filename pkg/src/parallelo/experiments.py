"""Numerical experiments over families of clean parallelograms.

The profile of a fixed n is the map a -> V(a, n)/n over admissible slopes;
scans sweep n and track extremes against the conjectured open bounds
(1/2, 3/4) for non-extreme slopes; rho sequences follow a = ceil(rho * n)
for a fixed rho in (0, 1) and compare the ratios against 6/pi^2, the
density of visible points in the plane.

All counting inside is exact; floats appear only in deviation columns and
plots.  Scans can fan out over worker processes; the merge is performed in
ascending n either way, so results and tie-breaking (smallest n, then
smallest a) are identical at every worker count.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .exact_math import ceil_div, gcd, totient_ratio_sum
from .lattice import Parallelogram
from .visible_count import METHOD_DIRECT, count_visible

# Density of visible lattice points in the plane, 6/pi^2.
VISIBLE_DENSITY = 0.6079271018540267

CONJECTURE_LOW = Fraction(1, 2)
CONJECTURE_HIGH = Fraction(3, 4)


@dataclass(frozen=True)
class ProfileRecord:
    n: int
    a: int
    v: int
    ratio: Fraction

    @property
    def ratio_float(self) -> float:
        return float(self.ratio)


def admissible_slopes(n: int) -> list[int]:
    """All a with 1 <= a < n and gcd(a, n) = 1, ascending."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    return [a for a in range(1, n) if gcd(a, n) == 1]


def _count(par: Parallelogram, method: str) -> int:
    return count_visible(par, method=method).v


def _profile_chunk(args: tuple[int, list[int], str]) -> list[int]:
    n, slopes, method = args
    return [_count(Parallelogram(a, n), method) for a in slopes]


def profile(n: int, method: str = METHOD_DIRECT,
            workers: int = 1) -> list[ProfileRecord]:
    """V(a, n)/n for every admissible slope a, ascending in a.

    Worker processes split the slope list into contiguous chunks; the
    ordered merge keeps output independent of the worker count.
    """
    slopes = admissible_slopes(n)
    if workers > 1 and len(slopes) >= 4 * workers:
        import multiprocessing as mp

        step = (len(slopes) + workers * 4 - 1) // (workers * 4)
        chunks = [slopes[i:i + step] for i in range(0, len(slopes), step)]
        with mp.get_context().Pool(processes=workers) as pool:
            counted = pool.map(_profile_chunk,
                               [(n, chunk, method) for chunk in chunks])
        vs = [v for chunk in counted for v in chunk]
    else:
        vs = _profile_chunk((n, slopes, method))
    return [ProfileRecord(n=n, a=a, v=v, ratio=Fraction(v, n))
            for a, v in zip(slopes, vs)]


# === conjecture scan ===

@dataclass(frozen=True)
class NSummary:
    """Per-n extremes over non-extreme slopes; carries plot data for scans."""

    n: int
    pairs: int
    min_a: int
    min_ratio: Fraction
    max_a: int
    max_ratio: Fraction


@dataclass(frozen=True)
class ScanReport:
    n_min: int
    n_max: int
    excluded: str
    pairs_checked: int
    min_ratio: Fraction | None
    min_witness: tuple[int, int] | None  # (a, n)
    max_ratio: Fraction | None
    max_witness: tuple[int, int] | None
    violations: list[ProfileRecord]
    per_n: list[NSummary] | None = None

    @property
    def holds(self) -> bool:
        return not self.violations


def _scan_single_n(args: tuple[int, str]) -> tuple[NSummary | None, list[ProfileRecord]]:
    """Worker body: extremes and violations for one n, slopes ascending."""
    n, method = args
    min_a = max_a = 0
    min_r: Fraction | None = None
    max_r: Fraction | None = None
    pairs = 0
    violations: list[ProfileRecord] = []
    for a in range(2, n - 1):
        if gcd(a, n) != 1:
            continue
        pairs += 1
        v = _count(Parallelogram(a, n), method)
        # 1/2 < v/n < 3/4 as integer comparisons; equality already violates.
        if 2 * v <= n or 4 * v >= 3 * n:
            violations.append(ProfileRecord(n=n, a=a, v=v, ratio=Fraction(v, n)))
        r = Fraction(v, n)
        if min_r is None or r < min_r:
            min_a, min_r = a, r
        if max_r is None or r > max_r:
            max_a, max_r = a, r
    if pairs == 0:
        return None, violations
    return NSummary(n=n, pairs=pairs, min_a=min_a, min_ratio=min_r,
                    max_a=max_a, max_ratio=max_r), violations


def conjecture_scan(n_min: int, n_max: int, workers: int = 1,
                    method: str = METHOD_DIRECT, keep_per_n: bool = False,
                    progress: Callable[[int], None] | None = None) -> ScanReport:
    """Sweep n in [n_min, n_max], all slopes a not in {1, n-1}, gcd(a, n) = 1.

    Checks the strict bounds 1/2 < V/n < 3/4 exactly and reports global
    extremes with witnesses.  Worker processes split the sweep by n; merging
    happens in ascending n with strict comparisons, so witnesses resolve to
    the smallest n (then smallest a) at any worker count.
    """
    if n_min < 2 or n_min > n_max:
        raise ValueError(
            f"need 2 <= n_min <= n_max, got n_min={n_min}, n_max={n_max}"
        )
    ns = range(n_min, n_max + 1)
    jobs = ((n, method) for n in ns)
    if workers > 1:
        import multiprocessing as mp

        ctx = mp.get_context()
        chunk = max(1, (n_max - n_min + 1) // (workers * 8))
        pool = ctx.Pool(processes=workers)
        try:
            results: Iterable = pool.imap(_scan_single_n, jobs, chunksize=chunk)
            report = _merge_scan(n_min, n_max, ns, results, keep_per_n, progress)
        finally:
            pool.close()
            pool.join()
        return report
    return _merge_scan(n_min, n_max, ns, map(_scan_single_n, jobs), keep_per_n,
                       progress)


def _merge_scan(n_min: int, n_max: int, ns: Sequence[int], results: Iterable,
                keep_per_n: bool, progress: Callable[[int], None] | None) -> ScanReport:
    min_r = max_r = None
    min_w = max_w = None
    pairs = 0
    violations: list[ProfileRecord] = []
    per_n: list[NSummary] = []
    for n, (summary, viols) in zip(ns, results):
        violations.extend(viols)
        if summary is not None:
            pairs += summary.pairs
            if min_r is None or summary.min_ratio < min_r:
                min_r, min_w = summary.min_ratio, (summary.min_a, n)
            if max_r is None or summary.max_ratio > max_r:
                max_r, max_w = summary.max_ratio, (summary.max_a, n)
            if keep_per_n:
                per_n.append(summary)
        if progress is not None:
            progress(n)
    return ScanReport(
        n_min=n_min, n_max=n_max,
        excluded="a in {1, n-1} and gcd(a, n) > 1",
        pairs_checked=pairs,
        min_ratio=min_r, min_witness=min_w,
        max_ratio=max_r, max_witness=max_w,
        violations=violations,
        per_n=per_n if keep_per_n else None,
    )


# === rho sequences ===

class RhoValue:
    """A target slope density rho in (0, 1); knows ceil(rho * n) exactly."""

    name: str
    warning: str | None = None

    def ceil_multiple(self, n: int) -> int:
        raise NotImplementedError


class ContinuedFractionRho(RhoValue):
    """Irrational rho given by its continued fraction terms.

    ceil(rho * n) is computed by walking convergents until two consecutive
    ones bracket rho tightly enough that floor(rho * n) is decided; since
    rho is irrational, rho * n is never an integer and ceil = floor + 1.
    Integer arithmetic only.
    """

    def __init__(self, name: str, terms: Callable[[], Iterator[int]]):
        self.name = name
        self._terms = terms

    def floor_multiple(self, n: int) -> int:
        it = self._terms()
        a0 = next(it)
        p_prev, q_prev = 1, 0
        p, q = a0, 1
        lo_num = lo_den = hi_num = hi_den = None
        for term in it:
            p_prev, p = p, term * p + p_prev
            q_prev, q = q, term * q + q_prev
            # consecutive convergents straddle rho
            if (p * q_prev) < (p_prev * q):
                lo_num, lo_den, hi_num, hi_den = p, q, p_prev, q_prev
            else:
                lo_num, lo_den, hi_num, hi_den = p_prev, q_prev, p, q
            f_lo = (n * lo_num) // lo_den
            f_hi = (n * hi_num) // hi_den
            if f_lo == f_hi:
                return f_lo
        raise ValueError(f"continued fraction for {self.name} terminated early")

    def ceil_multiple(self, n: int) -> int:
        return self.floor_multiple(n) + 1


class RationalRho(RhoValue):
    """Exact rational stand-in for rho; usable but flagged.

    The limit statements this sequence probes concern irrational rho; a
    rational value eventually locks a = rho * n onto exact multiples, so
    results carry a warning rather than silence.
    """

    def __init__(self, value: Fraction):
        if not 0 < value < 1:
            raise ValueError(f"rho must lie strictly between 0 and 1, got {value}")
        self.value = value
        self.name = f"{value.numerator}/{value.denominator}"
        self.warning = (
            f"rho = {self.name} is rational; the convergence statement "
            "concerns irrational rho, treat results as a proxy"
        )

    def ceil_multiple(self, n: int) -> int:
        return ceil_div(n * self.value.numerator, self.value.denominator)


def golden_rho() -> ContinuedFractionRho:
    """rho = (sqrt(5) - 1)/2 = [0; 1, 1, 1, ...], the golden ratio conjugate."""
    return ContinuedFractionRho(
        "golden", lambda: itertools.chain((0,), itertools.repeat(1))
    )


def parse_rho(text: str) -> RhoValue:
    """Parse a rho argument: the name "golden", or an exact rational.

    Rationals accept "p/q" or a decimal literal (converted exactly).
    """
    s = text.strip().lower()
    if s == "golden":
        return golden_rho()
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"cannot parse rho {text!r}: {e}") from None
    return RationalRho(value)


POLICY_SKIP = "skip"
POLICY_NEAREST = "nearest"


@dataclass(frozen=True)
class RhoRecord:
    n: int
    a: int                      # ceil(rho*n), possibly adjusted under "nearest"
    skipped: bool
    reason: str                 # empty when the row counted normally
    v: int | None
    ratio: Fraction | None
    deviation: float | None     # |float(ratio) - 6/pi^2|


def _nearest_coprime(a0: int, n: int) -> int | None:
    """Nearest a in [2, n-2] with gcd(a, n) = 1; ties resolve downward."""
    lo, hi = 2, n - 2
    if lo > hi:
        return None
    for delta in range(0, n):
        for cand in (a0 - delta, a0 + delta):
            if lo <= cand <= hi and gcd(cand, n) == 1:
                return cand
    return None


def rho_sequence(rho: RhoValue, n_values: Iterable[int],
                 policy: str = POLICY_SKIP,
                 method: str = METHOD_DIRECT) -> list[RhoRecord]:
    """Ratios along a = ceil(rho * n) for the given n values.

    When gcd(a, n) > 1 (or a = n falls outside [1, n)), the policy decides:
    "skip" emits a row marked skipped; "nearest" substitutes the nearest
    coprime slope in [2, n-2] and records the adjustment as the reason.
    """
    if policy not in (POLICY_SKIP, POLICY_NEAREST):
        raise ValueError(f"policy must be skip or nearest, got {policy!r}")
    records = []
    for n in n_values:
        if n < 2:
            raise ValueError(f"n must be at least 2, got {n}")
        a0 = rho.ceil_multiple(n)
        a = a0
        reason = ""
        if not (1 <= a0 < n) or gcd(a0, n) != 1:
            why = f"a = {a0} is n" if a0 == n else f"gcd({a0}, {n}) = {gcd(a0, n)}"
            if policy == POLICY_SKIP:
                records.append(RhoRecord(n=n, a=a0, skipped=True, reason=why,
                                         v=None, ratio=None, deviation=None))
                continue
            near = _nearest_coprime(a0, n)
            if near is None:
                records.append(RhoRecord(
                    n=n, a=a0, skipped=True,
                    reason=f"{why}; no coprime slope in [2, {n - 2}]",
                    v=None, ratio=None, deviation=None))
                continue
            a = near
            reason = f"adjusted from {a0}: {why}"
        v = _count(Parallelogram(a, n), method)
        ratio = Fraction(v, n)
        records.append(RhoRecord(n=n, a=a, skipped=False, reason=reason, v=v,
                                 ratio=ratio,
                                 deviation=abs(float(ratio) - VISIBLE_DENSITY)))
    return records


def median_deviation(records: Sequence[RhoRecord]) -> float | None:
    """Median |ratio - 6/pi^2| over the non-skipped rows; None if all skipped."""
    devs = sorted(r.deviation for r in records if not r.skipped)
    if not devs:
        return None
    mid = len(devs) // 2
    if len(devs) % 2:
        return devs[mid]
    return (devs[mid - 1] + devs[mid]) / 2.0


# === density diagnostics ===

def phi_mean(a: int) -> Fraction:
    """(1/a) * sum_{s<=a} phi(s)/s, the exact main term of the ratio split."""
    return totient_ratio_sum(a) / a


def square_density(r: int) -> tuple[int, int, float]:
    """(visible, total, visible/total) over the lattice square [-r, r]^2.

    The origin is not visible (gcd 0) but is included in the total, matching
    the plain "fraction of points in the window" reading.
    """
    if r < 1:
        raise ValueError(f"radius must be positive, got {r}")
    ys = np.abs(np.arange(-r, r + 1, dtype=np.int64))
    visible = 0
    for x in range(-r, r + 1):
        visible += int(np.count_nonzero(np.gcd(ys, abs(x)) == 1))
    total = (2 * r + 1) ** 2
    return visible, total, visible / total


def discrepancy(par: Parallelogram, q: int) -> float:
    """Star discrepancy of the first q fractional parts {k*n/a}, k = 1..q.

    The points are exact rationals (k*n mod a)/a and the maximization runs
    over exact fractions; only the final value is converted to float.  That
    keeps exact facts exact, e.g. the full cycle q = a gives precisely 1/a.
    Requires 1 <= q <= a.
    """
    a = par.a
    n = par.n
    if not 1 <= q <= a:
        raise ValueError(f"q must be in [1, {a}], got {q}")
    nums = sorted((k * n) % a for k in range(1, q + 1))
    worst = Fraction(0)
    for i, num in enumerate(nums):
        x = Fraction(num, a)
        lo = x - Fraction(i, q)
        hi = Fraction(i + 1, q) - x
        worst = max(worst, abs(lo), abs(hi))
    return float(worst)
