"""Invariant suite runnable from the CLI, at desk scale.

Each check exercises one documented invariant at its stated range; --quick
shrinks the ranges (roughly n <= 100) for smoke testing.  Checks either
return a detail string or raise CheckFailure; the runner never stops early,
so a report always covers the full list.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .exact_math import (
    build_sieves,
    frac,
    gcd,
    legendre_totient,
    legendre_totient_direct,
    mod_inverse,
    shared_sieves,
    squarefree_divisors,
)
from .experiments import (
    RationalRho,
    VISIBLE_DENSITY,
    conjecture_scan,
    discrepancy,
    phi_mean,
    profile,
    rho_sequence,
)
from .lattice import (
    LatticePoint,
    Parallelogram,
    UnimodularMap,
    brute_count_interior,
    interior_points,
    is_visible,
    reduce_to_canonical,
    verify_clean,
)
from .visible_count import (
    closed_form_special,
    count_column,
    count_direct,
    count_formula,
    count_mobius_ratio,
    double_sum_bound,
    gcd_identity_check,
    inverse_partner,
    parity_upper_bound,
)

_SEED = 20260819


class CheckFailure(AssertionError):
    pass


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _coprime_pairs(n_lo: int, n_hi: int):
    for n in range(n_lo, n_hi + 1):
        for a in range(1, n):
            if gcd(a, n) == 1:
                yield a, n


def _random_pairs(count: int, n_max: int, rng: random.Random):
    made = 0
    while made < count:
        n = rng.randint(2, n_max)
        a = rng.randint(1, n - 1)
        if gcd(a, n) == 1:
            made += 1
            yield a, n


# === exact_math checks ===

def check_sieve_totient_identity(quick: bool) -> str:
    limit = 500 if quick else 3000
    tables = build_sieves(limit)
    for m in range(1, limit + 1):
        total = sum((m // d) * mu for d, mu in squarefree_divisors(m))
        if total != tables.phi[m]:
            raise CheckFailure(f"phi({m}): mobius sum {total} != sieve {tables.phi[m]}")
    return f"phi(m) = sum (m/d) mu(d) for m <= {limit}"


def check_legendre_equals_phi(quick: bool) -> str:
    limit = 1000 if quick else 10**4
    phi = shared_sieves(limit).phi
    for m in range(1, limit + 1):
        if legendre_totient(m, m) != phi[m]:
            raise CheckFailure(f"legendre_totient({m}, {m}) != phi({m})")
    return f"legendre_totient(m, m) = phi(m) for m <= {limit}"


def check_legendre_routes(quick: bool) -> str:
    x_max, n_max = (120, 40) if quick else (500, 100)
    for n in range(1, n_max + 1):
        for x in range(0, x_max + 1):
            a = legendre_totient(x, n)
            b = legendre_totient_direct(x, n)
            if a != b:
                raise CheckFailure(f"legendre_totient({x}, {n}): {a} != direct {b}")
    # spot-check rational arguments against the integer floor
    for num, den, n in ((10, 3, 4), (17, 5, 6), (99, 7, 10)):
        a = legendre_totient(Fraction(num, den), n)
        b = legendre_totient_direct(Fraction(num, den), n)
        if a != b:
            raise CheckFailure(f"legendre_totient({num}/{den}, {n}): {a} != {b}")
    return f"mobius sum = enumeration for x <= {x_max}, N <= {n_max}"


def check_frac_reflection(quick: bool) -> str:
    rng = random.Random(_SEED)
    trials = 200 if quick else 2000
    for _ in range(trials):
        num = rng.randint(-10**6, 10**6)
        den = rng.randint(1, 10**4)
        x = Fraction(num, den)
        if x.denominator == 1:
            if frac(x) != 0 or frac(-x) != 0:
                raise CheckFailure(f"frac({x}) nonzero for integer")
        elif frac(x) + frac(-x) != 1:
            raise CheckFailure(f"frac({x}) + frac({-x}) != 1")
    return f"frac(x) + frac(-x) = 1 on {trials} sampled non-integers"


# === lattice checks ===

def check_interior_count(quick: bool) -> str:
    n_hi = 60 if quick else 200
    for a, n in _coprime_pairs(2, n_hi):
        par = Parallelogram(a, n)
        pts = interior_points(par)
        interior, _ = brute_count_interior((1, 0), (a, n))
        if len(pts) != n - 1 or interior != n - 1:
            raise CheckFailure(
                f"P({a},{n}): {len(pts)} listed, scan {interior}, want {n - 1}")
    return f"interior count = n - 1 against rectangle scan, n <= {n_hi}"


def check_interior_strict(quick: bool) -> str:
    n_hi = 60 if quick else 200
    for a, n in _coprime_pairs(2, n_hi):
        for x, y in interior_points(Parallelogram(a, n)):
            # p = t1*(1,0) + t2*(a,n): t2 = y/n, t1 = (x*n - a*y)/n
            if not (0 < y < n and 0 < x * n - a * y < n):
                raise CheckFailure(f"P({a},{n}): point ({x},{y}) not strictly inside")
    return f"interior points strictly inside (exact rational t), n <= {n_hi}"


def _random_primitive(rng: random.Random) -> LatticePoint:
    while True:
        x = rng.randint(-50, 50)
        y = rng.randint(-50, 50)
        if gcd(x, y) == 1:
            return LatticePoint(x, y)


def random_primitive_bases(count: int, rng: random.Random,
                           det_max: int = 500) -> list[tuple[LatticePoint, LatticePoint]]:
    out = []
    while len(out) < count:
        u = _random_primitive(rng)
        v = _random_primitive(rng)
        d = abs(u.x * v.y - u.y * v.x)
        if 2 <= d <= det_max:
            out.append((u, v))
    return out


def check_reduction_sends_basis(quick: bool) -> str:
    rng = random.Random(_SEED)
    count = 150 if quick else 1000
    for u, v in random_primitive_bases(count, rng):
        res = reduce_to_canonical(u, v)
        first, second = (v, u) if res.swapped else (u, v)
        if res.map.apply(first) != (1, 0):
            raise CheckFailure(f"map({first}) != (1,0) for basis {u}, {v}")
        if res.map.apply(second) != (res.canonical.a, res.canonical.n):
            raise CheckFailure(f"map({second}) != (a,n) for basis {u}, {v}")
    return f"{count} random primitive bases land on ((1,0),(a,n))"


def check_reduction_preserves_count(quick: bool) -> str:
    rng = random.Random(_SEED + 1)
    count = 150 if quick else 1000
    for u, v in random_primitive_bases(count, rng):
        res = reduce_to_canonical(u, v)
        _, visible = brute_count_interior(u, v)
        fast = count_direct(res.canonical).v
        if visible != fast:
            raise CheckFailure(
                f"basis {u}, {v}: brute {visible} != canonical {fast}")
    return f"visible counts preserved across {count} reductions"


def check_visibility_preserved(quick: bool) -> str:
    rng = random.Random(_SEED + 2)
    trials = 200 if quick else 1500
    for _ in range(trials):
        m = UnimodularMap(1, rng.randint(-9, 9), 0, 1)
        m = m.compose(UnimodularMap(1, 0, rng.randint(-9, 9), 1))
        if rng.random() < 0.5:
            m = m.compose(UnimodularMap(0, 1, 1, 0))
        p = LatticePoint(rng.randint(-400, 400), rng.randint(-400, 400))
        if is_visible(p) != is_visible(m.apply(p)):
            raise CheckFailure(f"visibility flipped: {p} under {m}")
    return f"visibility invariant under {trials} random unimodular maps"


def check_extreme_visibility(quick: bool) -> str:
    n_hi = 100 if quick else 300
    for n in range(2, n_hi + 1):
        pts = interior_points(Parallelogram(1, n))
        if not all(is_visible(p) for p in pts):
            raise CheckFailure(f"P(1,{n}) has an invisible interior point")
        if n >= 3:
            vis = [p for p in interior_points(Parallelogram(n - 1, n))
                   if is_visible(p)]
            if len(vis) != 1:
                raise CheckFailure(f"P({n - 1},{n}) has {len(vis)} visible points")
    return f"slope 1 all visible, slope n-1 exactly one, n <= {n_hi}"


def check_middle_slopes(quick: bool) -> str:
    n_hi = 100 if quick else 300
    for a, n in _coprime_pairs(4, n_hi):
        if a in (1, n - 1):
            continue
        v = count_direct(Parallelogram(a, n)).v
        if not 2 <= v <= n - 2:
            raise CheckFailure(
                f"P({a},{n}): V = {v}, need >= 2 visible and >= 1 invisible")
    return f"middle slopes have >= 2 visible, >= 1 invisible, n <= {n_hi}"


def check_cleanness(quick: bool) -> str:
    n_hi = 80 if quick else 200
    for a, n in _coprime_pairs(2, n_hi):
        if not verify_clean(Parallelogram(a, n)):
            raise CheckFailure(f"P({a},{n}) has a boundary lattice point")
    return f"edges carry no lattice points, n <= {n_hi}"


# === visible_count checks ===

def check_oracle_equivalence(quick: bool) -> str:
    n_hi = 100 if quick else 300
    pairs = 0
    for a, n in _coprime_pairs(2, n_hi):
        par = Parallelogram(a, n)
        d = count_direct(par).v
        f = count_formula(par).v
        if d != f:
            raise CheckFailure(f"P({a},{n}): direct {d} != formula {f}")
        pairs += 1
    rng = random.Random(_SEED + 3)
    extra, n_max = (30, 2000) if quick else (500, 10**5)
    for a, n in _random_pairs(extra, n_max, rng):
        par = Parallelogram(a, n)
        d = count_direct(par).v
        f = count_formula(par).v
        if d != f:
            raise CheckFailure(f"P({a},{n}): direct {d} != formula {f}")
    return (f"direct = formula on {pairs} exhaustive pairs (n <= {n_hi}) "
            f"+ {extra} random pairs (n <= {n_max})")


def check_ratio_identity(quick: bool) -> str:
    n_hi = 100 if quick else 300
    pairs = 0
    for a, n in _coprime_pairs(2, n_hi):
        par = Parallelogram(a, n)
        ratio, _ = count_mobius_ratio(par)
        if ratio * n != count_direct(par).v:
            raise CheckFailure(f"P({a},{n}): ratio identity broke")
        pairs += 1
    rng = random.Random(_SEED + 4)
    extra, n_max = (10, 2000) if quick else (120, 10**5)
    for a, n in _random_pairs(extra, n_max, rng):
        par = Parallelogram(a, n)
        ratio, _ = count_mobius_ratio(par)
        if ratio * n != count_direct(par).v:
            raise CheckFailure(f"P({a},{n}): ratio identity broke")
    return (f"ratio * n = direct count on {pairs} exhaustive "
            f"+ {extra} random pairs")


def check_column_identity(quick: bool) -> str:
    n_hi = 100 if quick else 300
    for a, n in _coprime_pairs(2, n_hi):
        par = Parallelogram(a, n)
        cols = [count_column(s, par) for s in range(1, a + 1)]
        if sum(cols) != count_direct(par).v + 1:
            raise CheckFailure(f"P({a},{n}): column sum != V + 1")
    return f"column sums = V + 1, n <= {n_hi}"


def check_inverse_symmetry(quick: bool) -> str:
    n_hi = 120 if quick else 500
    for a, n in _coprime_pairs(2, n_hi):
        if a > mod_inverse(a, n):
            continue  # each pair once
        par = Parallelogram(a, n)
        partner = inverse_partner(par)
        if count_direct(par).v != count_direct(partner).v:
            raise CheckFailure(
                f"V({a},{n}) != V({partner.a},{n}) for inverse slopes")
    return f"inverse slopes share counts, n <= {n_hi}"


def check_closed_forms(quick: bool) -> str:
    n_hi = 301 if quick else 1001
    hits = 0
    for n in range(3, n_hi + 1, 2):
        for a in range(1, n):
            if gcd(a, n) != 1:
                continue
            special = closed_form_special(Parallelogram(a, n))
            if special is None:
                continue
            hits += 1
            v = count_direct(Parallelogram(a, n)).v
            if special != v:
                raise CheckFailure(f"closed form V({a},{n}) = {special}, scan {v}")
    return f"{hits} closed-form values match scans, odd n <= {n_hi}"


def check_extreme_characterization(quick: bool) -> str:
    n_hi = 100 if quick else 300
    for a, n in _coprime_pairs(2, n_hi):
        v = count_direct(Parallelogram(a, n)).v
        if (v == 1) != (a == n - 1) or (v == n - 1) != (a == 1):
            raise CheckFailure(f"extreme value misclassified at ({a},{n}): V={v}")
    return f"V = 1 iff a = n-1 and V = n-1 iff a = 1, n <= {n_hi}"


def check_gcd_identities(quick: bool) -> str:
    n_hi = 60 if quick else 200
    for a, n in _coprime_pairs(2, n_hi):
        par = Parallelogram(a, n)
        for k in range(1, n):
            if not gcd_identity_check(par, k):
                raise CheckFailure(f"gcd identity failed at (a={a}, n={n}, k={k})")
    return f"gcd identity chain holds for all (a, n, k), n <= {n_hi}"


def check_error_term_bound(quick: bool) -> str:
    n_hi = 100 if quick else 300
    for a, n in _coprime_pairs(2, n_hi):
        _, report = count_mobius_ratio(Parallelogram(a, n))
        if abs(report.double_sum) > report.bound:
            raise CheckFailure(
                f"P({a},{n}): |double sum| {abs(report.double_sum)} > {report.bound}")
        if report.bound != double_sum_bound(a):
            raise CheckFailure(f"bound mismatch at a={a}")
    return f"|double sum| <= divisor bound, n <= {n_hi}"


def check_parity_bound(quick: bool) -> str:
    n_hi = 120 if quick else 500
    applied = 0
    for a, n in _coprime_pairs(2, n_hi):
        par = Parallelogram(a, n)
        bound = parity_upper_bound(par)
        if bound is None:
            continue
        applied += 1
        if count_direct(par).v > bound:
            raise CheckFailure(f"P({a},{n}): count exceeds parity bound {bound}")
    return f"parity bound dominates on {applied} applicable pairs, n <= {n_hi}"


# === experiments checks ===

def check_profile_shape(quick: bool) -> str:
    n_hi = 60 if quick else 120
    for n in range(2, n_hi + 1):
        records = profile(n)
        phi = shared_sieves(n).phi
        if len(records) != phi[n]:
            raise CheckFailure(f"profile({n}) has {len(records)} rows, phi = {phi[n]}")
        by_a = {r.a: r.v for r in records}
        for r in records:
            if by_a[mod_inverse(r.a, n)] != r.v:
                raise CheckFailure(f"profile({n}): a = {r.a} breaks inverse pairing")
    return f"profile length = phi(n) with inverse pairing, n <= {n_hi}"


def check_conjecture_band(quick: bool) -> str:
    n_max = 200 if quick else 1000
    report = conjecture_scan(5, n_max)
    if report.violations:
        first = report.violations[0]
        raise CheckFailure(
            f"conjecture violated at n={first.n}, a={first.a}, V={first.v}: "
            "this is a reportable finding, not a code bug")
    if not (report.min_ratio > Fraction(1, 2) and report.max_ratio < Fraction(3, 4)):
        raise CheckFailure("scan extremes escaped the open interval")
    return (f"1/2 < V/n < 3/4 on [5, {n_max}], min {report.min_ratio} at "
            f"{report.min_witness}, max {report.max_ratio} at {report.max_witness}")


def check_phi_mean_trend(quick: bool) -> str:
    big = 3000 if quick else 10**4
    near = abs(float(phi_mean(big)) - VISIBLE_DENSITY)
    far = abs(float(phi_mean(100)) - VISIBLE_DENSITY)
    if near >= 0.01:
        raise CheckFailure(f"|phi_mean({big}) - 6/pi^2| = {near}, want < 0.01")
    if near >= far:
        raise CheckFailure(f"deviation at {big} ({near}) not below 100 ({far})")
    return f"phi_mean({big}) within {near:.2e} of 6/pi^2, below the a=100 deviation"


def check_full_cycle_discrepancy(quick: bool) -> str:
    cases = [(5, 7), (7, 10), (62, 101)] if quick else \
            [(5, 7), (7, 10), (62, 101), (233, 377), (4181, 6765)]
    for a, n in cases:
        got = discrepancy(Parallelogram(a, n), a)
        if got != float(Fraction(1, a)):
            raise CheckFailure(f"full-cycle discrepancy at ({a},{n}): {got} != 1/{a}")
    return f"full cycle q = a gives exactly 1/a on {len(cases)} cases"


def check_half_rho_closed_form(quick: bool) -> str:
    n_hi = 101 if quick else 301
    records = rho_sequence(RationalRho(Fraction(1, 2)), range(3, n_hi + 1, 2))
    for r in records:
        if r.skipped:
            raise CheckFailure(f"rho 1/2 skipped odd n = {r.n}")
        want = closed_form_special(Parallelogram(r.a, r.n))
        if want is None or r.v != want:
            raise CheckFailure(f"rho 1/2 at n = {r.n}: V = {r.v}, closed form {want}")
    return f"rho = 1/2 on odd n <= {n_hi} reproduces the midpoint closed forms"


# === output format checks ===

def check_csv_byte_identity(quick: bool) -> str:
    from .cli import render_csv

    n = 60 if quick else 120
    def rows(workers: int):
        recs = profile(n, workers=workers)
        return render_csv(["n", "a", "V"], [[r.n, r.a, r.v] for r in recs])

    single, double = rows(1), rows(2)
    if single != double or single != rows(1):
        raise CheckFailure("profile CSV bytes differ across runs or worker counts")
    return f"profile({n}) CSV byte-identical across runs and worker counts"


def check_envelope_shape(quick: bool) -> str:
    import json

    from .cli import main as cli_main
    import contextlib, io

    sink = io.StringIO()
    with contextlib.redirect_stdout(sink):
        code = cli_main(["count", "--a", "2", "--n", "5", "--format", "json",
                         "--verify"])
    if code != 0:
        raise CheckFailure(f"count exited {code}")
    doc = json.loads(sink.getvalue())
    for key in ("schema_version", "command", "parameters", "records", "checks"):
        if key not in doc:
            raise CheckFailure(f"envelope missing {key}")
    if doc["schema_version"] != "1":
        raise CheckFailure(f"schema_version {doc['schema_version']!r} != '1'")
    for rec in doc["records"]:
        ratio = rec.get("ratio")
        if ratio and (gcd(ratio["num"], ratio["den"]) != 1 or ratio["den"] <= 0):
            raise CheckFailure(f"unreduced rational in envelope: {ratio}")
    return "count envelope carries schema_version 1 and reduced rationals"


CHECKS: list[tuple[str, Callable[[bool], str]]] = [
    ("sieve totient identity", check_sieve_totient_identity),
    ("legendre totient equals euler phi", check_legendre_equals_phi),
    ("legendre totient routes agree", check_legendre_routes),
    ("fractional part reflection", check_frac_reflection),
    ("interior point count", check_interior_count),
    ("interior points strictly inside", check_interior_strict),
    ("reduction sends basis to canonical", check_reduction_sends_basis),
    ("reduction preserves visible count", check_reduction_preserves_count),
    ("visibility preserved by unimodular maps", check_visibility_preserved),
    ("extreme slope visibility", check_extreme_visibility),
    ("middle slopes mix visibility", check_middle_slopes),
    ("clean edges", check_cleanness),
    ("oracle equivalence", check_oracle_equivalence),
    ("mobius ratio identity", check_ratio_identity),
    ("column sums reconcile", check_column_identity),
    ("inverse slope symmetry", check_inverse_symmetry),
    ("closed forms match scans", check_closed_forms),
    ("extreme value characterization", check_extreme_characterization),
    ("gcd identity chain", check_gcd_identities),
    ("error term within divisor bound", check_error_term_bound),
    ("parity bound dominates", check_parity_bound),
    ("profile shape and pairing", check_profile_shape),
    ("conjecture band", check_conjecture_band),
    ("phi mean trend", check_phi_mean_trend),
    ("full cycle discrepancy", check_full_cycle_discrepancy),
    ("half rho closed forms", check_half_rho_closed_form),
    ("csv byte identity", check_csv_byte_identity),
    ("json envelope shape", check_envelope_shape),
]


def run_selftest(quick: bool = False,
                 log: Callable[[str], None] | None = None) -> list[CheckResult]:
    results = []
    for name, fn in CHECKS:
        try:
            detail = fn(quick)
            results.append(CheckResult(name=name, passed=True, detail=detail))
            if log:
                log(f"ok {name}: {detail}")
        except CheckFailure as e:
            results.append(CheckResult(name=name, passed=False, detail=str(e)))
            if log:
                log(f"FAIL {name}: {e}")
        except Exception as e:  # a crashing check is a failing check
            detail = f"unexpected {type(e).__name__}: {e}"
            results.append(CheckResult(name=name, passed=False, detail=detail))
            if log:
                log(f"FAIL {name}: {detail}")
    return results
