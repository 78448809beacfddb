import random

import pytest

from parallelo.exact_math import gcd, mod_inverse
from parallelo.lattice import (
    DegenerateAreaError,
    LatticePoint,
    NotPrimitiveError,
    Parallelogram,
    ReductionResult,
    UnimodularMap,
    brute_count_interior,
    interior_points,
    is_visible,
    reduce_to_canonical,
    verify_clean,
)
from parallelo.visible_count import count_direct


def test_is_visible():
    assert is_visible((1, 0))
    assert is_visible((0, 1))
    assert is_visible(LatticePoint(3, 5))
    assert not is_visible((2, 4))
    assert not is_visible((0, 0))
    assert is_visible((-3, 5))
    assert not is_visible((-2, -4))


def test_unimodular_map_validation():
    UnimodularMap(1, 0, 0, 1)
    UnimodularMap(0, 1, 1, 0)  # det -1 allowed
    with pytest.raises(ValueError, match="determinant"):
        UnimodularMap(2, 0, 0, 1)
    with pytest.raises(ValueError, match="determinant"):
        UnimodularMap(1, 1, 1, 1)


def test_unimodular_compose_inverse():
    rng = random.Random(3)
    for _ in range(50):
        # random product of shears and swaps is unimodular
        m = UnimodularMap.identity()
        for _ in range(6):
            k = rng.randint(-4, 4)
            m = m.compose(UnimodularMap(1, k, 0, 1))
            if rng.random() < 0.4:
                m = m.compose(UnimodularMap(0, 1, 1, 0))
        inv = m.inverse()
        assert m.compose(inv) == UnimodularMap.identity()
        assert inv.compose(m) == UnimodularMap.identity()
        p = LatticePoint(rng.randint(-9, 9), rng.randint(-9, 9))
        assert inv.apply(m.apply(p)) == p


def test_parallelogram_validation_messages():
    with pytest.raises(ValueError, match="n must be at least 2"):
        Parallelogram(1, 1)
    with pytest.raises(ValueError, match="a must satisfy 1 <= a < n"):
        Parallelogram(0, 5)
    with pytest.raises(ValueError, match="a must satisfy 1 <= a < n"):
        Parallelogram(5, 5)
    with pytest.raises(ValueError, match=r"gcd\(4, 8\) = 4"):
        Parallelogram(4, 8)


def test_parallelogram_basics():
    par = Parallelogram(3, 7)
    assert par.area == 7
    assert par.interior_point(1) == LatticePoint(1, 1)
    assert par.interior_point(6) == LatticePoint(3, 6)
    with pytest.raises(ValueError):
        par.interior_point(0)
    with pytest.raises(ValueError):
        par.interior_point(7)


def test_interior_points_small_cases():
    assert interior_points(Parallelogram(2, 3)) == [
        LatticePoint(1, 1), LatticePoint(2, 2)]
    assert interior_points(Parallelogram(1, 4)) == [
        LatticePoint(1, 1), LatticePoint(1, 2), LatticePoint(1, 3)]
    # a = n - 1 puts every interior point on the diagonal x = y
    assert interior_points(Parallelogram(4, 5)) == [
        LatticePoint(k, k) for k in range(1, 5)]


def test_verify_clean():
    for a, n in [(1, 2), (2, 3), (3, 7), (9, 10), (7, 10)]:
        assert verify_clean(Parallelogram(a, n))


def test_reduce_examples():
    # (1,2),(3,1): det = 1*1 - 2*3 = -5, swap then reduce to (a, n) = (2, 5)
    res = reduce_to_canonical(LatticePoint(1, 2), LatticePoint(3, 1))
    assert isinstance(res, ReductionResult)
    assert res.canonical == Parallelogram(2, 5)
    assert res.swapped
    # already canonical basis is fixed
    res2 = reduce_to_canonical(LatticePoint(1, 0), LatticePoint(7, 10))
    assert res2.canonical == Parallelogram(7, 10)
    assert not res2.swapped
    assert res2.map == UnimodularMap.identity()


def test_reduce_errors():
    with pytest.raises(NotPrimitiveError):
        reduce_to_canonical(LatticePoint(2, 4), LatticePoint(1, 1))
    with pytest.raises(DegenerateAreaError):
        reduce_to_canonical(LatticePoint(1, 0), LatticePoint(2, 1))
    with pytest.raises(DegenerateAreaError):
        reduce_to_canonical(LatticePoint(2, 3), LatticePoint(-2, -3))
    # primitivity is checked before area
    with pytest.raises(NotPrimitiveError):
        reduce_to_canonical(LatticePoint(2, 3), LatticePoint(4, 6))


def _random_primitive_basis(rng):
    while True:
        ux, uy = rng.randint(-40, 40), rng.randint(-40, 40)
        vx, vy = rng.randint(-40, 40), rng.randint(-40, 40)
        if gcd(ux, uy) != 1 or gcd(vx, vy) != 1:
            continue
        det = ux * vy - uy * vx
        if abs(det) >= 2:
            return LatticePoint(ux, uy), LatticePoint(vx, vy)


def test_reduce_random_bases():
    rng = random.Random(41)
    for _ in range(200):
        u, v = _random_primitive_basis(rng)
        res = reduce_to_canonical(u, v)
        m = res.map
        assert m.det == 1
        par = res.canonical
        first, second = (v, u) if res.swapped else (u, v)
        assert m.apply(first) == LatticePoint(1, 0)
        assert m.apply(second) == LatticePoint(par.a, par.n)
        assert par.n == abs(u.x * v.y - u.y * v.x)


def test_reduce_round_trip_under_remapping():
    # remapping a canonical basis by any unimodular map and re-reducing
    # recovers either a (orientation kept) or its inverse mod n (flipped)
    rng = random.Random(17)
    for _ in range(100):
        n = rng.randint(3, 60)
        choices = [a for a in range(1, n) if gcd(a, n) == 1]
        a = rng.choice(choices)
        m = UnimodularMap.identity()
        for _ in range(5):
            k = rng.randint(-3, 3)
            m = m.compose(UnimodularMap(1, k, 0, 1))
            if rng.random() < 0.5:
                m = m.compose(UnimodularMap(0, 1, 1, 0))
        u = m.apply(LatticePoint(1, 0))
        v = m.apply(LatticePoint(a, n))
        res = reduce_to_canonical(u, v)
        assert res.canonical.n == n
        assert res.canonical.a in {a, mod_inverse(a, n)}


def test_brute_count_matches_direct():
    rng = random.Random(99)
    for _ in range(40):
        u, v = _random_primitive_basis(rng)
        res = reduce_to_canonical(u, v)
        interior, visible = brute_count_interior(u, v)
        assert interior == res.canonical.n - 1
        assert visible == count_direct(res.canonical).v


def test_brute_count_orientation():
    # clockwise and counterclockwise span the same region
    u, v = LatticePoint(1, 0), LatticePoint(3, 7)
    assert brute_count_interior(u, v) == brute_count_interior(v, u)
