"""Lattice geometry: primitive vectors, unimodular maps, clean parallelograms.

A parallelogram spanned by primitive integer vectors u, v with |det(u, v)|
at least 2 is "clean" when no lattice point sits on its boundary except the
four corners.  Every such parallelogram is equivalent, under a unimodular
map of the lattice, to a canonical one spanned by (1, 0) and (a, n) with
n = |det|, 1 <= a < n, gcd(a, n) = 1.  The map is a lattice bijection that
preserves gcds of coordinates up to the right notion (primitivity), so
visible-point counts transfer verbatim; that is why all counting code works
on the canonical form only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .exact_math import ceil_div, egcd, gcd


class NotPrimitiveError(ValueError):
    """A spanning vector has coordinate gcd > 1."""


class DegenerateAreaError(ValueError):
    """|det| <= 1: parallelogram has no interior lattice points to count."""


class LatticePoint(NamedTuple):
    x: int
    y: int


def is_visible(p: LatticePoint | tuple[int, int]) -> bool:
    """True when gcd(x, y) = 1, i.e. segment from origin hits no closer point.

    The origin itself (gcd 0) is not visible.
    """
    x, y = p
    return gcd(x, y) == 1


@dataclass(frozen=True)
class UnimodularMap:
    """Integer 2x2 matrix with determinant +-1, acting on column vectors."""

    m11: int
    m12: int
    m21: int
    m22: int

    def __post_init__(self):
        if self.det not in (1, -1):
            raise ValueError(
                f"matrix determinant is {self.det}, must be +1 or -1"
            )

    @property
    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    def apply(self, p: LatticePoint | tuple[int, int]) -> LatticePoint:
        x, y = p
        return LatticePoint(self.m11 * x + self.m12 * y,
                            self.m21 * x + self.m22 * y)

    def compose(self, other: "UnimodularMap") -> "UnimodularMap":
        """self after other (matrix product self @ other)."""
        return UnimodularMap(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def inverse(self) -> "UnimodularMap":
        d = self.det  # +-1, so the adjugate over d stays integral
        return UnimodularMap(self.m22 * d, -self.m12 * d,
                             -self.m21 * d, self.m11 * d)

    @staticmethod
    def identity() -> "UnimodularMap":
        return UnimodularMap(1, 0, 0, 1)


apply_map = UnimodularMap.apply


@dataclass(frozen=True)
class Parallelogram:
    """Canonical clean parallelogram: spanned by (1, 0) and (a, n).

    Constraints: n >= 2, 1 <= a < n, gcd(a, n) = 1.  Area is n and the
    interior holds exactly n - 1 lattice points, one per height y = 1..n-1.
    """

    a: int
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        if not 1 <= self.a < self.n:
            raise ValueError(
                f"a must satisfy 1 <= a < n, got a={self.a}, n={self.n}"
            )
        if gcd(self.a, self.n) != 1:
            raise ValueError(
                f"gcd(a, n) must be 1, got gcd({self.a}, {self.n}) = "
                f"{gcd(self.a, self.n)}"
            )

    @property
    def area(self) -> int:
        return self.n

    def interior_point(self, k: int) -> LatticePoint:
        """The unique interior lattice point at height k, 1 <= k <= n-1."""
        if not 1 <= k < self.n:
            raise ValueError(f"height k must be in [1, {self.n - 1}], got {k}")
        return LatticePoint(ceil_div(k * self.a, self.n), k)


@dataclass(frozen=True)
class ReductionResult:
    canonical: Parallelogram
    map: UnimodularMap
    swapped: bool  # True when (u, v) had negative determinant and was reordered


def _require_primitive(p: LatticePoint, name: str) -> None:
    g = gcd(p.x, p.y)
    if g != 1:
        raise NotPrimitiveError(
            f"vector {name} = ({p.x}, {p.y}) is not primitive: "
            f"gcd of coordinates is {g}"
        )


def reduce_to_canonical(u: LatticePoint | tuple[int, int],
                        v: LatticePoint | tuple[int, int]) -> ReductionResult:
    """Unimodular map sending primitive basis (u, v) to ((1, 0), (a, n)).

    Steps: orient so det > 0 (recording the swap), send u to (1, 0) with the
    extended-gcd matrix, then shear v's first coordinate into [0, n).  The
    composite has determinant +1.  a = 0 cannot occur: it would force v to
    be a multiple of (0, 1) scaled by n >= 2, contradicting primitivity.
    """
    u = LatticePoint(*u)
    v = LatticePoint(*v)
    _require_primitive(u, "u")
    _require_primitive(v, "v")
    det = u.x * v.y - u.y * v.x
    if abs(det) < 2:
        raise DegenerateAreaError(
            f"|det(u, v)| = {abs(det)}, need at least 2 for a nonempty interior"
        )
    swapped = det < 0
    if swapped:
        u, v = v, u
        det = -det
    # egcd row sends u to (1, 0); second row completes a det +1 matrix.
    _, m1, m2 = egcd(u.x, u.y)
    base = UnimodularMap(m1, m2, -u.y, u.x)
    c = m1 * v.x + m2 * v.y  # image of v is (c, det)
    a = c % det
    k = (a - c) // det
    shear = UnimodularMap(1, k, 0, 1)
    full = shear.compose(base)
    return ReductionResult(
        canonical=Parallelogram(a=a, n=det),
        map=full,
        swapped=swapped,
    )


def interior_points(par: Parallelogram) -> list[LatticePoint]:
    """All n - 1 interior lattice points, ascending in height."""
    return [par.interior_point(k) for k in range(1, par.n)]


def iter_interior(par: Parallelogram) -> Iterator[LatticePoint]:
    for k in range(1, par.n):
        yield par.interior_point(k)


def verify_clean(par: Parallelogram) -> bool:
    """Brute-force check that no lattice point sits on an open edge.

    Deliberately avoids the gcd shortcut (primitivity of the spanning
    vectors) so it can serve as an independent witness in tests.
    """
    a, n = par.a, par.n
    corners = [(0, 0), (1, 0), (a, n), (a + 1, n)]
    edges = [
        ((0, 0), (1, 0)),
        ((a, n), (a + 1, n)),
        ((0, 0), (a, n)),
        ((1, 0), (a + 1, n)),
    ]
    for (px, py), (qx, qy) in edges:
        dx, dy = qx - px, qy - py
        if dy == 0:
            for x in range(min(px, qx) + 1, max(px, qx)):
                if (x, py) not in corners:
                    return False
            continue
        lo, hi = sorted((py, qy))
        for y in range(lo + 1, hi):
            num = (y - py) * dx
            if num % dy == 0:
                x = px + num // dy
                if (x, y) not in corners:
                    return False
    return True


_COORD_LIMIT = 10**9  # keeps int64 cross products exact in the scan below
_CELL_LIMIT = 10**8


def brute_count_interior(u: LatticePoint | tuple[int, int],
                         v: LatticePoint | tuple[int, int]) -> tuple[int, int]:
    """(interior points, visible interior points) for the parallelogram on u, v.

    Scans the integer bounding box and tests strict interiority with exact
    cross products: p = s*u + t*v has s = cross(p, v)/det, t = cross(u, p)/det,
    and 0 < s, t < 1 is equivalent to the cross products lying strictly
    between 0 and det.  Independent of every canonical-form shortcut, so it
    works as the oracle for reduction correctness.
    """
    u = LatticePoint(*u)
    v = LatticePoint(*v)
    det = u.x * v.y - u.y * v.x
    if det == 0:
        raise DegenerateAreaError("det(u, v) = 0, parallelogram is degenerate")
    for p in (u, v):
        if max(abs(p.x), abs(p.y)) > _COORD_LIMIT:
            raise ValueError("coordinates too large for the exact int64 scan")
    xs = [0, u.x, v.x, u.x + v.x]
    ys = [0, u.y, v.y, u.y + v.y]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if (x_hi - x_lo + 1) * (y_hi - y_lo + 1) > _CELL_LIMIT:
        raise ValueError("bounding box too large for a brute-force scan")
    gx, gy = np.meshgrid(
        np.arange(x_lo, x_hi + 1, dtype=np.int64),
        np.arange(y_lo, y_hi + 1, dtype=np.int64),
        indexing="ij",
    )
    s_num = gx * v.y - gy * v.x
    t_num = u.x * gy - u.y * gx
    if det > 0:
        inside = (s_num > 0) & (s_num < det) & (t_num > 0) & (t_num < det)
    else:
        inside = (s_num < 0) & (s_num > det) & (t_num < 0) & (t_num > det)
    interior = int(np.count_nonzero(inside))
    vis = inside & (np.gcd(np.abs(gx), np.abs(gy)) == 1)
    return interior, int(np.count_nonzero(vis))
