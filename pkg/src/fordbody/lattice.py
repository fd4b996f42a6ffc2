"""Rank-2 cusp lattice: Lagrange reduction, closest-vector queries, windows."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, List, Tuple

from .errors import DegenerateLattice
from .moebius import EPS_GEOM, IsoSphere

NEIGHBOR_RANGE = 3  # intersecting translates live in this offset window


@dataclass(frozen=True)
class Rectangle:
    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if self.x1 < self.x0 or self.y1 < self.y0:
            raise ValueError("rectangle corners out of order")

    def distance_to(self, z: complex) -> float:
        dx = max(self.x0 - z.real, 0.0, z.real - self.x1)
        dy = max(self.y0 - z.imag, 0.0, z.imag - self.y1)
        return math.hypot(dx, dy)

    def corners(self) -> List[complex]:
        return [complex(self.x0, self.y0), complex(self.x1, self.y0),
                complex(self.x1, self.y1), complex(self.x0, self.y1)]


def _inner(x: complex, y: complex) -> float:
    return (x * y.conjugate()).real


def _canonical_dir(v: complex, eps: float) -> Tuple[complex, int]:
    """Pick v or -v: nonnegative imaginary part, then nonnegative real part."""
    if v.imag > eps or (abs(v.imag) <= eps and v.real >= 0.0):
        return v, 1
    return -v, -1


@dataclass(frozen=True)
class CuspLattice:
    """Translation lattice of the rank-2 cusp, with a reduced basis.

    ``basis_change`` expresses the reduced basis in the constructor's input
    basis; it is unimodular, so both generate the same lattice.
    """

    a: complex
    b: complex
    reduced: bool = False
    basis_change: Tuple[Tuple[int, int], Tuple[int, int]] = ((1, 0), (0, 1))

    def vec(self, p: int, q: int) -> complex:
        return p * self.a + q * self.b

    def coords(self, z: complex) -> Tuple[float, float]:
        """Real coordinates of z in the basis (a, b)."""
        det = self.a.real * self.b.imag - self.a.imag * self.b.real
        x = (z.real * self.b.imag - z.imag * self.b.real) / det
        y = (self.a.real * z.imag - self.a.imag * z.real) / det
        return x, y

    def line_gaps(self) -> Tuple[float, float]:
        """Distances between adjacent lattice lines in each basis direction."""
        area = abs(self.a.real * self.b.imag - self.a.imag * self.b.real)
        return area / abs(self.b), area / abs(self.a)


def reduce(a: complex, b: complex, eps: float = EPS_GEOM) -> CuspLattice:
    """Lagrange-reduce the basis (a, b): shortest vector first.

    Classical two-dimensional reduction: order by length, subtract the
    nearest-integer multiple, repeat.  Signs of the output vectors are fixed
    by preferring nonnegative imaginary part, then nonnegative real part.
    """
    if abs(_cross(a, b)) <= eps * max(abs(a) * abs(b), 1.0):
        raise DegenerateLattice("cusp translations are linearly dependent")
    u, v = complex(a), complex(b)
    row_u, row_v = [1, 0], [0, 1]
    if abs(u) > abs(v):
        u, v = v, u
        row_u, row_v = row_v, row_u
    for _ in range(10000):
        m = round(_inner(v, u) / _inner(u, u))
        if m:
            v = v - m * u
            row_v = [row_v[0] - m * row_u[0], row_v[1] - m * row_u[1]]
        if abs(v) >= abs(u):
            break
        u, v = v, u
        row_u, row_v = row_v, row_u
    else:  # pragma: no cover - swaps strictly shrink u
        raise DegenerateLattice("reduction did not terminate")
    u, su = _canonical_dir(u, eps)
    v, sv = _canonical_dir(v, eps)
    row_u = [su * row_u[0], su * row_u[1]]
    row_v = [sv * row_v[0], sv * row_v[1]]
    return CuspLattice(u, v, reduced=True,
                       basis_change=(tuple(row_u), tuple(row_v)))


def _cross(a: complex, b: complex) -> float:
    return a.real * b.imag - a.imag * b.real


def nearest_translate(lat: CuspLattice, target: complex,
                      base: complex) -> Tuple[int, int]:
    """Integers (p, q) minimizing |target - (base + p*a + q*b)|.

    Rounds coordinates in the reduced basis, then checks the surrounding
    integer neighborhood; ties break lexicographically on (p, q).
    """
    x, y = lat.coords(target - base)
    p0, q0 = round(x), round(y)
    best = None
    for p in range(p0 - 2, p0 + 3):
        for q in range(q0 - 2, q0 + 3):
            d = abs(target - base - lat.vec(p, q))
            if best is None or d < best[0] - 1e-12 * (1.0 + best[0]):
                best = (d, p, q)
            elif abs(d - best[0]) <= 1e-12 * (1.0 + best[0]) and (p, q) < (best[1], best[2]):
                best = (best[0], p, q)
    return best[1], best[2]


def neighbor_offsets() -> List[Tuple[int, int]]:
    """The fixed 7x7 offset window, row-major from (-3, -3)."""
    r = range(-NEIGHBOR_RANGE, NEIGHBOR_RANGE + 1)
    return [(e, d) for e in r for d in r]


def min_translation_length(lat: CuspLattice) -> float:
    if not lat.reduced:
        lat = reduce(lat.a, lat.b)
    return abs(lat.a)


def offsets_reaching(lat: CuspLattice, base: complex, target: complex,
                     reach: float) -> Iterator[Tuple[int, int]]:
    """All (p, q) with |base + p*a + q*b - target| <= reach (complete)."""
    gap_a, gap_b = lat.line_gaps()
    x, y = lat.coords(target - base)
    mp = int(math.floor(reach / gap_a)) + 1
    mq = int(math.floor(reach / gap_b)) + 1
    for p in range(round(x) - mp, round(x) + mp + 1):
        for q in range(round(y) - mq, round(y) + mq + 1):
            if abs(base + lat.vec(p, q) - target) <= reach:
                yield (p, q)


def translates_in_window(lat: CuspLattice, s: IsoSphere,
                         window: Rectangle) -> List[IsoSphere]:
    """All lattice translates of s whose boundary disk meets the window."""
    cx = complex((window.x0 + window.x1) / 2.0, (window.y0 + window.y1) / 2.0)
    half_diag = math.hypot(window.x1 - window.x0, window.y1 - window.y0) / 2.0
    out = []
    for p, q in offsets_reaching(lat, s.center, cx, half_diag + s.radius):
        c = s.center + lat.vec(p, q)
        if window.distance_to(c) <= s.radius:
            out.append(s.translated(lat.vec(p, q), p, q))
    out.sort(key=lambda t: t.lattice_offset)
    return out
