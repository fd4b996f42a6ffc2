"""Hemisphere visibility over the complex plane.

Everything reduces to one fact: for hemispheres g, k over C, the point of g
above z lies inside the closed half-ball of k iff pow_k(z) <= pow_g(z), where
pow is the power of z with respect to the boundary circle.  That condition is
linear in z, so the covered region is a half-plane bounded by the radical
line, and the uncovered part of g is

    cell(g) = D(g)  intersect  {z : pow_g(z) < pow_k(z) for all k},

a convex polygon (intersection of half-planes) clipped to a disk.  Visibility
is then an exact area computation instead of sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

from . import tolerances
from .errors import NoIntersection
from .lattice import CuspLattice, min_translation_length, offsets_reaching
from .moebius import GroupWord, IsoSphere

EPS_TANGENT = 1e-7   # |d - (r1+r2)| band reported as tangency
EPS_EDGE = 1e-6      # minimal arc length that counts as a visible edge
# sqrt of the residual-area visibility threshold; 1e-12 of area sits three
# orders above the double-precision noise of the clipping while keeping the
# observed emergence time of a face within ~1e-8 of the true tangency time
EPS_AREA = 1e-6

_AREA_THRESHOLD = EPS_AREA * EPS_AREA
_MARGINAL_LOW = _AREA_THRESHOLD / 10.0


class SphereRelation(Enum):
    DISJOINT = "disjoint"
    EXTERNALLY_TANGENT = "externally_tangent"
    TWO_POINT = "two_point_intersection"
    INTERNALLY_TANGENT = "internally_tangent"
    COVERED = "covered"          # s1 strictly contains s2
    COVERED_BY = "covered_by"    # s1 strictly inside s2
    EQUAL = "equal"


def sphere_relation(s1: IsoSphere, s2: IsoSphere,
                    eps_tangent: float = EPS_TANGENT,
                    eps: Optional[float] = None) -> SphereRelation:
    """Classify boundary disks by center distance; tangency bands win ties."""
    eps = tolerances.eps_geom() if eps is None else eps
    d = abs(s1.center - s2.center)
    rsum = s1.radius + s2.radius
    rdiff = abs(s1.radius - s2.radius)
    if d <= eps and rdiff <= eps:
        return SphereRelation.EQUAL
    if abs(d - rsum) <= eps_tangent:
        return SphereRelation.EXTERNALLY_TANGENT
    if d > rsum:
        return SphereRelation.DISJOINT
    if abs(d - rdiff) <= eps_tangent:
        return SphereRelation.INTERNALLY_TANGENT
    if d < rdiff:
        return (SphereRelation.COVERED_BY if s1.radius < s2.radius
                else SphereRelation.COVERED)
    return SphereRelation.TWO_POINT


# ---------------------------------------------------------------------------
# Half-plane machinery
# ---------------------------------------------------------------------------

def cover_halfplane(sg: IsoSphere, sk: IsoSphere):
    """Constraint under which k's closed half-ball covers g's point over z.

    Returns (nx, ny, kappa) for "covered iff x*nx + y*ny <= kappa", or the
    strings "all"/"none" in the concentric degenerate case.
    """
    n = sg.center - sk.center
    if abs(n) <= 1e-15:
        return "all" if sk.radius >= sg.radius else "none"
    kappa = (sk.radius ** 2 - sg.radius ** 2
             - abs(sk.center) ** 2 + abs(sg.center) ** 2) / 2.0
    return (n.real, n.imag, kappa)


def clip_halfplane(poly: List[complex], nx: float, ny: float,
                   kappa: float) -> List[complex]:
    """Keep the part of a convex polygon with x*nx + y*ny >= kappa."""
    if not poly:
        return poly
    out: List[complex] = []
    vals = [p.real * nx + p.imag * ny - kappa for p in poly]
    n = len(poly)
    for i in range(n):
        j = (i + 1) % n
        pi, pj = poly[i], poly[j]
        vi, vj = vals[i], vals[j]
        if vi >= 0.0:
            out.append(pi)
            if vj < 0.0:
                out.append(pi + (pj - pi) * (vi / (vi - vj)))
        elif vj >= 0.0:
            out.append(pi + (pj - pi) * (vi / (vi - vj)))
    return out


def _sector_area(p1: complex, p2: complex, r: float) -> float:
    """Signed circular-sector area at the origin from direction p1 to p2."""
    ang = math.atan2(_cross(p1, p2), _dot(p1, p2))
    return 0.5 * r * r * ang


def _cross(p1: complex, p2: complex) -> float:
    return p1.real * p2.imag - p1.imag * p2.real


def _dot(p1: complex, p2: complex) -> float:
    return p1.real * p2.real + p1.imag * p2.imag


def _edge_disk_area(p1: complex, p2: complex, r: float) -> float:
    """Signed area of triangle(0, p1, p2) intersected with the radius-r disk."""
    r2 = r * r
    in1 = _dot(p1, p1) <= r2
    in2 = _dot(p2, p2) <= r2
    if in1 and in2:
        return 0.5 * _cross(p1, p2)
    # segment/circle intersection parameters
    d = p2 - p1
    a = _dot(d, d)
    if a == 0.0:
        return 0.0
    b = 2.0 * _dot(p1, d)
    c = _dot(p1, p1) - r2
    disc = b * b - 4.0 * a * c
    ts: List[float] = []
    if disc > 0.0:
        sq = math.sqrt(disc)
        for t in ((-b - sq) / (2 * a), (-b + sq) / (2 * a)):
            if 0.0 < t < 1.0:
                ts.append(t)
    pts = [p1] + [p1 + t * d for t in sorted(ts)] + [p2]
    total = 0.0
    for u, v in zip(pts, pts[1:]):
        mid = (u + v) / 2.0
        if _dot(mid, mid) <= r2:
            total += 0.5 * _cross(u, v)
        else:
            total += _sector_area(u, v, r)
    return total


def polygon_disk_area(poly: Sequence[complex], center: complex,
                      radius: float) -> float:
    """Exact area of (convex polygon) intersect (disk)."""
    if len(poly) < 3:
        return 0.0
    shifted = [p - center for p in poly]
    total = 0.0
    n = len(shifted)
    for i in range(n):
        total += _edge_disk_area(shifted[i], shifted[(i + 1) % n], radius)
    return abs(total)


# ---------------------------------------------------------------------------
# Candidate gathering
# ---------------------------------------------------------------------------

def cover_candidates(s: IsoSphere, others: Iterable[IsoSphere],
                     lat: Optional[CuspLattice],
                     eps: Optional[float] = None) -> List[IsoSphere]:
    """Translates of the collection whose disks can reach D(s).

    Spheres equal to s (same center and radius) are skipped: coinciding
    isometric spheres are cusp-translate relabelings of one face and do not
    hide each other.
    """
    eps = tolerances.eps_geom() if eps is None else eps
    out: List[IsoSphere] = []
    for o in others:
        reach = o.radius + s.radius
        if lat is None:
            if abs(o.center - s.center) <= reach and not o.same_sphere(s, eps):
                out.append(o)
            continue
        for p, q in offsets_reaching(lat, o.center, s.center, reach):
            t = o.translated(lat.vec(p, q), p, q) if (p or q) else o
            if not t.same_sphere(s, eps):
                out.append(t)
    return out


# ---------------------------------------------------------------------------
# Visibility of a hemisphere
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VisibilityResult:
    visible: bool
    area: float
    marginal: bool


def visibility_area(s: IsoSphere, others: Iterable[IsoSphere],
                    lat: Optional[CuspLattice] = None,
                    eps: Optional[float] = None) -> VisibilityResult:
    """Residual uncovered area of hemisphere s against a collection.

    ``others`` may contain s itself; equal spheres are skipped.  With a
    lattice, all relevant cusp translates of each element are included.
    """
    eps = tolerances.eps_geom() if eps is None else eps
    pad = s.radius * 0.01 + eps
    c, r = s.center, s.radius
    poly = [c + complex(-r - pad, -r - pad), c + complex(r + pad, -r - pad),
            c + complex(r + pad, r + pad), c + complex(-r - pad, r + pad)]
    for k in cover_candidates(s, others, lat, eps):
        hp = cover_halfplane(s, k)
        if hp == "all":
            return VisibilityResult(False, 0.0, False)
        if hp == "none":
            continue
        nx, ny, kappa = hp
        # uncovered side: x*n > kappa
        poly = clip_halfplane(poly, nx, ny, kappa)
        if not poly:
            return VisibilityResult(False, 0.0, False)
    area = polygon_disk_area(poly, s.center, s.radius)
    visible = area > _AREA_THRESHOLD
    marginal = _MARGINAL_LOW < area <= _AREA_THRESHOLD
    return VisibilityResult(visible, area, marginal)


def visible_wrt(s: IsoSphere, others: Iterable[IsoSphere],
                lat: Optional[CuspLattice] = None,
                eps: Optional[float] = None) -> bool:
    """True iff an open subset of hemisphere s escapes all closed half-balls."""
    return visibility_area(s, others, lat, eps).visible


def covered_by_single(s: IsoSphere, k: IsoSphere,
                      eps: Optional[float] = None) -> bool:
    """True iff k's closed half-ball alone covers all of hemisphere s."""
    eps = tolerances.eps_geom() if eps is None else eps
    if k.same_sphere(s, eps):
        return False
    hp = cover_halfplane(s, k)
    if hp == "all":
        return True
    if hp == "none":
        return False
    nx, ny, kappa = hp
    norm = math.hypot(nx, ny)
    worst = s.center.real * nx + s.center.imag * ny + s.radius * norm
    return worst <= kappa + eps


def boundary_visible(s: IsoSphere, others: Iterable[IsoSphere],
                     lat: Optional[CuspLattice] = None,
                     eps: Optional[float] = None) -> bool:
    """True iff an arc of the boundary circle of s escapes all open disks."""
    eps = tolerances.eps_geom() if eps is None else eps
    intervals: List[Tuple[float, float]] = []
    for k in cover_candidates(s, others, lat, eps):
        d = abs(k.center - s.center)
        if d + s.radius <= k.radius + eps:
            return False  # whole circle inside D(k)
        if d >= s.radius + k.radius - eps or d >= s.radius + k.radius:
            continue
        cosarg = (d * d + s.radius ** 2 - k.radius ** 2) / (2.0 * d * s.radius)
        if cosarg >= 1.0:
            continue
        psi = math.acos(max(cosarg, -1.0))
        phi = math.atan2((k.center - s.center).imag, (k.center - s.center).real)
        intervals.append((phi - psi, phi + psi))
    if not intervals:
        return True
    return _circle_not_covered(intervals)


def _circle_not_covered(intervals: List[Tuple[float, float]]) -> bool:
    """True iff the union of angular intervals leaves a gap on the circle."""
    two_pi = 2 * math.pi
    segs: List[Tuple[float, float]] = []
    for lo, hi in intervals:
        length = min(hi - lo, two_pi)
        lo = lo % two_pi
        hi = lo + length
        if hi <= two_pi:
            segs.append((lo, hi))
        else:
            segs.append((lo, two_pi))
            segs.append((0.0, hi - two_pi))
    segs.sort()
    covered = 0.0
    cur_lo, cur_hi = None, None
    for lo, hi in segs:
        if cur_lo is None:
            cur_lo, cur_hi = lo, hi
        elif lo <= cur_hi + 1e-12:
            cur_hi = max(cur_hi, hi)
        else:
            covered += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
    if cur_lo is not None:
        covered += cur_hi - cur_lo
    return covered < two_pi - 1e-9


# ---------------------------------------------------------------------------
# Edges
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeArc:
    """Intersection semicircle of two hemispheres with its visible span.

    The chord joins the two boundary-circle intersection points; the visible
    sub-arcs are parameter intervals of the chord (0 at endpoint_a).  Binders
    name the spheres that clipped the span, when any.
    """

    owners: Tuple[IsoSphere, IsoSphere]
    endpoint_a: complex
    endpoint_b: complex
    visible_subarcs: Tuple[Tuple[float, float], ...]
    lo_binder: Optional[IsoSphere] = None
    hi_binder: Optional[IsoSphere] = None

    def point_at(self, t: float) -> Tuple[complex, float]:
        """(z, height) of the arc point over chord parameter t."""
        z = self.endpoint_a + t * (self.endpoint_b - self.endpoint_a)
        h2 = self.owners[0].height_sq(z)
        return z, math.sqrt(max(h2, 0.0))

    @property
    def chord_length(self) -> float:
        return abs(self.endpoint_b - self.endpoint_a)


def circle_intersection_points(s1: IsoSphere, s2: IsoSphere) -> Tuple[complex, complex]:
    d = abs(s2.center - s1.center)
    u = (s2.center - s1.center) / d
    along = (s1.radius ** 2 - s2.radius ** 2 + d * d) / (2.0 * d)
    h2 = s1.radius ** 2 - along ** 2
    h = math.sqrt(max(h2, 0.0))
    base = s1.center + along * u
    perp = u * 1j
    return base + h * perp, base - h * perp


def visible_edge(s1: IsoSphere, s2: IsoSphere,
                 others: Iterable[IsoSphere],
                 lat: Optional[CuspLattice] = None,
                 eps: Optional[float] = None,
                 eps_edge: float = EPS_EDGE) -> EdgeArc:
    """Visible part of the intersection semicircle of two crossing hemispheres.

    On the radical line the powers of the two owners agree, so a third
    hemisphere covers the arc point over z iff pow_k(z) < pow_1(z) - a linear
    condition in the chord parameter.  Every cover therefore removes a prefix
    or suffix, leaving at most one visible sub-interval.
    """
    eps = tolerances.eps_geom() if eps is None else eps
    rel = sphere_relation(s1, s2)
    if rel != SphereRelation.TWO_POINT:
        raise NoIntersection(f"spheres do not cross ({rel.value})")
    za, zb = circle_intersection_points(s1, s2)
    lo, hi = 0.0, 1.0
    lo_binder = hi_binder = None
    mid = (za + zb) / 2.0
    half = abs(zb - za) / 2.0
    candidates: List[IsoSphere] = []
    for o in others:
        reach = o.radius + half
        if lat is None:
            if abs(o.center - mid) <= reach:
                candidates.append(o)
        else:
            for p, q in offsets_reaching(lat, o.center, mid, reach):
                candidates.append(o.translated(lat.vec(p, q), p, q) if (p or q) else o)
    for k in candidates:
        if k.same_sphere(s1, eps) or k.same_sphere(s2, eps):
            continue
        f0 = k.power(za) - s1.power(za)
        f1 = k.power(zb) - s1.power(zb)
        if f0 >= 0.0 and f1 >= 0.0:
            continue
        if f0 < 0.0 and f1 < 0.0:
            lo, hi = 1.0, 0.0
            lo_binder = hi_binder = k
            break
        t = f0 / (f0 - f1)
        if f0 < 0.0:
            if t > lo:
                lo, lo_binder = t, k
        else:
            if t < hi:
                hi, hi_binder = t, k
    if (hi - lo) * abs(zb - za) > eps_edge:
        spans: Tuple[Tuple[float, float], ...] = ((lo, hi),)
    else:
        spans = ()
    return EdgeArc((s1, s2), za, zb, spans, lo_binder, hi_binder)


# ---------------------------------------------------------------------------
# Tangency, angles, discreteness screen
# ---------------------------------------------------------------------------

def tangency_point(s1: IsoSphere, s2: IsoSphere) -> complex:
    """Common boundary point of two tangent circles."""
    d = abs(s2.center - s1.center)
    u = (s2.center - s1.center) / d
    if d > max(s1.radius, s2.radius):  # external
        return s1.center + s1.radius * u
    if s1.radius >= s2.radius:         # s2 inside s1
        return s1.center + s1.radius * u
    return s1.center - s1.radius * u


def visibly_tangent(s1: IsoSphere, s2: IsoSphere,
                    others: Iterable[IsoSphere],
                    eps_tangent: float = EPS_TANGENT,
                    eps: Optional[float] = None) -> bool:
    """Tangent boundary disks whose touching point no other open disk hides."""
    eps = tolerances.eps_geom() if eps is None else eps
    rel = sphere_relation(s1, s2, eps_tangent, eps)
    if rel not in (SphereRelation.EXTERNALLY_TANGENT,
                   SphereRelation.INTERNALLY_TANGENT):
        return False
    p = tangency_point(s1, s2)
    for k in others:
        if k.same_sphere(s1, eps) or k.same_sphere(s2, eps):
            continue
        if k.contains_boundary_point(p, eps):
            return False
    return True


def dihedral_angle(s1: IsoSphere, s2: IsoSphere,
                   eps_tangent: float = EPS_TANGENT) -> float:
    """Angle between the surface normals along the intersection circle.

    cos(theta) = (r1^2 + r2^2 - d^2) / (2 r1 r2); pi at external tangency.
    """
    rel = sphere_relation(s1, s2, eps_tangent)
    if rel not in (SphereRelation.TWO_POINT, SphereRelation.EXTERNALLY_TANGENT):
        raise NoIntersection(f"no crossing circle ({rel.value})")
    d2 = abs(s1.center - s2.center) ** 2
    cos_t = (s1.radius ** 2 + s2.radius ** 2 - d2) / (2.0 * s1.radius * s2.radius)
    return math.acos(min(1.0, max(-1.0, cos_t)))


def interior_angle(s1: IsoSphere, s2: IsoSphere) -> float:
    """Wedge angle of the domain exterior to both half-balls along the edge.

    Supplementary to dihedral_angle; these are the angles whose sum around a
    glued edge must be 2*pi.
    """
    return math.pi - dihedral_angle(s1, s2)


@dataclass(frozen=True)
class ShimizuResult:
    ok: bool
    offender: Optional[GroupWord] = None
    radius: float = 0.0
    bound: float = 0.0

    def __bool__(self):
        return self.ok


def shimizu_check(spheres: Iterable[IsoSphere], lat: CuspLattice,
                  eps: Optional[float] = None) -> ShimizuResult:
    """Discreteness screen: every radius must stay at or below the minimal
    translation length of the cusp lattice; a violation signals indiscreteness.
    """
    eps = tolerances.eps_geom() if eps is None else eps
    bound = min_translation_length(lat)
    for s in spheres:
        if s.radius > bound + eps:
            return ShimizuResult(False, s.word, s.radius, bound)
    return ShimizuResult(True, None, 0.0, bound)
