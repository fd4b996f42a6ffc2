"""One-parameter families of representations: sampling, transition events,
and tunnel certification along paths.

Generator entries are polynomials in the path parameter, so samples are
closed-form and brackets reproducible.  Between samples whose visible
combinatorics differ, the event time is bracketed by bisection and the
transition classified by how the emerging sphere was covered just before it
surfaced: under one sphere (bumping), under several but surfacing at the
boundary circle (sliding), or strictly in the interior (internal move).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .dual import core_tunnel_status
from .engine import (Budget, FordDomain, Representation, Status,
                     WORD_GAMMA, run_procedure)
from .errors import FordBodyError, PathBroken
from .moebius import EPS_GEOM, GroupWord
from .visibility import (SphereRelation, boundary_visible, covered_by_single,
                         sphere_relation)

BRACKET_DIVISOR = 10_000  # bracket width target: span / this
# nesting margin for the emergence classifier: a face at the visibility
# threshold may already poke out of its cover by the area-equivalent depth
NEST_EPS = 1e-6


class EventKind(Enum):
    BUMPING = "bumping"
    REVERSE_BUMPING = "reverse_bumping"
    SLIDING = "sliding"
    REVERSE_SLIDING = "reverse_sliding"
    INTERNAL = "internal"
    TANGENCY = "tangency"
    UNCLASSIFIED = "unclassified"


# entry = tuple of complex polynomial coefficients, lowest degree first
PolyEntry = Tuple[complex, ...]
PolyMatrix = Tuple[Tuple[PolyEntry, PolyEntry], Tuple[PolyEntry, PolyEntry]]


def _poly_eval(coeffs: Sequence[complex], t: float) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def constant_matrix(a, b, c, d) -> PolyMatrix:
    return (((complex(a),), (complex(b),)), ((complex(c),), (complex(d),)))


@dataclass(frozen=True)
class RepPath:
    """Polynomial family of generator matrices over [t_start, t_end]."""

    t_start: float
    t_end: float
    alpha: PolyMatrix
    beta: PolyMatrix
    gamma: PolyMatrix
    samples: int = 64

    @property
    def span(self) -> float:
        return abs(self.t_end - self.t_start)

    def matrix_at(self, entries: PolyMatrix, t: float):
        return tuple(tuple(_poly_eval(e, t) for e in row) for row in entries)

    def rep_at(self, t: float) -> Representation:
        """Representation at parameter t.

        Standard-form families keep their word labels; anything else goes
        through full normalization (without the gamma shift, for the same
        reason).
        """
        (aa, ab), (ac, ad) = self.matrix_at(self.alpha, t)
        (ba, bb), (bc, bd) = self.matrix_at(self.beta, t)
        (ga, gb), (gc, gd) = self.matrix_at(self.gamma, t)
        standard = (abs(ac) <= EPS_GEOM and abs(bc) <= EPS_GEOM
                    and abs(aa - ad) <= EPS_GEOM and abs(ba - bd) <= EPS_GEOM
                    and abs(gb * gc - (-1.0)) <= 1e-7
                    and abs(gd) <= EPS_GEOM and abs(abs(gc) - 1.0) <= 1e-9)
        if standard:
            return Representation.from_standard(ab / aa, bb / ba, ga / gc)
        from .engine import normalize_representation
        return normalize_representation(((aa, ab), (ac, ad)),
                                        ((ba, bb), (bc, bd)),
                                        ((ga, gb), (gc, gd)),
                                        shift_gamma=False)

    def sample_times(self, count: Optional[int] = None) -> List[float]:
        n = count or self.samples
        return [float(t) for t in np.linspace(self.t_start, self.t_end, n)]


@dataclass
class SampleSummary:
    t: float
    status: str
    faces: frozenset
    edges: frozenset
    tunnel: str
    min_parabolic: str
    poincare_passed: bool
    error: Optional[str] = None

    def combinatorics(self):
        return (self.faces, self.edges)


@dataclass
class PathEvent:
    kind: EventKind
    bracket: Tuple[float, float]
    witnesses: Dict[str, object] = field(default_factory=dict)

    @property
    def width(self) -> float:
        return abs(self.bracket[1] - self.bracket[0])


class _SampleCache:
    def __init__(self, path: RepPath, budget: Optional[Budget]):
        self.path = path
        self.budget = budget
        self._cache: Dict[float, Tuple[Optional[FordDomain], SampleSummary]] = {}

    def at(self, t: float) -> Tuple[Optional[FordDomain], SampleSummary]:
        hit = self._cache.get(t)
        if hit is not None:
            return hit
        try:
            rep = self.path.rep_at(t)
            fd = run_procedure(rep, budget=self.budget)
            summary = SampleSummary(
                t, fd.status.value,
                frozenset(fd.face_strings()), frozenset(fd.edge_keys()),
                core_tunnel_status(fd).certification.value,
                fd.min_parabolic.value, fd.poincare.passed)
            result = (fd, summary)
        except FordBodyError as exc:
            summary = SampleSummary(t, "invalid", frozenset(), frozenset(),
                                    "none", "inconclusive", False,
                                    error=str(exc))
            result = (None, summary)
        self._cache[t] = result
        return result


def sweep(path: RepPath, budget: Optional[Budget] = None):
    """Sample the family and bracket+classify every combinatorial change.

    Refinement runs below the target width, and events whose refined brackets
    nearly touch are coalesced and re-classified across the joined bracket:
    a single geometric transition can trip the face-area and edge-length
    thresholds at minutely different parameters, which would otherwise split
    one move into tolerance fragments.

    Returns (timeline of per-sample summaries, events in parameter order).
    """
    cache = _SampleCache(path, budget)
    times = path.sample_times()
    timeline = [cache.at(t)[1] for t in times]
    target = path.span / BRACKET_DIVISOR if path.span > 0 else 0.0
    fine = target / 4.0
    raw: List[PathEvent] = []
    for left, right in zip(timeline, timeline[1:]):
        if left.error or right.error:
            continue
        if left.combinatorics() != right.combinatorics():
            raw.extend(_bracket_events(cache, left.t, right.t, fine))
    raw.sort(key=lambda e: min(e.bracket))
    forward = path.t_start <= path.t_end
    events: List[PathEvent] = []
    for group in _coalesce(raw, 2 * target):
        lo = min(min(e.bracket) for e in group)
        hi = max(max(e.bracket) for e in group)
        t_before, t_after = (lo, hi) if forward else (hi, lo)
        s_before = cache.at(t_before)[1]
        s_after = cache.at(t_after)[1]
        if s_before.faces != s_after.faces:
            t_before, t_after = _refine(cache, t_before, t_after, target,
                                        lambda s: s.faces)
        else:
            t_before, t_after = _refine(cache, t_before, t_after, target,
                                        lambda s: s.combinatorics())
        events.append(_classify_bracket(cache, t_before, t_after))
    events.sort(key=lambda e: min(e.bracket))
    return timeline, events


def _coalesce(events: List[PathEvent], gap: float) -> List[List[PathEvent]]:
    groups: List[List[PathEvent]] = []
    for e in events:
        if groups and min(e.bracket) - max(max(x.bracket) for x in groups[-1]) <= gap:
            groups[-1].append(e)
        else:
            groups.append([e])
    return groups


def _refine(cache: _SampleCache, t_lo: float, t_hi: float, target: float,
            state) -> Tuple[float, float]:
    """Narrow [t_lo, t_hi] around the change of state(summary) to the target."""
    s_lo = state(cache.at(t_lo)[1])
    s_hi = state(cache.at(t_hi)[1])
    if s_lo == s_hi:
        return t_lo, t_hi
    while abs(t_hi - t_lo) > target:
        mid = (t_lo + t_hi) / 2.0
        s_mid = state(cache.at(mid)[1])
        if s_mid == s_lo:
            t_lo = mid
        else:
            t_hi = mid
    return t_lo, t_hi


def _bracket_events(cache: _SampleCache, t_lo: float, t_hi: float,
                    target: float) -> List[PathEvent]:
    lo = cache.at(t_lo)[1]
    hi = cache.at(t_hi)[1]
    if abs(t_hi - t_lo) <= target:
        return [_classify_bracket(cache, t_lo, t_hi)]
    mid_t = (t_lo + t_hi) / 2.0
    mid = cache.at(mid_t)[1]
    if mid.error:
        return [PathEvent(EventKind.UNCLASSIFIED, (t_lo, t_hi),
                          {"error": mid.error})]
    out: List[PathEvent] = []
    if mid.combinatorics() != lo.combinatorics():
        out.extend(_bracket_events(cache, t_lo, mid_t, target))
    if mid.combinatorics() != hi.combinatorics():
        out.extend(_bracket_events(cache, mid_t, t_hi, target))
    return out


def _classify_bracket(cache: _SampleCache, t_lo: float, t_hi: float) -> PathEvent:
    fd_lo, sum_lo = cache.at(t_lo)
    fd_hi, sum_hi = cache.at(t_hi)
    if fd_lo is None or fd_hi is None:
        return PathEvent(EventKind.UNCLASSIFIED, (t_lo, t_hi),
                         {"error": sum_lo.error or sum_hi.error})
    kind, witnesses = classify_event(fd_lo, fd_hi)
    witnesses["t_lo"], witnesses["t_hi"] = t_lo, t_hi
    return PathEvent(kind, (t_lo, t_hi), witnesses)


def classify_event(before: FordDomain, after: FordDomain,
                   witnesses: Optional[Dict[str, object]] = None):
    """Classify the transition between two neighboring domains.

    Emergences follow the covering taxonomy: a face surfacing from under a
    single sphere is a bump; from under several spheres but visible on the
    boundary circle right after, a slide; interior-only emergence is an
    internal move.  Disappearances mirror to the reverse kinds.
    """
    w: Dict[str, object] = dict(witnesses or {})
    before_words = before.face_words()
    after_words = after.face_words()
    new = sorted(after_words - before_words, key=lambda x: x.sort_key())
    gone = sorted(before_words - after_words, key=lambda x: x.sort_key())
    w["new_faces"] = [x.to_string() for x in new]
    w["gone_faces"] = [x.to_string() for x in gone]
    if new and gone:
        return EventKind.UNCLASSIFIED, w
    if new:
        kind = _classify_emergence(before, after, new, w)
        return kind, w
    if gone:
        kind = _classify_emergence(after, before, gone, w)
        kind = {EventKind.BUMPING: EventKind.REVERSE_BUMPING,
                EventKind.SLIDING: EventKind.REVERSE_SLIDING}.get(kind, kind)
        return kind, w
    if before.edge_keys() != after.edge_keys():
        return EventKind.INTERNAL, w
    return EventKind.TANGENCY, w


def _classify_emergence(covered_side: FordDomain, visible_side: FordDomain,
                        new_words: List[GroupWord], w: Dict[str, object]):
    rep_cov = covered_side.rep
    lat = rep_cov.lattice
    singles: List[str] = []
    for word in new_words:
        try:
            sphere = rep_cov.sphere_of(word)
        except FordBodyError:
            continue
        for f in covered_side.faces:
            from .lattice import offsets_reaching
            for p, q in offsets_reaching(lat, f.sphere.center, sphere.center,
                                         f.sphere.radius + sphere.radius):
                t = f.sphere.translated(lat.vec(p, q), p, q) if (p or q) else f.sphere
                if covered_by_single(sphere, t, eps=NEST_EPS):
                    singles.append(word.to_string())
                    break
            else:
                continue
            break
    if singles:
        w["nested_under_single"] = singles
        w["bumped_pairs"] = _relation_flips(covered_side, visible_side)
        return EventKind.BUMPING
    # not nested under one sphere: decide by boundary visibility just after
    rep_vis = visible_side.rep
    spheres_after = [f.sphere for f in visible_side.faces]
    surfaced = []
    for word in new_words:
        f = visible_side.face_for(word)
        if f is None:
            continue
        if boundary_visible(f.sphere, spheres_after, rep_vis.lattice):
            surfaced.append(word.to_string())
    if surfaced:
        w["boundary_surfaced"] = surfaced
        return EventKind.SLIDING
    return EventKind.INTERNAL


def _relation_flips(before: FordDomain, after: FordDomain) -> List[Tuple[str, str]]:
    """Visible-on-both-sides pairs that pass from disjoint to crossing."""
    flips = []
    common = before.face_words() & after.face_words()
    rep_b, rep_a = before.rep, after.rep
    for wg in sorted(common, key=lambda x: x.sort_key()):
        for wh in sorted(common, key=lambda x: x.sort_key()):
            if wh.sort_key() < wg.sort_key():
                continue
            try:
                g_b, h_b = rep_b.sphere_of(wg), rep_b.sphere_of(wh)
                g_a, h_a = rep_a.sphere_of(wg), rep_a.sphere_of(wh)
            except FordBodyError:
                continue
            if wg == wh:
                continue
            if (sphere_relation(g_b, h_b) == SphereRelation.DISJOINT
                    and sphere_relation(g_a, h_a) == SphereRelation.TWO_POINT):
                flips.append((wg.to_string(), wh.to_string()))
    return flips


@dataclass(frozen=True)
class TunnelCertificate:
    certified: bool
    witness_t: Optional[float]
    samples_checked: int


def certify_tunnel_along_path(path: RepPath, budget: Optional[Budget] = None,
                              samples: Optional[int] = None) -> TunnelCertificate:
    """Certify the tunnel geodesic along a path from a simple-spine start.

    Every sample must terminate with the tunnel generator's face visible;
    a non-terminating sample breaks the path (PathBroken), a terminating
    sample without the face yields NotCertified with the witness time.
    """
    cache = _SampleCache(path, budget)
    times = path.sample_times(samples)
    fd0, sum0 = cache.at(times[0])
    if fd0 is None or sum0.error:
        raise PathBroken(f"initial sample invalid: {sum0.error}", t=times[0])
    start_words = {w for w in fd0.face_strings()}
    if start_words != {"g", "G"}:
        raise PathBroken("path must start at a simple spine (faces g, G)",
                         t=times[0])
    checked = 0
    for t in times:
        fd, summary = cache.at(t)
        if fd is None or summary.error:
            raise PathBroken(f"invalid sample at t={t}: {summary.error}", t=t)
        if fd.status != Status.TERMINATED:
            raise PathBroken(f"sample at t={t} did not terminate "
                             f"({fd.status.value})", t=t)
        checked += 1
        gamma_there = (WORD_GAMMA in fd.face_words()
                       or WORD_GAMMA.inverse() in fd.face_words())
        if not gamma_there:
            return TunnelCertificate(False, t, checked)
    return TunnelCertificate(True, None, checked)
