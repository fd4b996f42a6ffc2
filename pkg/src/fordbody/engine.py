"""Ford-domain engine for the (1;2)-compression body.

Drives face discovery from the two tunnel generators: pop a word, re-test its
sphere for visibility, draw it, then look for visible intersections with
every drawn sphere over the 7x7 cusp-translate window; each visible crossing
of I(w) and I(xi) enqueues xi*w^-1 and w*xi^-1.  Termination hands the face
set to a Poincare-style verifier (face pairings, edge monodromy, interior
angle sums) which certifies the output as the Ford domain.
"""

from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, List, Optional, Sequence, Set, Tuple

from . import tolerances
from .errors import (FixesInfinity, NotLoxodromic, NotParabolic, OpenCycle)
from .lattice import (CuspLattice, Rectangle, min_translation_length,
                      nearest_translate, neighbor_offsets, offsets_reaching,
                      reduce)
from .moebius import (INFINITY, GroupWord, IsoSphere, MapClass,
                      MoebiusMap, classify, compose, isometric_sphere)
from .visibility import (EPS_TANGENT, EdgeArc, ShimizuResult, SphereRelation,
                         interior_angle, shimizu_check, sphere_relation,
                         tangency_point, visibility_area, visible_edge,
                         visible_wrt, visibly_tangent)

EPS_MONO = 1e-9
EPS_ANGLE = 1e-9

WORD_ALPHA = GroupWord.lattice(1, 0)
WORD_BETA = GroupWord.lattice(0, 1)
WORD_GAMMA = GroupWord.tunnel(1)


class Status(Enum):
    TERMINATED = "terminated"
    BUDGET_EXHAUSTED = "budget_exhausted"
    UNRESOLVED = "unresolved"
    INDISCRETE_SIGNAL = "indiscrete_signal"


class MinParabolic(Enum):
    CERTIFIED = "certified"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Budget:
    max_faces: int = 256
    max_iterations: int = 20000
    time_limit: Optional[float] = None


# ---------------------------------------------------------------------------
# Representations
# ---------------------------------------------------------------------------

@dataclass
class Representation:
    """Images of the three generators in standard form.

    alpha, beta translate by the reduced lattice basis; gamma is the
    loxodromic [[c, -1], [1, 0]], so I(gamma) has center 0 and radius 1 and
    I(gamma^-1) has center c and radius 1.
    """

    alpha: MoebiusMap
    beta: MoebiusMap
    gamma: MoebiusMap
    lattice: CuspLattice
    normalized: bool = True
    _cache: Dict[GroupWord, MoebiusMap] = field(default_factory=dict,
                                                repr=False, compare=False)

    # entry ratios, stable under the matrix sign canonicalization
    @property
    def a(self) -> complex:
        return self.alpha.b / self.alpha.a

    @property
    def b(self) -> complex:
        return self.beta.b / self.beta.a

    @property
    def c(self) -> complex:
        return self.gamma.a / self.gamma.c

    @staticmethod
    def from_standard(a: complex, b: complex, c: complex) -> "Representation":
        lat = reduce(a, b)
        alpha = MoebiusMap.translation(lat.a, WORD_ALPHA)
        beta = MoebiusMap.translation(lat.b, WORD_BETA)
        gamma = MoebiusMap.from_matrix(c, -1.0, 1.0, 0.0, WORD_GAMMA)
        kind = classify(gamma)
        if kind != MapClass.LOXODROMIC:
            raise NotLoxodromic(f"gamma with c={c} classifies as {kind.value}")
        return Representation(alpha, beta, gamma, lat)

    def _gamma_power(self, k: int) -> MoebiusMap:
        word = GroupWord.tunnel(k)
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        if k == 0:
            m = MoebiusMap.identity()
        elif k > 0:
            m = compose(self._gamma_power(k - 1), self.gamma)
        else:
            m = compose(self._gamma_power(k + 1), self.gamma.inverse())
        self._cache[word] = m
        return m

    def matrix_for(self, word: GroupWord) -> MoebiusMap:
        """Evaluate a group word to its (sign-canonical) matrix."""
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        m = MoebiusMap.identity()
        for blk in word.blocks:
            if blk[0] == "T":
                m = compose(m, self._gamma_power(blk[1]))
            else:
                vec = blk[1] * self.a + blk[2] * self.b
                m = compose(m, MoebiusMap.translation(
                    vec, GroupWord.lattice(blk[1], blk[2])))
        self._cache[word] = m
        return m

    def sphere_of(self, word: GroupWord) -> IsoSphere:
        return isometric_sphere(self.matrix_for(word))

    def element(self, word: GroupWord, offset: Tuple[int, int]) -> GroupWord:
        """Word of the element whose sphere is the (p, q)-translate."""
        return word * GroupWord.lattice(-offset[0], -offset[1])


def evaluate_word(word: GroupWord, rep: Representation) -> MoebiusMap:
    return rep.matrix_for(word)


def _parabolic_fixed_point(m: MoebiusMap, eps: float):
    if abs(m.c) <= eps:
        return INFINITY
    return (m.a - m.d) / (2.0 * m.c)


def _as_map(raw) -> MoebiusMap:
    if isinstance(raw, MoebiusMap):
        return raw
    (a, b), (c, d) = raw
    return MoebiusMap.from_matrix(a, b, c, d)


def normalize_representation(alpha_raw, beta_raw, gamma_raw,
                             shift_gamma: bool = True,
                             eps: float = None) -> Representation:
    """Conjugate raw generator matrices into standard form.

    The cusp pair is brought to translations fixing infinity, gamma^-1 is
    sent to 0, and the lower row of gamma scaled to (1, 0).  The lattice
    basis is then reduced, and (optionally) gamma is premultiplied by a cusp
    element so gamma(infinity) falls in the half-open fundamental
    parallelogram based at gamma^-1(infinity).
    """
    eps = tolerances.eps_geom() if eps is None else eps
    alpha, beta, gamma = _as_map(alpha_raw), _as_map(beta_raw), _as_map(gamma_raw)
    for name, m in (("alpha", alpha), ("beta", beta)):
        if classify(m) != MapClass.PARABOLIC:
            raise NotParabolic(f"{name} is {classify(m).value}")
    za = _parabolic_fixed_point(alpha, eps)
    zb = _parabolic_fixed_point(beta, eps)
    if (za is INFINITY) != (zb is INFINITY):
        raise NotParabolic("cusp generators fix different points")
    if za is not INFINITY and abs(za - zb) > 1e-6:
        raise NotParabolic("cusp generators fix different points")
    if classify(gamma) != MapClass.LOXODROMIC:
        raise NotLoxodromic(f"gamma is {classify(gamma).value}")

    def conj(u: MoebiusMap, m: MoebiusMap) -> MoebiusMap:
        return compose(u, compose(m, u.inverse()))

    if za is not INFINITY:
        u1 = MoebiusMap.from_matrix(0.0, 1.0, -1.0, za)
        alpha, beta, gamma = conj(u1, alpha), conj(u1, beta), conj(u1, gamma)
    if abs(gamma.c) <= eps:
        raise NotLoxodromic("tunnel generator fixes the cusp point")
    w = -gamma.d / gamma.c
    t = MoebiusMap.translation(-w)
    alpha, beta, gamma = conj(t, alpha), conj(t, beta), conj(t, gamma)
    s = MoebiusMap.from_matrix(1.0, 0.0, 0.0, 1.0 / gamma.c)  # diag(s, 1/s), s^2 = c
    # from_matrix normalizes the determinant, which realizes the scaling
    alpha, beta, gamma = conj(s, alpha), conj(s, beta), conj(s, gamma)
    # entries are only defined up to sign; ratios make the form check stable
    form_err = max(abs(gamma.d), abs(abs(gamma.c) - 1.0),
                   abs(gamma.b / gamma.c + 1.0),
                   abs(alpha.c), abs(abs(alpha.a) - 1.0),
                   abs(beta.c), abs(abs(beta.a) - 1.0))
    if form_err > 1e-7:
        raise NotParabolic(f"normalization failed to reach standard form ({form_err:.2e})")
    a_vec, b_vec = alpha.b / alpha.a, beta.b / beta.a
    c_val = gamma.a / gamma.c
    lat = reduce(a_vec, b_vec)
    if shift_gamma:
        x, y = lat.coords(c_val)
        c_val = c_val - lat.vec(math.floor(x), math.floor(y))
    return Representation.from_standard(lat.a, lat.b, c_val)


# ---------------------------------------------------------------------------
# Domain data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FaceClass:
    word: GroupWord
    map: MoebiusMap
    sphere: IsoSphere
    visible: bool = True

    def key(self):
        return self.word.sort_key()


ArcKey = Tuple


def arc_key(w1: GroupWord, o1: Tuple[int, int],
            w2: GroupWord, o2: Tuple[int, int]) -> ArcKey:
    """Cusp-translation class of an unordered sphere pair."""
    k1 = (w1.sort_key(), w2.sort_key(), (o2[0] - o1[0], o2[1] - o1[1]))
    k2 = (w2.sort_key(), w1.sort_key(), (o1[0] - o2[0], o1[1] - o2[1]))
    return min(k1, k2)


@dataclass(frozen=True)
class ArcRecord:
    """One cusp-translation class of visible edge arcs, by representative."""

    key: ArcKey
    s1: IsoSphere
    s2: IsoSphere
    arc: EdgeArc


@dataclass
class EdgeClass:
    """Quotient edge: arcs glued around one edge of the domain."""

    arcs: List[ArcRecord]
    cycle_words: List[GroupWord]
    lattice_delta: Tuple[int, int]
    monodromy: MoebiusMap
    monodromy_deviation: float
    angle_sum: float

    @property
    def rep_arc(self) -> ArcRecord:
        return self.arcs[0]

    def face_pair_count(self) -> int:
        return len(self.cycle_words)


@dataclass(frozen=True)
class VertexPoint:
    z: complex
    height: float
    incident: Tuple[Tuple[GroupWord, Tuple[int, int]], ...]

    def norm_key(self):
        members = sorted((w.sort_key(), off) for w, off in self.incident)
        base = members[0][1]
        return tuple((wk, (off[0] - base[0], off[1] - base[1]))
                     for wk, off in members)


@dataclass
class VertexClass:
    members: List[VertexPoint]

    @property
    def incident_count(self) -> int:
        return len(self.members[0].incident)


@dataclass
class EdgeReport:
    cycle: List[str]
    monodromy_deviation: float
    angle_sum: float
    ok: bool


@dataclass
class VerificationReport:
    pairings_ok: bool
    pairing_deviation: float
    edge_reports: List[EdgeReport]
    passed: bool


@dataclass(frozen=True)
class TangencyMarker:
    point: complex
    words: Tuple[str, str]


@dataclass
class FordDomain:
    rep: Representation
    faces: List[FaceClass]
    edges: List[EdgeClass]
    vertices: List[VertexClass]
    status: Status
    status_reason: Optional[str]
    poincare: VerificationReport
    min_parabolic: MinParabolic
    shimizu: ShimizuResult
    drawn: List[FaceClass] = field(default_factory=list)
    tangencies: List[TangencyMarker] = field(default_factory=list)
    intersections_log: List[dict] = field(default_factory=list)
    iterations: int = 0
    marginal_words: List[str] = field(default_factory=list)

    def face_words(self) -> Set[GroupWord]:
        return {f.word for f in self.faces}

    def face_strings(self) -> Set[str]:
        return {f.word.to_string() for f in self.faces}

    def face_for(self, word: GroupWord) -> Optional[FaceClass]:
        for f in self.faces:
            if f.word == word:
                return f
        return None

    def edge_keys(self) -> Set[ArcKey]:
        return {e.rep_arc.key for e in self.edges}

    def max_face_weight(self) -> int:
        return max((f.word.weight() for f in self.faces), default=0)

    def summary(self):
        return (frozenset(self.face_strings()),
                frozenset(self.edge_keys()),
                self.status)


# ---------------------------------------------------------------------------
# The discovery loop
# ---------------------------------------------------------------------------

def _all_spheres(entries: Sequence[FaceClass]) -> List[IsoSphere]:
    return [e.sphere for e in entries]


def run_procedure(rep: Representation, window: Optional[Rectangle] = None,
                  budget: Optional[Budget] = None) -> FordDomain:
    """Discover the visible faces and certify the result.

    Maintains the queue of words to draw and the list of drawn words; a
    popped word whose sphere is no longer visible over the drawn set is
    discarded.  Visible intersections with drawn spheres (checked over the
    7x7 translate window around the nearest translate) enqueue the two
    chain-rule successors after deduplication.
    """
    budget = budget or Budget()
    lat = rep.lattice
    t_min = min_translation_length(lat)
    started = time.monotonic()

    queue: deque = deque()
    queued: Set[GroupWord] = set()
    drawn_words: Set[GroupWord] = set()
    entries: List[FaceClass] = []
    log: List[dict] = []
    status: Optional[Status] = None
    reason: Optional[str] = None
    iterations = 0

    for word in (WORD_GAMMA, WORD_GAMMA.inverse()):
        queue.append(word)
        queued.add(word)

    while queue:
        if iterations >= budget.max_iterations:
            status, reason = Status.BUDGET_EXHAUSTED, "iteration budget exhausted"
            break
        if budget.time_limit is not None and time.monotonic() - started > budget.time_limit:
            status, reason = Status.BUDGET_EXHAUSTED, "time budget exhausted"
            break
        iterations += 1
        zeta = queue.popleft()
        queued.discard(zeta)
        try:
            sphere = rep.sphere_of(zeta)
        except FixesInfinity:
            continue
        if sphere.radius > t_min + tolerances.eps_geom():
            status = Status.INDISCRETE_SIGNAL
            reason = (f"isometric sphere of {zeta} has radius "
                      f"{sphere.radius:.6g} > minimal translation {t_min:.6g}")
            break
        if entries and not visible_wrt(sphere, _all_spheres(entries) + [sphere], lat):
            continue
        entry = FaceClass(zeta, rep.matrix_for(zeta), sphere)
        entries.append(entry)
        drawn_words.add(zeta)
        if len(entries) > budget.max_faces:
            status, reason = Status.BUDGET_EXHAUSTED, "face budget exhausted"
            break
        spheres_now = _all_spheres(entries)
        for xi in entries:
            p, q = nearest_translate(lat, xi.sphere.center, sphere.center)
            for eps_off, delta_off in neighbor_offsets():
                pp, qq = p + eps_off, q + delta_off
                if xi.word == zeta and pp == 0 and qq == 0:
                    continue
                trans = sphere.translated(lat.vec(pp, qq), pp, qq) if (pp or qq) else sphere
                if trans.same_sphere(xi.sphere):
                    continue
                rel = sphere_relation(trans, xi.sphere)
                if rel != SphereRelation.TWO_POINT:
                    continue
                log.append({"zeta": zeta.to_string(), "xi": xi.word.to_string(),
                            "offset": (pp, qq), "nearest": (p, q),
                            "window": (eps_off, delta_off)})
                arc = visible_edge(trans, xi.sphere, spheres_now, lat)
                if not arc.visible_subarcs:
                    continue
                w_word = zeta * GroupWord.lattice(-pp, -qq)
                for new_word in (xi.word * w_word.inverse(),
                                 w_word * xi.word.inverse()):
                    core, _off = new_word.face_class()
                    if core.is_lattice():
                        continue
                    if core in drawn_words or core in queued:
                        continue
                    queue.append(core)
                    queued.add(core)
    else:
        if status is None:
            status = Status.TERMINATED

    if status is None:
        status = Status.TERMINATED if not queue else Status.BUDGET_EXHAUSTED

    shimizu = shimizu_check(_all_spheres(entries), lat)
    if status != Status.TERMINATED:
        report = VerificationReport(False, math.inf, [], False)
        return FordDomain(rep, [], [], [], status, reason, report,
                          MinParabolic.INCONCLUSIVE, shimizu,
                          drawn=entries, intersections_log=log,
                          iterations=iterations)

    return _finalize(rep, entries, log, iterations, shimizu)


def _finalize(rep: Representation, entries: List[FaceClass], log: List[dict],
              iterations: int, shimizu: ShimizuResult) -> FordDomain:
    lat = rep.lattice
    all_spheres = _all_spheres(entries)
    marginal: List[str] = []
    final: List[FaceClass] = []
    drawn: List[FaceClass] = []
    for e in entries:
        res = visibility_area(e.sphere, all_spheres, lat)
        if res.marginal:
            marginal.append(e.word.to_string())
        if res.visible:
            final.append(e)
            drawn.append(e)
        else:
            drawn.append(replace(e, visible=False))
    final.sort(key=lambda f: f.key())

    arcs, tangencies = _collect_arcs(rep, final)
    status = Status.TERMINATED
    reason = None
    try:
        edges = _group_edges(rep, arcs)
    except OpenCycle as exc:
        status, reason = Status.UNRESOLVED, str(exc)
        edges = []
    vertices = _collect_vertices(rep, final, arcs) if status == Status.TERMINATED else []

    fd = FordDomain(rep, final, edges, vertices, status, reason,
                    VerificationReport(False, math.inf, [], False),
                    MinParabolic.INCONCLUSIVE, shimizu, drawn=drawn,
                    tangencies=tangencies, intersections_log=log,
                    iterations=iterations, marginal_words=marginal)
    fd.poincare = verify_poincare(fd, rep)
    fd.min_parabolic = check_minimal_parabolic(fd)
    return fd


def _collect_arcs(rep: Representation, faces: List[FaceClass]):
    """All visible edge arcs (one per cusp class) and visible tangencies."""
    lat = rep.lattice
    all_spheres = [f.sphere for f in faces]
    seen: Set[ArcKey] = set()
    arcs: Dict[ArcKey, ArcRecord] = {}
    tangent_seen: Set[ArcKey] = set()
    tangencies: List[TangencyMarker] = []
    for i, fg in enumerate(faces):
        for fh in faces[i:]:
            reach = fg.sphere.radius + fh.sphere.radius + 10 * EPS_TANGENT
            for p, q in offsets_reaching(lat, fh.sphere.center,
                                         fg.sphere.center, reach):
                if fg.word == fh.word and p == 0 and q == 0:
                    continue
                trans = fh.sphere.translated(lat.vec(p, q), p, q) if (p or q) else fh.sphere
                if trans.same_sphere(fg.sphere):
                    continue
                key = arc_key(fg.word, (0, 0), fh.word, (p, q))
                rel = sphere_relation(fg.sphere, trans)
                if rel == SphereRelation.TWO_POINT:
                    if key in seen:
                        continue
                    seen.add(key)
                    arc = visible_edge(fg.sphere, trans, all_spheres, lat)
                    if arc.visible_subarcs:
                        arcs[key] = ArcRecord(key, fg.sphere, trans, arc)
                elif rel in (SphereRelation.EXTERNALLY_TANGENT,
                             SphereRelation.INTERNALLY_TANGENT):
                    if key in tangent_seen:
                        continue
                    tangent_seen.add(key)
                    touch = tangency_point(fg.sphere, trans)
                    others = _spheres_near(rep, faces, touch, 0.0)
                    if visibly_tangent(fg.sphere, trans, others):
                        tangencies.append(TangencyMarker(
                            touch, (fg.word.to_string(), fh.word.to_string())))
    return arcs, tangencies


def _spheres_near(rep: Representation, faces: Sequence[FaceClass],
                  center: complex, reach: float) -> List[IsoSphere]:
    lat = rep.lattice
    out = []
    for f in faces:
        for p, q in offsets_reaching(lat, f.sphere.center, center,
                                     reach + f.sphere.radius):
            out.append(f.sphere.translated(lat.vec(p, q), p, q) if (p or q)
                       else f.sphere)
    return out


def _walk_edge_cycle(rep: Representation, start: ArcRecord,
                     arc_keys: Set[ArcKey], max_steps: int = 64):
    """Walk the face pairings around an edge until the cycle closes.

    From an ordered arc (X, Y), crossing the Y-face applies its element and
    produces the arc (X*Y^-1, Y^-1); the next pivot is the face not entered
    through.  Returns (crossed element words, monodromy, visited keys,
    lattice delta between the closing arc and the start).
    """
    w1, o1 = start.s1.word, start.s1.lattice_offset
    w2, o2 = start.s2.word, start.s2.lattice_offset
    start_key = arc_key(w1, o1, w2, o2)
    cur_x = rep.element(w1, o1)
    cur_y = rep.element(w2, o2)
    crossed: List[GroupWord] = []
    monodromy = MoebiusMap.identity()
    visited = [start_key]
    for _ in range(max_steps):
        u = cur_y
        crossed.append(u)
        monodromy = compose(rep.matrix_for(u), monodromy)
        # entered through the image face u^-1; pivot next on the other one
        cur_x, cur_y = u.inverse(), cur_x * u.inverse()
        wx, ox = cur_x.face_class()
        wy, oy = cur_y.face_class()
        key = arc_key(wx, ox, wy, oy)
        if key == start_key:
            delta = _match_delta((w1, o1, w2, o2), (wx, ox, wy, oy))
            return crossed, monodromy, visited, delta
        if key not in arc_keys:
            raise OpenCycle(f"edge cycle left the visible arc set at {wx}|{wy}",
                            missing_arc=key)
        visited.append(key)
        cur_x = rep.element(wx, ox)
        cur_y = rep.element(wy, oy)
    raise OpenCycle("edge cycle failed to close")


def _match_delta(start, final) -> Tuple[int, int]:
    w1, o1, w2, o2 = start
    wx, ox, wy, oy = final
    options = []
    if wx == w1 and wy == w2:
        d1 = (ox[0] - o1[0], ox[1] - o1[1])
        d2 = (oy[0] - o2[0], oy[1] - o2[1])
        if d1 == d2:
            options.append(d1)
    if wx == w2 and wy == w1:
        d1 = (ox[0] - o2[0], ox[1] - o2[1])
        d2 = (oy[0] - o1[0], oy[1] - o1[1])
        if d1 == d2:
            options.append(d1)
    if not options:
        raise OpenCycle("closing arc does not match the start arc")
    return options[0]


def _group_edges(rep: Representation, arcs: Dict[ArcKey, ArcRecord]) -> List[EdgeClass]:
    keys = set(arcs)
    unassigned = dict(arcs)
    classes: List[EdgeClass] = []
    while unassigned:
        key = min(unassigned)
        start = unassigned[key]
        crossed, monodromy, visited, delta = _walk_edge_cycle(rep, start, keys)
        members = []
        for k in visited:
            if k in unassigned:
                members.append(unassigned.pop(k))
        lam = rep.matrix_for(GroupWord.lattice(*delta))
        deviation = monodromy.distance_to(lam)
        angle_sum = sum(interior_angle(arcs[k].s1, arcs[k].s2)
                        for k in visited if k in arcs)
        classes.append(EdgeClass(members, crossed, delta, monodromy,
                                 deviation, angle_sum))
    classes.sort(key=lambda e: e.rep_arc.key)
    return classes


def _collect_vertices(rep: Representation, faces: List[FaceClass],
                      arcs: Dict[ArcKey, ArcRecord]) -> List[VertexClass]:
    """Points of the domain where three or more visible spheres meet."""
    lat = rep.lattice
    raw: List[VertexPoint] = []
    for rec in arcs.values():
        if not rec.arc.visible_subarcs:
            continue
        lo, hi = rec.arc.visible_subarcs[0]
        chord = rec.arc.chord_length
        for t, binder in ((lo, rec.arc.lo_binder), (hi, rec.arc.hi_binder)):
            if binder is None:
                continue
            if t * chord <= 1e-9 or (1.0 - t) * chord <= 1e-9:
                continue
            z, h = rec.arc.point_at(t)
            incident = []
            for s in _spheres_near(rep, faces, z, 1.0):
                if abs(s.power(z) + h * h) <= 1e-7 * max(1.0, s.radius):
                    incident.append((s.word, s.lattice_offset))
            if len(incident) >= 3:
                raw.append(VertexPoint(z, h, tuple(sorted(
                    incident, key=lambda t2: (t2[0].sort_key(), t2[1])))))
    by_key: Dict[tuple, VertexPoint] = {}
    for v in raw:
        by_key.setdefault(v.norm_key(), v)
    # group cusp classes into quotient classes via the face pairings
    classes: List[VertexClass] = []
    remaining = dict(by_key)
    while remaining:
        key = min(remaining)
        stack = [key]
        members: List[VertexPoint] = []
        seen_keys = set()
        while stack:
            k = stack.pop()
            if k in seen_keys:
                continue
            seen_keys.add(k)
            if k in remaining:
                members.append(remaining.pop(k))
            v = by_key.get(k)
            if v is None:
                continue
            elements = [rep.element(w, off) for w, off in v.incident]
            for u in elements:
                images = []
                for e in elements:
                    img = e * u.inverse()
                    if img.is_identity():
                        img = u.inverse()
                    images.append(img.face_class())
                img_members = sorted((w.sort_key(), off) for w, off in images)
                base = img_members[0][1]
                img_key = tuple((wk, (off[0] - base[0], off[1] - base[1]))
                                for wk, off in img_members)
                if img_key in by_key and img_key not in seen_keys:
                    stack.append(img_key)
        classes.append(VertexClass(members))
    classes.sort(key=lambda vc: vc.members[0].norm_key())
    return classes


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

def _face_matrix(fd: FordDomain, rep: Representation, word: GroupWord) -> MoebiusMap:
    """Matrix of an element word, preferring the face maps stored on fd."""
    core, off = word.face_class()
    base = fd.face_for(core)
    m = base.map if base is not None else rep.matrix_for(core)
    if off == (0, 0):
        return m
    vec = -(off[0] * rep.a + off[1] * rep.b)
    return compose(m, MoebiusMap.translation(vec))


def verify_poincare(fd: FordDomain, rep: Representation) -> VerificationReport:
    """Face-pairing and edge-cycle checks in the sense of the polyhedron
    gluing theorem: g must carry I(g) onto I(g^-1), each edge cycle must have
    identity monodromy (up to its cusp translation), and interior dihedral
    angles around each edge must sum to 2*pi.
    """
    lat = rep.lattice
    pairing_dev = 0.0
    pairings_ok = True
    words = {f.word for f in fd.faces}
    for f in fd.faces:
        inv_core, _ = f.word.inverse().face_class()
        partner = fd.face_for(inv_core)
        if inv_core not in words or partner is None:
            pairings_ok = False
            pairing_dev = math.inf
            continue
        image_center = f.map.apply(INFINITY)
        if image_center is INFINITY:
            pairings_ok = False
            pairing_dev = math.inf
            continue
        p, q = nearest_translate(lat, image_center, partner.sphere.center)
        dev = abs(partner.sphere.center + lat.vec(p, q) - image_center)
        dev = max(dev, abs(f.sphere.radius - partner.sphere.radius))
        pairing_dev = max(pairing_dev, dev)
        if dev > 1e-7:
            pairings_ok = False
    edge_reports: List[EdgeReport] = []
    all_ok = True
    for e in fd.edges:
        m = MoebiusMap.identity()
        for u in e.cycle_words:
            m = compose(_face_matrix(fd, rep, u), m)
        lam = rep.matrix_for(GroupWord.lattice(*e.lattice_delta))
        deviation = m.distance_to(lam)
        angle_sum = sum(interior_angle(rec.s1, rec.s2) for rec in e.arcs)
        ok = deviation < EPS_MONO and abs(angle_sum - 2.0 * math.pi) < EPS_ANGLE
        edge_reports.append(EdgeReport([u.to_string() for u in e.cycle_words],
                                       deviation, angle_sum, ok))
        e.monodromy_deviation = deviation
        e.angle_sum = angle_sum
        all_ok = all_ok and ok
    passed = pairings_ok and all_ok and bool(fd.faces)
    return VerificationReport(pairings_ok, pairing_dev, edge_reports, passed)


def check_minimal_parabolic(fd: FordDomain) -> MinParabolic:
    """One-sided screen: certified when no visible pair is visibly tangent."""
    if fd.status != Status.TERMINATED or not fd.faces:
        return MinParabolic.INCONCLUSIVE
    if fd.tangencies:
        return MinParabolic.INCONCLUSIVE
    return MinParabolic.CERTIFIED


# ---------------------------------------------------------------------------
# Bounded brute-force oracle
# ---------------------------------------------------------------------------

def _enumerate_class_words(max_weight: int,
                           lattice_clip: Optional[int]) -> List[GroupWord]:
    """Normal-form words starting and ending with tunnel blocks."""
    out: List[GroupWord] = []

    def tunnel_blocks(budget: int):
        for k in range(1, budget + 1):
            yield ("T", k)
            yield ("T", -k)

    def lattice_blocks(budget: int):
        for p in range(-budget, budget + 1):
            for q in range(-budget, budget + 1):
                if p == 0 and q == 0:
                    continue
                if abs(p) + abs(q) > budget:
                    continue
                if lattice_clip is not None and (abs(p) > lattice_clip
                                                 or abs(q) > lattice_clip):
                    continue
                yield ("L", p, q)

    def rec(blocks: tuple, budget: int):
        for tb in tunnel_blocks(budget):
            word_blocks = blocks + (tb,)
            out.append(GroupWord(word_blocks))
            rest = budget - abs(tb[1])
            if rest >= 2:
                for lb in lattice_blocks(rest - 1):
                    rec(word_blocks + (lb,),
                        rest - abs(lb[1]) - abs(lb[2]))

    if max_weight >= 1:
        rec((), max_weight)
    return out


def brute_force_oracle(rep: Representation, max_syllable_weight: int,
                       window: Optional[Rectangle] = None):
    """Visible faces found by exhaustive enumeration up to a weight bound.

    Independent of the discovery order of run_procedure: every normal-form
    word within the bound gets a sphere, and each sphere is tested for
    visibility against all the others (with cusp translates).

    A sphere whose hemisphere sits under a single other closed half-ball has
    its whole half-ball contained in that one, so it adds nothing to the
    union; pruning those first is exact and keeps the pairwise pass small.
    """
    lat = rep.lattice
    clip = None
    if window is not None:
        gap_a, gap_b = lat.line_gaps()
        span = max(window.x1 - window.x0, window.y1 - window.y0)
        clip = int(math.ceil(span / min(gap_a, gap_b))) + 1
    words = _enumerate_class_words(max_syllable_weight, clip)
    by_word: Dict[GroupWord, IsoSphere] = {}
    for w in words:
        try:
            by_word[w] = rep.sphere_of(w)
        except FixesInfinity:
            continue
    from .visibility import covered_by_single
    ordered = sorted(by_word.items(), key=lambda kv: -kv[1].radius)
    survivors: List[Tuple[GroupWord, IsoSphere]] = []
    for w, s in ordered:
        pruned = False
        for _, big in survivors:
            if big.radius < s.radius:
                break
            for p, q in offsets_reaching(lat, big.center, s.center, big.radius):
                t = big.translated(lat.vec(p, q), p, q) if (p or q) else big
                if covered_by_single(s, t):
                    pruned = True
                    break
            if pruned:
                break
        if not pruned:
            survivors.append((w, s))
    keep = [s for _, s in survivors]
    visible: Set[GroupWord] = set()
    for w, s in survivors:
        if visible_wrt(s, keep, lat):
            visible.add(w)
    return visible


def edge_cycle(e: EdgeClass, fd: FordDomain):
    """Ordered face words crossed around the edge and the composed monodromy."""
    return [u for u in e.cycle_words], e.monodromy


def offset_window_instances(fd: FordDomain):
    """Post-hoc offsets of all intersecting translate pairs among visible faces.

    For each ordered face pair, every translate of the first sphere that
    meets the second is located relative to the nearest translate; discrete
    inputs keep these offsets within the 7x7 window.
    """
    rep = fd.rep
    lat = rep.lattice
    out = []
    for fg in fd.faces:
        for fh in fd.faces:
            p, q = nearest_translate(lat, fh.sphere.center, fg.sphere.center)
            reach = fg.sphere.radius + fh.sphere.radius
            for pp, qq in offsets_reaching(lat, fg.sphere.center,
                                           fh.sphere.center, reach):
                trans = fg.sphere.translated(lat.vec(pp, qq), pp, qq) if (pp or qq) else fg.sphere
                if trans.same_sphere(fh.sphere):
                    continue
                rel = sphere_relation(trans, fh.sphere)
                if rel in (SphereRelation.TWO_POINT,
                           SphereRelation.EXTERNALLY_TANGENT,
                           SphereRelation.INTERNALLY_TANGENT):
                    out.append({"pair": (fg.word.to_string(), fh.word.to_string()),
                                "offset": (pp, qq), "nearest": (p, q),
                                "window": (pp - p, qq - q)})
    return out
