"""Geometric dual of the Ford spine and the core-tunnel certificate.

Dual edges are the vertical geodesics through sphere centers, one per glued
face pair; dual faces join the two dual edges of an edge class; dual cells
sit over the vertices.  The tunnel certificate is combinatorial: the face of
the tunnel generator stays visible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Tuple

from .engine import WORD_GAMMA, FordDomain
from .moebius import GroupWord


class TunnelCertification(Enum):
    DUAL_CERTIFIED = "dual_certified"
    HOMOTOPIC_ONLY = "homotopic_only"


@dataclass(frozen=True)
class TunnelStatus:
    gamma_visible: bool
    certification: TunnelCertification


@dataclass(frozen=True)
class DualEdge:
    """Vertical geodesic dual to one glued face pair."""

    words: Tuple[str, ...]
    center: complex


@dataclass(frozen=True)
class DualFace:
    """Dual 2-cell of an edge class; slots name its two bounding dual edges.

    Both slots can reference the same dual edge: that happens when the edge
    class's representative arc lies on a face and its own inverse.
    """

    edge_class: int
    edge_slots: Tuple[int, int]
    arc_count: int


@dataclass(frozen=True)
class DualCell:
    """Dual 3-cell over one vertex class of the domain."""

    vertex_class: int
    incident_faces: Tuple[int, ...]
    ideal_vertex_count: int


@dataclass
class DualComplex:
    dual_edges: List[DualEdge]
    dual_faces: List[DualFace]
    dual_cells: List[DualCell]
    identifications: Dict[str, object] = field(default_factory=dict)

    def counts(self) -> Tuple[int, int, int]:
        return (len(self.dual_edges), len(self.dual_faces), len(self.dual_cells))


def _pair_key(word: GroupWord) -> Tuple:
    inv_core, _ = word.inverse().face_class()
    return min(word.sort_key(), inv_core.sort_key())


def build_dual(fd: FordDomain) -> DualComplex:
    """Dual edges per face pair, dual faces per edge class, cells per vertex
    class, with the gluing multiplicities read off the computed classes."""
    pair_index: Dict[Tuple, int] = {}
    dual_edges: List[DualEdge] = []
    for f in sorted(fd.faces, key=lambda f: f.key()):
        key = _pair_key(f.word)
        if key in pair_index:
            continue
        inv_core, _ = f.word.inverse().face_class()
        words = tuple(sorted({f.word.to_string(), inv_core.to_string()}))
        pair_index[key] = len(dual_edges)
        dual_edges.append(DualEdge(words, f.sphere.center))

    word_to_edge = {}
    for f in fd.faces:
        word_to_edge[f.word] = pair_index[_pair_key(f.word)]

    dual_faces: List[DualFace] = []
    for i, e in enumerate(fd.edges):
        rec = e.rep_arc
        slots = (word_to_edge[rec.s1.word], word_to_edge[rec.s2.word])
        dual_faces.append(DualFace(i, slots, len(e.arcs)))

    # map an unordered sphere-pair key to its edge class index
    from .engine import arc_key
    key_to_class: Dict[Tuple, int] = {}
    for i, e in enumerate(fd.edges):
        for rec in e.arcs:
            key_to_class[rec.key] = i

    dual_cells: List[DualCell] = []
    for vi, vc in enumerate(fd.vertices):
        member = vc.members[0]
        incident: List[int] = []
        inc = list(member.incident)
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                k = arc_key(inc[a][0], inc[a][1], inc[b][0], inc[b][1])
                if k in key_to_class:
                    incident.append(key_to_class[k])
        dual_cells.append(DualCell(vi, tuple(sorted(incident)),
                                   len(member.incident) + 1))

    identifications = {
        "face_arc_multiplicity": {i: len(e.arcs) for i, e in enumerate(fd.edges)},
        "cell_face_multiplicity": [
            {f: c.incident_faces.count(f) for f in sorted(set(c.incident_faces))}
            for c in dual_cells
        ],
        "edge_pairings": {i: de.words for i, de in enumerate(dual_edges)},
    }
    return DualComplex(dual_edges, dual_faces, dual_cells, identifications)


def core_tunnel_status(fd: FordDomain) -> TunnelStatus:
    """Dual-certified when the tunnel generator's face (or its inverse) is
    among the visible faces; otherwise only the homotopy statement holds."""
    words = fd.face_words()
    visible = WORD_GAMMA in words or WORD_GAMMA.inverse() in words
    cert = (TunnelCertification.DUAL_CERTIFIED if visible
            else TunnelCertification.HOMOTOPIC_ONLY)
    return TunnelStatus(visible, cert)
