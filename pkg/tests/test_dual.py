from dataclasses import replace

import fordbody as fb
from fordbody.dual import (TunnelCertification, build_dual, core_tunnel_status)
from fordbody.engine import WORD_GAMMA

from conftest import rep_at_t


def test_simple_dual_counts(fd_simple):
    dual = build_dual(fd_simple)
    assert dual.counts() == (1, 0, 0)
    assert set(dual.dual_edges[0].words) == {"g", "G"}


def test_bumping_dual_triangle(fd_bumping):
    dual = build_dual(fd_bumping)
    assert dual.counts() == (2, 1, 0)
    face = dual.dual_faces[0]
    # both boundary slots of the dual 2-cell lie on the same dual edge
    assert face.edge_slots[0] == face.edge_slots[1]
    assert face.arc_count == 3


def test_sliding_dual_tetrahedron(fd_sliding):
    dual = build_dual(fd_sliding)
    edges, faces, cells = dual.counts()
    assert edges == 3 and cells == 1
    cell = dual.dual_cells[0]
    assert cell.ideal_vertex_count == 4
    # among the vertical slots at the vertex, one dual face repeats: the
    # identified pair of the tetrahedron
    mult = dual.identifications["cell_face_multiplicity"][0]
    assert max(mult.values()) == 2


def test_counts_match_domain_classes(corpus):
    for fd in corpus[::7]:
        dual = build_dual(fd)
        pairs = set()
        for f in fd.faces:
            inv, _ = f.word.inverse().face_class()
            pairs.add(min(f.word.sort_key(), inv.sort_key()))
        assert len(dual.dual_edges) == len(pairs)
        assert len(dual.dual_faces) == len(fd.edges)
        assert len(dual.dual_cells) == len(fd.vertices)


def test_dual_face_slots_name_owner_pairs(corpus):
    for fd in corpus[::11]:
        dual = build_dual(fd)
        for face in dual.dual_faces:
            rec = fd.edges[face.edge_class].rep_arc
            for slot, sphere in zip(face.edge_slots, (rec.s1, rec.s2)):
                assert sphere.word.to_string() in dual.dual_edges[slot].words \
                    or sphere.word.inverse().face_class()[0].to_string() \
                    in dual.dual_edges[slot].words


def test_tunnel_status_reference_structures(fd_simple, fd_bumping, fd_sliding):
    for fd in (fd_simple, fd_bumping, fd_sliding):
        status = core_tunnel_status(fd)
        assert status.gamma_visible
        assert status.certification == TunnelCertification.DUAL_CERTIFIED


def test_tunnel_homotopic_only_without_gamma(fd_bumping):
    pruned = [f for f in fd_bumping.faces
              if f.word not in (WORD_GAMMA, WORD_GAMMA.inverse())]
    fd = replace(fd_bumping, faces=pruned)
    status = core_tunnel_status(fd)
    assert not status.gamma_visible
    assert status.certification == TunnelCertification.HOMOTOPIC_ONLY


def test_certification_monotone_under_adding_faces(fd_bumping):
    # enlarging the face set never revokes the certificate
    assert core_tunnel_status(fd_bumping).certification \
        == TunnelCertification.DUAL_CERTIFIED
    bigger = replace(fd_bumping,
                     faces=fd_bumping.faces
                     + [f for f in fb.run_procedure(rep_at_t(0.8)).faces
                        if f.word.to_string() == "ggg"])
    assert core_tunnel_status(bigger).certification \
        == TunnelCertification.DUAL_CERTIFIED
