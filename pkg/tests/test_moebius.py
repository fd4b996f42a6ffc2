import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import fordbody as fb
from fordbody.moebius import (GroupWord, INFINITY, MapClass, MoebiusMap,
                              classify, compose, isometric_sphere)

from conftest import mat_of, rep_simple


def gamma_matrix(c):
    return MoebiusMap.from_matrix(c, -1, 1, 0, GroupWord.tunnel(1))


# ---------------------------------------------------------------------------
# compose
# ---------------------------------------------------------------------------

def test_compose_inverse_pair_is_identity():
    g = gamma_matrix(-1 + 2j)
    assert compose(g, g.inverse()).is_identity()
    assert compose(g, g.inverse()).word.is_identity()


def test_compose_parabolic_translations_add():
    a = MoebiusMap.translation(3 + 1j)
    b = MoebiusMap.translation(-1 + 0.5j)
    ab = compose(a, b)
    assert abs(ab.b - (2 + 1.5j)) < 1e-15
    assert abs(ab.a - 1) < 1e-15 and abs(ab.c) < 1e-15


def test_compose_gamma_squared_matches_direct_product():
    g = gamma_matrix(-1 + 2j)
    gg = compose(g, g)
    # direct matrix-multiplication oracle
    m = mat_of(g) @ mat_of(g)
    expected = np.array([[-4 - 4j, 1 - 2j], [-1 + 2j, -1]])
    assert np.allclose(m, expected)
    # equal in PSL(2,C); the sign rule flips the leading -4-4i representative
    assert (np.allclose(mat_of(gg), expected)
            or np.allclose(mat_of(gg), -expected))
    assert gg.word == GroupWord.tunnel(2)


@settings(max_examples=200, deadline=None)
@given(st.integers(-8, 8), st.integers(-8, 8))
def test_compose_word_reduction(k1, k2):
    w = GroupWord.tunnel(k1) * GroupWord.tunnel(k2)
    if k1 + k2 == 0:
        assert w.is_identity()
    else:
        assert w.blocks == (("T", k1 + k2),)


# ---------------------------------------------------------------------------
# isometric spheres
# ---------------------------------------------------------------------------

def test_sphere_of_gamma_center_zero_radius_one():
    s = isometric_sphere(gamma_matrix(2 + 1j))
    assert abs(s.center) < 1e-15
    assert abs(s.radius - 1.0) < 1e-15


def test_sphere_of_gamma_inverse_center_c():
    g = gamma_matrix(2 + 1j)
    s = isometric_sphere(g.inverse())
    assert abs(s.center - (2 + 1j)) < 1e-15
    assert abs(s.radius - 1.0) < 1e-15


def test_parabolic_fixing_infinity_has_no_sphere():
    with pytest.raises(fb.FixesInfinity):
        isometric_sphere(MoebiusMap.translation(6 + 2j))


def test_inverse_sphere_center_is_image_of_infinity():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a, b, c = (complex(*rng.normal(size=2)) for _ in range(3))
        if abs(c) < 0.1:
            continue
        d = (1 + b * c) / a if abs(a) > 0.1 else None
        if d is None:
            continue
        m = MoebiusMap.from_matrix(a, b, c, d)
        s_inv = isometric_sphere(m.inverse())
        assert abs(s_inv.center - m.apply(INFINITY)) < 1e-10
        assert abs(s_inv.radius - isometric_sphere(m).radius) < 1e-10


def test_map_carries_own_sphere_to_inverse_sphere():
    # sampled hemisphere points of I(g) land on I(g^-1) under g
    g = gamma_matrix(-1 + 1.2j)
    s = isometric_sphere(g)
    s_inv = isometric_sphere(g.inverse())
    for theta in np.linspace(0, 2 * math.pi, 17, endpoint=False):
        for phi in (0.2, 0.7, 1.3):
            z = s.center + s.radius * math.sin(phi) * cmath.exp(1j * theta)
            h = s.radius * math.cos(phi)
            z2, h2 = g.apply_h3(z, h)
            dist = abs(z2 - s_inv.center) ** 2 + h2 ** 2
            assert abs(dist - s_inv.radius ** 2) < 10 * fb.EPS_GEOM


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def test_classify_examples():
    assert classify(MoebiusMap.translation(5 + 1j)) == MapClass.PARABOLIC
    assert classify(gamma_matrix(2 + 1j)) == MapClass.LOXODROMIC
    assert classify(MoebiusMap.from_matrix(0, -1, 1, 0)) == MapClass.ELLIPTIC
    assert classify(MoebiusMap.identity()) == MapClass.IDENTITY


def test_classify_boundary_trace():
    assert classify(gamma_matrix(2.0)) == MapClass.PARABOLIC
    assert classify(gamma_matrix(1.5)) == MapClass.ELLIPTIC
    assert classify(gamma_matrix(2.5)) == MapClass.LOXODROMIC
    assert classify(gamma_matrix(1.5j)) == MapClass.LOXODROMIC


# ---------------------------------------------------------------------------
# words and evaluation
# ---------------------------------------------------------------------------

def test_evaluate_empty_word_is_identity():
    rep = rep_simple()
    assert fb.evaluate_word(GroupWord.identity(), rep).is_identity()


def test_evaluate_gamma_squared_matches_matrix_oracle():
    rep = fb.Representation.from_standard(5 + 1j, 5.5j, -1 + 2j)
    m = fb.evaluate_word(GroupWord.from_string("gg"), rep)
    expected = np.array([[-4 - 4j, 1 - 2j], [-1 + 2j, -1]])
    assert (np.allclose(mat_of(m), expected)
            or np.allclose(mat_of(m), -expected))


def test_evaluate_mixed_word_matches_matrix_oracle():
    rep = rep_simple()
    m = fb.evaluate_word(GroupWord.from_string("aBg"), rep)
    oracle = mat_of(rep.alpha) @ np.linalg.inv(mat_of(rep.beta)) @ mat_of(rep.gamma)
    oracle /= np.sqrt(np.linalg.det(oracle))
    got = mat_of(m)
    assert (np.allclose(got, oracle, atol=1e-12)
            or np.allclose(got, -oracle, atol=1e-12))


word_strategy = st.lists(
    st.sampled_from(list("gGaAbB")), min_size=0, max_size=6
).map(lambda cs: GroupWord.from_string("".join(cs)))


@settings(max_examples=300, deadline=None)
@given(word_strategy, word_strategy)
def test_evaluate_respects_concatenation(w1, w2):
    # modest entries keep the matrix conditioning far from the tolerance
    rep = fb.Representation.from_standard(0.9 + 0.2j, 0.85j, -1 + 1.05j)
    lhs = fb.evaluate_word(w1 * w2, rep)
    rhs = compose(fb.evaluate_word(w1, rep), fb.evaluate_word(w2, rep))
    scale = max(abs(e) for e in lhs.entries())
    assert lhs.distance_to(rhs) < 1e-9 * (1.0 + scale)


@settings(max_examples=300, deadline=None)
@given(word_strategy)
def test_word_string_round_trip(w):
    assert GroupWord.from_string(w.to_string()) == w


@settings(max_examples=300, deadline=None)
@given(word_strategy)
def test_word_inverse_cancels(w):
    assert (w * w.inverse()).is_identity()
    rep = fb.Representation.from_standard(5 + 1j, 5.5j, -1 + 1.4j)
    m = fb.evaluate_word(w, rep)
    assert compose(m, m.inverse()).is_identity()


def test_face_class_strips_lattice_affixes():
    w = GroupWord.from_string("abgggAB")
    core, offset = w.face_class()
    assert core == GroupWord.from_string("ggg")
    assert offset == (1, 1)  # trailing a^-1 b^-1 translates by +a+b


def test_sign_canonicalization_entrywise_comparable():
    m1 = MoebiusMap.from_matrix(-2 - 1j, 1, -1, 0)
    m2 = MoebiusMap.from_matrix(2 + 1j, -1, 1, 0)
    assert m1.distance_to(m2) < 1e-15
    assert max(abs(x - y) for x, y in zip(m1.entries(), m2.entries())) < 1e-15
