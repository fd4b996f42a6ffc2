import math

import pytest
from hypothesis import given, settings, strategies as st

import fordbody as fb
from fordbody.lattice import (Rectangle, min_translation_length,
                              nearest_translate, neighbor_offsets, reduce,
                              translates_in_window)
from fordbody.moebius import GroupWord, IsoSphere


def brute_shortest(a, b, bound=5):
    """All nonzero lattice vectors p*a+q*b with |p|,|q| <= bound, by length."""
    vs = [(abs(p * a + q * b), p, q) for p in range(-bound, bound + 1)
          for q in range(-bound, bound + 1) if (p, q) != (0, 0)]
    return sorted(vs)


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

def test_reduce_square_like_example():
    lat = reduce(1, 1 + 1j)
    assert abs(lat.a - 1) < 1e-12
    assert abs(lat.b - 1j) < 1e-12
    # brute-force optimality of both lengths
    lengths = brute_shortest(1, 1 + 1j)
    assert abs(abs(lat.a) - lengths[0][0]) < 1e-12


def test_reduce_already_reduced_unchanged():
    lat = reduce(1, 2j)
    assert abs(lat.a - 1) < 1e-12 and abs(lat.b - 2j) < 1e-12


def test_reduce_reorders_simple_preset():
    lat = reduce(6 + 2j, 4.5j)
    assert abs(lat.a - 4.5j) < 1e-12
    assert abs(lat.b - (6 + 2j)) < 1e-12


def test_reduce_rejects_dependent():
    with pytest.raises(fb.DegenerateLattice):
        reduce(1 + 1j, -2 - 2j)


complex_st = st.builds(complex,
                       st.floats(-8, 8, allow_nan=False, allow_infinity=False),
                       st.floats(-8, 8, allow_nan=False, allow_infinity=False))


@settings(max_examples=1000, deadline=None)
@given(complex_st, complex_st)
def test_reduce_optimal_and_unimodular(a, b):
    cross = a.real * b.imag - a.imag * b.real
    if abs(cross) < 1e-3 or abs(a) < 1e-2 or abs(b) < 1e-2:
        return
    lat = reduce(a, b)
    (u11, u12), (u21, u22) = lat.basis_change
    # recorded change of basis is integer unimodular and reproduces the output
    assert u11 * u22 - u12 * u21 in (-1, 1)
    assert abs(u11 * a + u12 * b - lat.a) < 1e-9 * (1 + abs(lat.a))
    assert abs(u21 * a + u22 * b - lat.b) < 1e-9 * (1 + abs(lat.b))
    lengths = brute_shortest(a, b)
    assert abs(lat.a) <= lengths[0][0] + 1e-9 * (1 + lengths[0][0])
    # second vector: shortest independent of the first
    indep = [L for L, p, q in lengths
             if abs((p * a + q * b).real * lat.a.imag
                    - (p * a + q * b).imag * lat.a.real) > 1e-9 * abs(lat.a)]
    assert abs(lat.b) <= indep[0] + 1e-9 * (1 + indep[0])
    assert abs(lat.a) <= abs(lat.b) + 1e-12


# ---------------------------------------------------------------------------
# nearest translate
# ---------------------------------------------------------------------------

def test_nearest_exact_lattice_point():
    lat = reduce(5 + 1j, 5.5j)
    target = 0.3 + 0.2j + lat.a + lat.b
    assert nearest_translate(lat, target, 0.3 + 0.2j) == (1, 1)


def test_nearest_example_origin():
    lat = reduce(5 + 1j, 5.5j)
    assert nearest_translate(lat, -1 + 1.2j, 0) == (0, 0)


def test_nearest_tie_breaks_lexicographically():
    lat = reduce(2, 2j)
    assert nearest_translate(lat, 1, 0) == (0, 0)


@settings(max_examples=1000, deadline=None)
@given(complex_st, complex_st, complex_st)
def test_nearest_beats_neighborhood(a, b, target):
    cross = a.real * b.imag - a.imag * b.real
    if abs(cross) < 1e-2 or abs(a) < 0.05 or abs(b) < 0.05:
        return
    lat = reduce(a, b)
    p, q = nearest_translate(lat, target, 0)
    best = abs(target - lat.vec(p, q))
    for dp in range(-5, 6):
        for dq in range(-5, 6):
            assert best <= abs(target - lat.vec(p + dp, q + dq)) + 1e-9


# ---------------------------------------------------------------------------
# offsets window / translation length
# ---------------------------------------------------------------------------

def test_neighbor_offsets_window():
    offs = neighbor_offsets()
    assert len(offs) == 49
    assert (0, 0) in offs
    assert (-3, 3) in offs
    assert (4, 0) not in offs
    assert offs[0] == (-3, -3)
    assert offs == sorted(offs)  # row-major order


def test_min_translation_length_examples():
    assert abs(min_translation_length(reduce(1, 1j)) - 1.0) < 1e-12
    assert abs(min_translation_length(reduce(6 + 2j, 4.5j)) - 4.5) < 1e-12
    lat = reduce(5 + 1j, 5.5j)
    assert abs(min_translation_length(lat) - math.sqrt(26)) < 1e-12
    # brute force over |p|,|q| <= 5
    assert abs(min_translation_length(lat) - brute_shortest(5 + 1j, 5.5j)[0][0]) < 1e-12


@settings(max_examples=500, deadline=None)
@given(complex_st, complex_st)
def test_min_length_bounds_all_vectors(a, b):
    cross = a.real * b.imag - a.imag * b.real
    if abs(cross) < 1e-2 or abs(a) < 0.05 or abs(b) < 0.05:
        return
    lat = reduce(a, b)
    bound = min_translation_length(lat)
    for L, p, q in brute_shortest(a, b):
        assert bound <= L + 1e-9


# ---------------------------------------------------------------------------
# translates in window
# ---------------------------------------------------------------------------

def test_translates_include_origin_copy():
    lat = reduce(6 + 2j, 4.5j)
    s = IsoSphere(0, 1.0, GroupWord.tunnel(1))
    box = Rectangle(-1.0, -1.0, 1.0, 1.0)
    offsets = {t.lattice_offset for t in translates_in_window(lat, s, box)}
    assert (0, 0) in offsets


def test_translates_against_direct_enumeration():
    lat = reduce(6 + 2j, 4.5j)
    s = IsoSphere(0, 1.0, GroupWord.tunnel(1))
    win = Rectangle(-10, -10, 10, 10)
    got = {t.lattice_offset for t in translates_in_window(lat, s, win)}
    expected = set()
    for p in range(-8, 9):
        for q in range(-8, 9):
            c = s.center + lat.vec(p, q)
            dx = max(win.x0 - c.real, 0, c.real - win.x1)
            dy = max(win.y0 - c.imag, 0, c.imag - win.y1)
            if math.hypot(dx, dy) <= s.radius:
                expected.add((p, q))
    assert got == expected


def test_translates_empty_far_window():
    lat = reduce(6 + 2j, 4.5j)
    s = IsoSphere(0, 1.0, GroupWord.tunnel(1))
    win = Rectangle(2.5, 0.8, 3.2, 1.4)  # inside a lattice cell, off all disks
    assert translates_in_window(lat, s, win) == []
