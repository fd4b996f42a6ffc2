"""Shared fixtures: preset representations, a corpus of engine runs over a
parameter grid plus the example paths, and sampling-based oracles that stay
independent of the library's exact geometry path."""

from __future__ import annotations

import numpy as np
import pytest

import fordbody as fb
from fordbody.engine import Status
from fordbody.sweep import RepPath, constant_matrix

ALPHA_51 = constant_matrix(1, 5 + 1j, 0, 1)
BETA_55 = constant_matrix(1, 5.5j, 0, 1)
GAMMA_T = (((-1 + 0j, 1j), (-1 + 0j,)), ((1 + 0j,), (0j,)))


def rep_simple():
    return fb.Representation.from_standard(6 + 2j, 4.5j, 2 + 1j)


def rep_at_t(t: float):
    return fb.Representation.from_standard(5 + 1j, 5.5j, -1 + t * 1j)


def bumping_path(samples=64):
    return RepPath(2.0, 1.2, ALPHA_51, BETA_55, GAMMA_T, samples)


def sliding_path(samples=64):
    return RepPath(1.2, 0.8, ALPHA_51, BETA_55, GAMMA_T, samples)


def tunnel_path(samples=128):
    return RepPath(2.0, 0.8, ALPHA_51, BETA_55, GAMMA_T, samples)


@pytest.fixture(scope="session")
def fd_simple():
    return fb.run_procedure(rep_simple())


@pytest.fixture(scope="session")
def fd_bumping():
    return fb.run_procedure(rep_at_t(1.2))


@pytest.fixture(scope="session")
def fd_sliding():
    return fb.run_procedure(rep_at_t(0.8))


GRID_LATTICES = [(5 + 1j, 5.5j), (6 + 2j, 4.5j), (4.4 + 0.6j, 0.8 + 4.8j)]


@pytest.fixture(scope="session")
def corpus():
    """Terminated-and-verified domains across a parameter grid and the two
    example paths; the raw material for the property suites."""
    runs = []
    for a, b in GRID_LATTICES:
        for re in np.linspace(-1.8, 1.8, 20):
            for im in np.linspace(0.7, 1.85, 13):
                try:
                    rep = fb.Representation.from_standard(a, b, complex(re, im))
                except fb.FordBodyError:
                    continue
                fd = fb.run_procedure(rep)
                if fd.status == Status.TERMINATED and fd.poincare.passed:
                    runs.append(fd)
    for path, n in ((bumping_path(), 24), (sliding_path(), 24), (tunnel_path(), 48)):
        for t in path.sample_times(n):
            fd = fb.run_procedure(path.rep_at(t))
            if fd.status == Status.TERMINATED and fd.poincare.passed:
                runs.append(fd)
    return runs


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------

def window_translates(fd, sphere, reach=None):
    """All cusp translates of a face sphere within reach of a given sphere."""
    lat = fd.rep.lattice
    out = []
    for f in fd.faces:
        r = (reach if reach is not None
             else sphere.radius + f.sphere.radius)
        from fordbody.lattice import offsets_reaching
        for p, q in offsets_reaching(lat, f.sphere.center, sphere.center,
                                     r + f.sphere.radius):
            out.append(f.sphere.translated(lat.vec(p, q), p, q)
                       if (p or q) else f.sphere)
    return out


def sampling_visibility(sphere, others, n=192, margin=1e-9):
    """Grid-sampled visibility: fraction of hemisphere points strictly
    outside every other closed half-ball.  Independent of the half-plane
    clipping used by the library."""
    rs = np.sqrt(np.linspace(0.0, 1.0, n, endpoint=False) + 0.5 / n) * sphere.radius
    th = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    R, T = np.meshgrid(rs, th)
    X = sphere.center.real + R * np.cos(T)
    Y = sphere.center.imag + R * np.sin(T)
    H2 = sphere.radius ** 2 - (X - sphere.center.real) ** 2 - (Y - sphere.center.imag) ** 2
    escaped = np.ones(X.shape, dtype=bool)
    for k in others:
        if abs(k.center - sphere.center) <= 1e-12 and abs(k.radius - sphere.radius) <= 1e-12:
            continue
        inside = (X - k.center.real) ** 2 + (Y - k.center.imag) ** 2 + H2 <= k.radius ** 2 + margin
        escaped &= ~inside
    return escaped.mean()


def mat_of(m):
    return np.array([[m.a, m.b], [m.c, m.d]], dtype=complex)
