"""Moebius maps on the upper half space, group words, and isometric spheres.

Matrices are kept in PSL(2,C): determinant normalized to 1 on construction,
and the {M, -M} ambiguity resolved by a fixed sign rule so that two maps are
equal iff their entries are entrywise equal (up to tolerance).

Group words live in (Z x Z) * Z with lattice generators ``a``/``b`` and a
tunnel generator ``g``; capital letters denote inverses in string form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from .errors import FixesInfinity

EPS_DET = 1e-12   # relative, determinant normalization
EPS_GEOM = 1e-9   # absolute, geometric comparisons


class _Infinity:
    """Tagged point at infinity on the boundary sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


# ---------------------------------------------------------------------------
# Group words
# ---------------------------------------------------------------------------

# Block encodings: ("T", k) is the k-th power of the tunnel generator,
# ("L", p, q) is the commuting lattice block a^p b^q.
Block = Tuple


def _merge(b1: Block, b2: Block) -> Block | None:
    """Merge two adjacent blocks of the same kind; None if they cancel."""
    if b1[0] == "T":
        k = b1[1] + b2[1]
        return ("T", k) if k else None
    p, q = b1[1] + b2[1], b1[2] + b2[2]
    return ("L", p, q) if (p or q) else None


@dataclass(frozen=True)
class GroupWord:
    """Freely reduced word with alternating tunnel and lattice blocks."""

    blocks: Tuple[Block, ...] = ()

    def __post_init__(self):
        prev = None
        for blk in self.blocks:
            if blk[0] == "T" and blk[1] == 0:
                raise ValueError("zero tunnel block")
            if blk[0] == "L" and blk[1] == 0 and blk[2] == 0:
                raise ValueError("zero lattice block")
            if prev is not None and prev == blk[0]:
                raise ValueError("adjacent blocks of equal kind")
            prev = blk[0]

    @staticmethod
    def identity() -> "GroupWord":
        return GroupWord(())

    @staticmethod
    def tunnel(k: int = 1) -> "GroupWord":
        return GroupWord((("T", k),)) if k else GroupWord(())

    @staticmethod
    def lattice(p: int, q: int = 0) -> "GroupWord":
        return GroupWord((("L", p, q),)) if (p or q) else GroupWord(())

    def is_identity(self) -> bool:
        return not self.blocks

    def is_lattice(self) -> bool:
        """True for pure cusp-subgroup words (including the identity)."""
        return all(blk[0] == "L" for blk in self.blocks)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        stack = list(self.blocks)
        for blk in other.blocks:
            if stack and stack[-1][0] == blk[0]:
                merged = _merge(stack.pop(), blk)
                if merged is not None:
                    stack.append(merged)
            else:
                stack.append(blk)
        return GroupWord(tuple(stack))

    def inverse(self) -> "GroupWord":
        inv = []
        for blk in reversed(self.blocks):
            if blk[0] == "T":
                inv.append(("T", -blk[1]))
            else:
                inv.append(("L", -blk[1], -blk[2]))
        return GroupWord(tuple(inv))

    def weight(self) -> int:
        """Sum of |exponents| over all blocks."""
        total = 0
        for blk in self.blocks:
            if blk[0] == "T":
                total += abs(blk[1])
            else:
                total += abs(blk[1]) + abs(blk[2])
        return total

    def class_parts(self) -> Tuple["GroupWord", Tuple[int, int], Tuple[int, int]]:
        """Split off leading/trailing lattice blocks.

        Returns (core, leading (p,q), trailing (p,q)).  Left cusp factors do
        not move an isometric sphere; a right factor a^p b^q translates it by
        -(p*a + q*b).  Pure lattice words return an identity core.
        """
        blocks = list(self.blocks)
        lead = (0, 0)
        trail = (0, 0)
        if blocks and blocks[0][0] == "L":
            lead = (blocks[0][1], blocks[0][2])
            blocks = blocks[1:]
        if blocks and blocks[-1][0] == "L":
            trail = (blocks[-1][1], blocks[-1][2])
            blocks = blocks[:-1]
        return GroupWord(tuple(blocks)), lead, trail

    def face_class(self) -> Tuple["GroupWord", Tuple[int, int]]:
        """Canonical face-class word plus translate offset of this element.

        Elements w0*g*w1 (w0, w1 in the cusp subgroup) all draw translates of
        one sphere; the class label is g and the offset of this particular
        element's sphere is (-p, -q) for trailing block a^p b^q.
        """
        core, _lead, (p, q) = self.class_parts()
        return core, (-p, -q)

    def to_string(self) -> str:
        out = []
        for blk in self.blocks:
            if blk[0] == "T":
                out.append(("g" if blk[1] > 0 else "G") * abs(blk[1]))
            else:
                out.append(("a" if blk[1] > 0 else "A") * abs(blk[1]))
                out.append(("b" if blk[2] > 0 else "B") * abs(blk[2]))
        return "".join(out)

    @staticmethod
    def from_string(text: str) -> "GroupWord":
        word = GroupWord(())
        steps = {
            "g": GroupWord.tunnel(1),
            "G": GroupWord.tunnel(-1),
            "a": GroupWord.lattice(1, 0),
            "A": GroupWord.lattice(-1, 0),
            "b": GroupWord.lattice(0, 1),
            "B": GroupWord.lattice(0, -1),
        }
        for ch in text:
            if ch not in steps:
                raise ValueError(f"unknown generator letter {ch!r}")
            word = word * steps[ch]
        return word

    def sort_key(self):
        return (self.weight(), self.to_string())

    def __str__(self):
        return self.to_string() or "1"


WORD_ID = GroupWord.identity()
WORD_G = GroupWord.tunnel(1)
WORD_GINV = GroupWord.tunnel(-1)


# ---------------------------------------------------------------------------
# Moebius maps
# ---------------------------------------------------------------------------

class MapClass(Enum):
    IDENTITY = "identity"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    LOXODROMIC = "loxodromic"


def _canonical_sign(a, b, c, d):
    """Pick the representative of {M, -M} by the first big entry's argument."""
    for z in (a, b, c, d):
        if abs(z) > EPS_GEOM:
            ang = cmath.phase(z)
            if not (-math.pi / 2 < ang <= math.pi / 2):
                return -a, -b, -c, -d
            return a, b, c, d
    return a, b, c, d


@dataclass(frozen=True)
class MoebiusMap:
    """Determinant-1 matrix modulo sign, tagged with its group word."""

    a: complex
    b: complex
    c: complex
    d: complex
    word: GroupWord = WORD_ID

    @staticmethod
    def from_matrix(a, b, c, d, word: GroupWord = WORD_ID) -> "MoebiusMap":
        det = a * d - b * c
        if abs(det) < EPS_DET:
            raise ValueError("singular matrix")
        s = cmath.sqrt(det)
        a, b, c, d = a / s, b / s, c / s, d / s
        a, b, c, d = _canonical_sign(a, b, c, d)
        return MoebiusMap(a, b, c, d, word)

    @staticmethod
    def identity() -> "MoebiusMap":
        return MoebiusMap(1.0, 0.0, 0.0, 1.0, WORD_ID)

    @staticmethod
    def translation(t: complex, word: GroupWord = WORD_ID) -> "MoebiusMap":
        return MoebiusMap(1.0, complex(t), 0.0, 1.0, word)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def inverse(self) -> "MoebiusMap":
        a, b, c, d = _canonical_sign(self.d, -self.b, -self.c, self.a)
        return MoebiusMap(a, b, c, d, self.word.inverse())

    def trace(self) -> complex:
        return self.a + self.d

    def apply(self, z):
        """Boundary action on C union {INFINITY}."""
        if z is INFINITY:
            if abs(self.c) <= EPS_GEOM:
                return INFINITY
            return self.a / self.c
        w = self.c * z + self.d
        if abs(w) <= EPS_GEOM:
            return INFINITY
        return (self.a * z + self.b) / w

    def apply_h3(self, z: complex, t: float):
        """Isometric action on an interior point (z, t), t > 0."""
        w = self.c * z + self.d
        denom = abs(w) ** 2 + (abs(self.c) * t) ** 2
        z_new = ((self.a * z + self.b) * w.conjugate()
                 + self.a * self.c.conjugate() * t * t) / denom
        return z_new, t / denom

    def distance_to(self, other: "MoebiusMap") -> float:
        """Entrywise distance modulo sign."""
        plus = max(abs(x - y) for x, y in zip(self.entries(), other.entries()))
        minus = max(abs(x + y) for x, y in zip(self.entries(), other.entries()))
        return min(plus, minus)

    def is_identity(self, eps: float = EPS_GEOM) -> bool:
        return self.distance_to(MoebiusMap.identity()) <= eps


def compose(m1: MoebiusMap, m2: MoebiusMap) -> MoebiusMap:
    """Matrix product m1*m2 (apply m2 first), words concatenated and reduced."""
    a = m1.a * m2.a + m1.b * m2.c
    b = m1.a * m2.b + m1.b * m2.d
    c = m1.c * m2.a + m1.d * m2.c
    d = m1.c * m2.b + m1.d * m2.d
    return MoebiusMap.from_matrix(a, b, c, d, m1.word * m2.word)


def classify(m: MoebiusMap, eps: float = EPS_GEOM) -> MapClass:
    if m.is_identity(eps):
        return MapClass.IDENTITY
    tr2 = m.trace() ** 2
    if abs(tr2 - 4.0) <= eps:
        return MapClass.PARABOLIC
    if abs(tr2.imag) <= eps and -eps <= tr2.real < 4.0:
        return MapClass.ELLIPTIC
    return MapClass.LOXODROMIC


# ---------------------------------------------------------------------------
# Isometric spheres
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IsoSphere:
    """Euclidean hemisphere over C: boundary circle center, radius, owner."""

    center: complex
    radius: float
    word: GroupWord = WORD_ID
    lattice_offset: Tuple[int, int] = (0, 0)

    def height_sq(self, z: complex) -> float:
        """Squared height of the hemisphere over z (negative outside the disk)."""
        dz = z - self.center
        return self.radius ** 2 - (dz.real ** 2 + dz.imag ** 2)

    def power(self, z: complex) -> float:
        """Power of z with respect to the boundary circle."""
        dz = z - self.center
        return dz.real ** 2 + dz.imag ** 2 - self.radius ** 2

    def contains_boundary_point(self, z: complex, eps: float = EPS_GEOM) -> bool:
        return abs(z - self.center) < self.radius - eps

    def same_sphere(self, other: "IsoSphere", eps: float = EPS_GEOM) -> bool:
        return (abs(self.center - other.center) <= eps
                and abs(self.radius - other.radius) <= eps)

    def translated(self, vec: complex, dp: int, dq: int) -> "IsoSphere":
        p, q = self.lattice_offset
        return IsoSphere(self.center + vec, self.radius, self.word, (p + dp, q + dq))


def isometric_sphere(m: MoebiusMap) -> IsoSphere:
    """Hemisphere of points equidistant from the cusp horoball and its pullback.

    Centered at m^{-1}(infinity) = -d/c with radius 1/|c|; undefined for cusp
    elements (|c| ~ 0), which fix infinity.
    """
    if abs(m.c) <= EPS_GEOM:
        raise FixesInfinity(f"element {m.word} fixes infinity")
    return IsoSphere(-m.d / m.c, 1.0 / abs(m.c), m.word)


def sphere_of_word(word: GroupWord, matrix_for) -> IsoSphere:
    """Sphere of a group word given a word -> MoebiusMap evaluator."""
    return isometric_sphere(matrix_for(word))
