"""Explicit octahedron-based conflict collection.

Members are indexed by compositions of n-6 into 8 non-negative parts, one
part per octahedron face.  The selected subset of compositions is the first
n(n-1)...(n-5)+1 of them in lexicographic order, accessed lazily by index via
combinatorial unranking: at n = 5040 the collection has about 1.6e22 members
and is never materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .triangulations import FacedTriangulation, octahedron, stack_into_faced

PARTS = 8
MIN_N = 5040  # 7!; below this the collection outgrows the composition count


def falling_factorial(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1)."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


@dataclass(frozen=True)
class Composition8:
    """Ordered split of n-6 into 8 non-negative parts, one per octahedron face."""

    n: int
    parts: tuple

    def __post_init__(self):
        if len(self.parts) != PARTS:
            raise ValueError(f"need exactly {PARTS} parts")
        if any(p < 0 for p in self.parts):
            raise ValueError("parts must be non-negative")
        if sum(self.parts) != self.n - 6:
            raise ValueError(f"parts must sum to n-6 = {self.n - 6}, got {sum(self.parts)}")


def count_compositions(n: int) -> int:
    """Number of ways to split n-6 into 8 ordered non-negative parts: C(n+1, 7)."""
    if n < 6:
        raise ValueError("need n >= 6")
    return math.comb(n + 1, 7)


def collection_size(n: int, override_small: bool = False) -> int:
    """Size of the conflict collection: n(n-1)(n-2)(n-3)(n-4)(n-5) + 1.

    Guarded to n >= 5040, where the composition pool provably exceeds this
    size; override_small unlocks desk-scale property testing (the full
    collection is then NOT constructible, only individual members are).
    """
    if n < MIN_N and not override_small:
        raise ValueError(f"collection is defined for n >= 7! = {MIN_N}; "
                         "pass override_small=True for desk-scale experiments")
    return falling_factorial(n, 6) + 1


def composition_at(n: int, idx: int, override_small: bool = False) -> Composition8:
    """idx-th composition of n-6 into 8 parts, lexicographic in (n1,...,n8).

    The selected composition subset is exactly the indices
    0 .. n(n-1)...(n-5), so this doubles as indexed collection access.
    """
    if idx < 0:
        raise ValueError("index must be non-negative")
    if idx >= collection_size(n, override_small=override_small):
        raise ValueError(f"index {idx} outside the collection at n={n}")
    total = count_compositions(n)
    if idx >= total:
        raise ValueError(f"index {idx} exceeds the {total} compositions at n={n}")

    remaining = n - 6
    parts = []
    r = idx
    for pos in range(PARTS - 1):
        slots = PARTS - pos - 1
        v = 0
        while True:
            block = math.comb(remaining - v + slots - 1, slots - 1)
            if r < block:
                break
            r -= block
            v += 1
        parts.append(v)
        remaining -= v
    parts.append(remaining)
    return Composition8(n, tuple(parts))


def composition_rank(comp: Composition8) -> int:
    """Inverse of composition_at: lexicographic rank among compositions of n-6."""
    remaining = comp.n - 6
    rank = 0
    for pos in range(PARTS - 1):
        slots = PARTS - pos - 1
        v = comp.parts[pos]
        for smaller in range(v):
            rank += math.comb(remaining - smaller + slots - 1, slots - 1)
        remaining -= v
    return rank


def build_member(n: int, comp: Composition8) -> FacedTriangulation:
    """Triangulation for a composition: octahedron plus fans in each face.

    Face i of the octahedron receives parts[i] new vertices: the first is
    stacked into the face itself, every later one into (q, a, b) where q is
    the previously inserted vertex and a, b are the two lowest labels of the
    face q went into.  New labels run 7, 8, ... in face order.
    """
    if comp.n != n:
        raise ValueError(f"composition is for n={comp.n}, not {n}")
    T = octahedron()
    for face, count in zip(T.faces, comp.parts):
        if count == 0:
            continue
        a, b = sorted(face)[:2]
        target = face
        for _ in range(count):
            new_label = T.n + 1
            T = stack_into_faced(T, target)
            target = (new_label, a, b)
    return T


def conflict_collection_member(
    n: int, idx: int, override_small: bool = False
) -> FacedTriangulation:
    """Lazy indexed access to the collection: member for the idx-th composition."""
    return build_member(n, composition_at(n, idx, override_small=override_small))


def iter_members(
    n: int, start: int, stop: int, override_small: bool = False
) -> Iterator[FacedTriangulation]:
    """Members for indices start..stop-1, generated one at a time."""
    for idx in range(start, stop):
        yield conflict_collection_member(n, idx, override_small=override_small)


def contains_labelled_octahedron(T: FacedTriangulation) -> bool:
    """True iff the induced subgraph on labels 1..6 is exactly the octahedron."""
    induced = {e for e in T.edges if e[0] <= 6 and e[1] <= 6}
    return induced == set(octahedron().edges)
