"""Shared test helpers: random point sets and crafted embeddable instances."""

from __future__ import annotations

import random

import pytest

from planarconflict.construction import Composition8, build_member
from planarconflict.embedding import has_label_preserving_embedding
from planarconflict.geom import (
    LabelledPointSet,
    Point,
    is_general_position,
    point_strictly_inside_triangle,
)
from planarconflict.triangulations import OCTAHEDRON_FACES, StackedTriangulation


def random_general_position(rng: random.Random, n: int, box: int = 10**6) -> LabelledPointSet:
    """Uniform integer points in a box, rejected until no triple is collinear."""
    while True:
        pts = set()
        while len(pts) < n:
            pts.add((rng.randrange(box), rng.randrange(box)))
        P = LabelledPointSet(sorted(pts))
        if n < 3 or is_general_position(P):
            return P


def draw_stacked(T: StackedTriangulation, rng: random.Random) -> LabelledPointSet:
    """Point set on which T embeds label-preservingly, built by drawing it.

    Chooses a K4 face that is never stacked as the outer triangle (so every
    stacked vertex lands in a bounded region) and places each stacked vertex
    at a jittered centroid of its face's drawn triangle.  Raises ValueError
    when all four K4 faces are stacked (caller should resample T).
    """
    stacked_k4_faces = {face for _, face in T.stacks if max(face) <= 4}
    candidates = [f for f in ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4))
                  if f not in stacked_k4_faces]
    if not candidates:
        raise ValueError("every K4 face is stacked; no safe outer face")
    outer = candidates[0]
    hub = next(v for v in (1, 2, 3, 4) if v not in outer)

    span = 3 ** (T.n + 2) * 60
    pos = {}
    pos[outer[0]] = Point(0, 0)
    pos[outer[1]] = Point(span, 0)
    pos[outer[2]] = Point(0, span)

    def jittered_interior(face) -> Point:
        a, b, c = (pos[v] for v in face)
        for _ in range(200):
            jx = rng.randrange(-span // 200, span // 200 + 1)
            jy = rng.randrange(-span // 200, span // 200 + 1)
            p = Point((a.x + b.x + c.x) // 3 + jx, (a.y + b.y + c.y) // 3 + jy)
            if not point_strictly_inside_triangle(p, a, b, c):
                continue
            if any(q == p for q in pos.values()):
                continue
            placed = list(pos.values())
            collinear = any(
                (q2.x - q1.x) * (p.y - q1.y) == (q2.y - q1.y) * (p.x - q1.x)
                for i, q1 in enumerate(placed)
                for q2 in placed[i + 1:]
            )
            if not collinear:
                return p
        raise RuntimeError("could not jitter an interior point into place")

    pos[hub] = jittered_interior(outer)
    for v, face in T.stacks:
        pos[v] = jittered_interior(face)

    P = LabelledPointSet(pos[v] for v in range(1, T.n + 1))
    assert is_general_position(P)
    assert has_label_preserving_embedding(T, P)
    return P


# A crossing-free drawing of the octahedron with its last canonical face
# (2,4,6) as the outer triangle: poleless nested-triangles layout.
OCTAHEDRON_DRAWING = {
    2: Point(0, 0),
    4: Point(840000, 0),
    6: Point(420011, 840000),
    1: Point(420013, 170003),
    3: Point(280007, 420011),
    5: Point(560003, 420019),
}


def crafted_member_set(comp: Composition8, rng: random.Random) -> LabelledPointSet:
    """Point set realizing the composition's member label-preservingly.

    Needs the part of the outer drawn face (2,4,6) to be zero; each other
    face receives its fan as a jittered chain marching from the face's third
    corner toward the midpoint of its two lowest-labelled corners.
    """
    if comp.parts[7] != 0:
        raise ValueError("crafted drawing keeps face (2,4,6) outer; its part must be 0")
    pos = dict(OCTAHEDRON_DRAWING)
    label = 7
    for face, k in zip(OCTAHEDRON_FACES, comp.parts):
        if k == 0:
            continue
        a, b = sorted(face)[:2]
        c = next(v for v in face if v not in (a, b))
        A, B, C = pos[a], pos[b], pos[c]
        mx, my = (A.x + B.x) // 2, (A.y + B.y) // 2
        for j in range(1, k + 1):
            jx = rng.randrange(-400, 401)
            jy = rng.randrange(-400, 401)
            px = C.x + (mx - C.x) * j // (k + 2) + jx
            py = C.y + (my - C.y) * j // (k + 2) + jy
            pos[label] = Point(px, py)
            label += 1
    P = LabelledPointSet(pos[v] for v in range(1, comp.n + 1))
    if not is_general_position(P):
        raise RuntimeError("crafted set degenerate; rejitter")
    T = build_member(comp.n, comp)
    assert has_label_preserving_embedding(T, P)
    return P


def crafted_member_set_retry(comp: Composition8, rng: random.Random) -> LabelledPointSet:
    for _ in range(50):
        try:
            return crafted_member_set(comp, rng)
        except RuntimeError:
            continue
    raise RuntimeError("could not craft a general-position drawing")


@pytest.fixture
def rng():
    return random.Random(20240817)
