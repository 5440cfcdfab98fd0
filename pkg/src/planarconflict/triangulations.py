"""Labelled planar triangulations with explicit face lists.

Graphs here are never fed to a planarity test: every triangulation is built
by stacking a new vertex into a known facial triangle (or is the octahedron),
so the face list is correct by construction.  The stacked family on n
labelled vertices grows from K4 and has exactly 2^(n-4) * (n-3)! members.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence, Tuple

Face = Tuple[int, int, int]
Edge = Tuple[int, int]

ENUMERATION_GUARD = 10  # |family| at n=10 is 322560; larger needs an override


def _sorted_face(face: Sequence[int]) -> Face:
    a, b, c = sorted(face)
    if a == b or b == c:
        raise ValueError(f"face must have three distinct labels, got {tuple(face)}")
    return (a, b, c)


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class FacedTriangulation:
    """Triangulation on labels 1..n carried with its face list.

    faces is an ordered tuple (construction order is meaningful for the
    octahedron); membership semantics are those of a set.
    """

    n: int
    edges: frozenset
    faces: tuple

    @property
    def face_set(self) -> frozenset:
        return frozenset(self.faces)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def validate(self) -> None:
        """Check the Euler counts and the edge/face incidence structure."""
        n = self.n
        if n < 3:
            raise ValueError("triangulation needs n >= 3")
        if len(self.edges) != 3 * n - 6:
            raise ValueError(f"expected {3 * n - 6} edges, found {len(self.edges)}")
        if len(self.faces) != 2 * n - 4:
            raise ValueError(f"expected {2 * n - 4} faces, found {len(self.faces)}")
        if len(set(self.faces)) != len(self.faces):
            raise ValueError("duplicate faces")
        seen = {}
        for f in self.faces:
            a, b, c = f
            if not (1 <= a < b < c <= n):
                raise ValueError(f"bad face {f}")
            for e in ((a, b), (a, c), (b, c)):
                if e not in self.edges:
                    raise ValueError(f"face {f} uses missing edge {e}")
                seen[e] = seen.get(e, 0) + 1
        for e in self.edges:
            if seen.get(e, 0) != 2:
                raise ValueError(f"edge {e} lies in {seen.get(e, 0)} faces, expected 2")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FacedTriangulation)
            and self.n == other.n
            and self.edges == other.edges
            and self.face_set == other.face_set
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges, self.face_set))


@dataclass(frozen=True)
class StackedTriangulation:
    """Member of the stacked family: K4 plus an ordered stacking history.

    stacks[j] = (vertex label 5+j, face it was stacked into).  Each stacked
    face must be facial in the triangulation built so far.
    """

    n: int
    stacks: tuple

    def __post_init__(self):
        if self.n < 4:
            raise ValueError("stacked triangulation needs n >= 4")
        if len(self.stacks) != self.n - 4:
            raise ValueError(f"need {self.n - 4} stack records for n={self.n}")
        for j, (v, face) in enumerate(self.stacks):
            if v != 5 + j:
                raise ValueError(f"stack {j} must introduce vertex {5 + j}, got {v}")
        self.expand()  # raises if any stacked face is not facial at its step

    def expand(self) -> FacedTriangulation:
        """Materialize edges and faces by replaying the stacking history."""
        edges = {_edge(i, j) for i, j in combinations(range(1, 5), 2)}
        faces = {(i, j, k) for i, j, k in combinations(range(1, 5), 3)}
        for v, face in self.stacks:
            face = _sorted_face(face)
            if face not in faces:
                raise ValueError(f"vertex {v} stacked into non-face {face}")
            faces.remove(face)
            a, b, c = face
            for u in face:
                edges.add(_edge(u, v))
            faces.update({_sorted_face((a, b, v)), _sorted_face((a, c, v)),
                          _sorted_face((b, c, v))})
        return FacedTriangulation(self.n, frozenset(edges), tuple(sorted(faces)))

    def edge_set(self) -> frozenset:
        return self.expand().edges


def k4() -> StackedTriangulation:
    """The complete graph on labels 1..4, root of the stacked family."""
    return StackedTriangulation(4, ())


def stack_child(T: StackedTriangulation, face: Sequence[int]) -> StackedTriangulation:
    """Stack vertex n+1 into a current face of T."""
    face = _sorted_face(face)
    if face not in T.expand().face_set:
        raise ValueError(f"{face} is not a face of the triangulation")
    return StackedTriangulation(T.n + 1, T.stacks + ((T.n + 1, face),))


def count_stacked(n: int) -> int:
    """Number of members of the stacked family on n labelled vertices."""
    if n < 4:
        raise ValueError("family is defined for n >= 4")
    return (1 << (n - 4)) * math.factorial(n - 3)


def enumerate_stacked(n: int, override_guard: bool = False) -> Iterator[StackedTriangulation]:
    """Yield every member on n vertices exactly once.

    Depth-first over stacking choices; at each level the candidate faces are
    visited in lexicographic order, so the stream order is reproducible.
    """
    if n < 4:
        raise ValueError("family is defined for n >= 4")
    if n > ENUMERATION_GUARD and not override_guard:
        raise ValueError(
            f"enumeration guarded to n <= {ENUMERATION_GUARD}; pass override_guard=True"
        )

    stacks: list = []
    faces = {(i, j, k) for i, j, k in combinations(range(1, 5), 3)}

    def rec(v: int) -> Iterator[StackedTriangulation]:
        if v > n:
            yield StackedTriangulation(n, tuple(stacks))
            return
        for face in sorted(faces):
            a, b, c = face
            new = ((a, b, v), (a, c, v), (b, c, v))
            faces.remove(face)
            faces.update(new)
            stacks.append((v, face))
            yield from rec(v + 1)
            stacks.pop()
            faces.difference_update(new)
            faces.add(face)

    return rec(5)


def sample_stacked(n: int, seed: int) -> StackedTriangulation:
    """Uniform member of the family on n vertices, deterministic in seed.

    At step i there are 2(i-1)-4 faces; choosing one uniformly at every step
    makes the full face-choice sequence uniform over 2^(n-4)(n-3)! outcomes,
    which is exactly the size of the family, so members are sampled uniformly.
    """
    if n < 4:
        raise ValueError("family is defined for n >= 4")
    rng = random.Random(seed)
    stacks = []
    face_pool = {(i, j, k) for i, j, k in combinations(range(1, 5), 3)}
    for v in range(5, n + 1):
        ordered = sorted(face_pool)
        face = ordered[rng.randrange(len(ordered))]
        a, b, c = face
        face_pool.remove(face)
        face_pool.update({(a, b, v), (a, c, v), (b, c, v)})
        stacks.append((v, face))
    return StackedTriangulation(n, tuple(stacks))


OCTAHEDRON_NON_EDGES = ((1, 6), (2, 5), (3, 4))

# Canonical face order: the four faces around pole 1, then the four around
# pole 6 (each triple written sorted; only the index order is meaningful).
OCTAHEDRON_FACES = (
    (1, 2, 3),
    (1, 3, 5),
    (1, 4, 5),
    (1, 2, 4),
    (2, 3, 6),
    (3, 5, 6),
    (4, 5, 6),
    (2, 4, 6),
)


def octahedron() -> FacedTriangulation:
    """The 6-vertex triangulation missing exactly the pairs 16, 25, 34.

    Faces come in the fixed canonical order used by the explicit conflict
    construction (index i of the tuple is face i+1).
    """
    non = {tuple(sorted(e)) for e in OCTAHEDRON_NON_EDGES}
    edges = frozenset(
        _edge(i, j) for i, j in combinations(range(1, 7), 2) if _edge(i, j) not in non
    )
    return FacedTriangulation(6, edges, OCTAHEDRON_FACES)


def stack_into_faced(T: FacedTriangulation, face: Sequence[int]) -> FacedTriangulation:
    """Stack a new vertex (label n+1) into a face of a face-carrying triangulation."""
    face = _sorted_face(face)
    if face not in T.face_set:
        raise ValueError(f"{face} is not a face of the triangulation")
    v = T.n + 1
    a, b, c = face
    edges = set(T.edges)
    edges.update(_edge(u, v) for u in face)
    faces = [f for f in T.faces if f != face]
    faces.extend((_sorted_face((a, b, v)), _sorted_face((a, c, v)), _sorted_face((b, c, v))))
    return FacedTriangulation(v, frozenset(edges), tuple(faces))
