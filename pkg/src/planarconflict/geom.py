"""Exact planar predicates over integer coordinates.

Everything here is computed with Python's arbitrary-precision integers; no
floating point is ever involved, so a sign is a sign.  Collinear triples are
legal input (they show up as 0 entries in a sign pattern); operations that
need general position say so instead of perturbing.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Optional, Sequence


class Point(NamedTuple):
    """Planar point with integer coordinates (arbitrary precision)."""

    x: int
    y: int


def _as_point(p) -> Point:
    if isinstance(p, Point):
        return p
    x, y = p
    return Point(x, y)


class LabelledPointSet:
    """Sequence of pairwise-distinct points; labels are 1-based positions."""

    __slots__ = ("points",)

    def __init__(self, points: Iterable[Sequence[int]]):
        pts = tuple(_as_point(p) for p in points)
        if not pts:
            raise ValueError("point set must contain at least one point")
        for p in pts:
            if not isinstance(p.x, int) or not isinstance(p.y, int):
                raise TypeError(f"coordinates must be integers, got {p!r}")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be pairwise distinct")
        self.points = pts

    @property
    def n(self) -> int:
        return len(self.points)

    def point(self, label: int) -> Point:
        """Point carrying the given 1-based label."""
        return self.points[label - 1]

    def relabelled(self, tau: Sequence[int]) -> "LabelledPointSet":
        """New set whose i-th point is this set's point tau[i-1]."""
        if sorted(tau) != list(range(1, self.n + 1)):
            raise ValueError("tau must be a permutation of 1..n")
        return LabelledPointSet(self.points[t - 1] for t in tau)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, idx: int) -> Point:
        return self.points[idx]

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other) -> bool:
        return isinstance(other, LabelledPointSet) and self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"LabelledPointSet({list(self.points)!r})"


@dataclass(frozen=True)
class SignPattern:
    """Orientation signs over all label triples i<j<k in lexicographic order."""

    n: int
    entries: tuple

    def __post_init__(self):
        expect = self.n * (self.n - 1) * (self.n - 2) // 6
        if len(self.entries) != expect:
            raise ValueError(
                f"sign pattern for n={self.n} needs {expect} entries, got {len(self.entries)}"
            )

    def __len__(self) -> int:
        return len(self.entries)


def triples(n: int):
    """Label triples (i, j, k), 1 <= i < j < k <= n, in lexicographic order."""
    return combinations(range(1, n + 1), 3)


def orientation(a, b, c) -> int:
    """Sign of the turn a -> b -> c: +1 counterclockwise, 0 collinear, -1 clockwise.

    Equals the sign of (b-a) x (c-a); exact for integer inputs.
    """
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def sign_pattern(P: LabelledPointSet) -> SignPattern:
    """Sign pattern of a labelled set: one orientation per lexicographic triple."""
    n = P.n
    if n < 3:
        raise ValueError("sign pattern needs at least 3 points")
    pts = P.points
    entries = tuple(
        orientation(pts[i - 1], pts[j - 1], pts[k - 1]) for i, j, k in triples(n)
    )
    return SignPattern(n, entries)


def is_general_position(P: LabelledPointSet) -> bool:
    """True iff no three points of P are collinear."""
    if P.n < 3:
        raise ValueError("general position is defined for n >= 3")
    pts = P.points
    for i, j, k in triples(P.n):
        if orientation(pts[i - 1], pts[j - 1], pts[k - 1]) == 0:
            return False
    return True


def are_isomorphic(P: LabelledPointSet, Q: LabelledPointSet) -> bool:
    """Labelled order-type equality: every triple has identical orientation."""
    if P.n != Q.n:
        raise ValueError(f"size mismatch: {P.n} vs {Q.n}")
    pp, qq = P.points, Q.points
    for i, j, k in triples(P.n):
        if orientation(pp[i - 1], pp[j - 1], pp[k - 1]) != orientation(
            qq[i - 1], qq[j - 1], qq[k - 1]
        ):
            return False
    return True


def are_combinatorially_equivalent(
    P: LabelledPointSet, Q: LabelledPointSet
) -> Optional[tuple]:
    """Search for a relabelling tau of Q with P isomorphic to Q.relabelled(tau).

    Returns the first permutation found by lexicographic backtracking (any
    valid bijection is acceptable), or None when the unlabelled order types
    differ.  Intended for desk scale (n <= 10 or so).
    """
    if P.n != Q.n:
        raise ValueError(f"size mismatch: {P.n} vs {Q.n}")
    n = P.n
    pp, qq = P.points, Q.points

    # tau[i] = label in Q playing the role of P's label i+1
    tau: list = []
    used = [False] * (n + 1)

    def consistent(i: int) -> bool:
        # i = index (0-based) of the vertex just assigned; check all triples
        # whose highest member is i against the image orientations.
        for a, b in combinations(range(i), 2):
            if orientation(pp[a], pp[b], pp[i]) != orientation(
                qq[tau[a] - 1], qq[tau[b] - 1], qq[tau[i] - 1]
            ):
                return False
        return True

    def extend() -> bool:
        i = len(tau)
        if i == n:
            return True
        for cand in range(1, n + 1):
            if used[cand]:
                continue
            tau.append(cand)
            used[cand] = True
            if consistent(i) and extend():
                return True
            tau.pop()
            used[cand] = False
        return False

    if extend():
        return tuple(tau)
    return None


def _on_segment(p, a, b) -> bool:
    # p collinear with a,b assumed; True iff p within the closed bounding box.
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(
        a[1], b[1]
    )


def point_in_closed_segment(p, a, b) -> bool:
    """True iff p lies on the closed segment ab (endpoints included)."""
    return orientation(a, b, p) == 0 and _on_segment(p, a, b)


def point_in_open_segment(p, a, b) -> bool:
    """True iff p lies strictly between a and b on segment ab."""
    return point_in_closed_segment(p, a, b) and tuple(p) != tuple(a) and tuple(p) != tuple(b)


def point_strictly_inside_triangle(p, a, b, c) -> bool:
    """True iff p lies strictly inside triangle abc (any vertex order)."""
    s1 = orientation(a, b, p)
    s2 = orientation(b, c, p)
    s3 = orientation(c, a, p)
    return s1 == s2 == s3 and s1 != 0


def segments_properly_intersect(a, b, c, d) -> bool:
    """True iff closed segments ab and cd share a point that is not a shared endpoint.

    A point counts as a shared endpoint only when it is an endpoint of *both*
    segments; a tip of one segment resting in the interior of the other is a
    proper intersection.  Exact; collinear overlaps are handled.
    """
    a, b, c, d = tuple(a), tuple(b), tuple(c), tuple(d)
    if a == b or c == d:
        raise ValueError("degenerate (zero-length) segment")

    d1 = orientation(c, d, a)
    d2 = orientation(c, d, b)
    d3 = orientation(a, b, c)
    d4 = orientation(a, b, d)

    if d1 == 0 and d2 == 0 and d3 == 0 and d4 == 0:
        # All collinear: positive-length overlap intersects properly; a single
        # shared point is necessarily an endpoint of both segments.
        axis = 0 if a[0] != b[0] else 1
        lo1, hi1 = sorted((a[axis], b[axis]))
        lo2, hi2 = sorted((c[axis], d[axis]))
        return max(lo1, lo2) < min(hi1, hi2)

    if d1 * d2 < 0 and d3 * d4 < 0:
        return True  # interior crossing

    # Touching configurations: the unique shared point is one of the four
    # endpoints; it only fails the test when it is an endpoint of both.
    for p, (u, v) in ((c, (a, b)), (d, (a, b)), (a, (c, d)), (b, (c, d))):
        if point_in_closed_segment(p, u, v) and p != u and p != v:
            return True
    return False
