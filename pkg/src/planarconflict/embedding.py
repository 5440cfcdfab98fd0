"""Exact straight-line embeddability: checking, searching, reconstructing.

A placement maps vertex labels 1..n to distinct point labels 1..n; the
label-preserving placement is the identity.  All verdicts are computed with
exact integer predicates.  Searches carry an explicit node budget and report
"unknown" when it runs out -- a refutation is never silently fabricated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .construction import Composition8, build_member
from .geom import (
    LabelledPointSet,
    is_general_position,
    point_in_open_segment,
    point_strictly_inside_triangle,
    segments_properly_intersect,
)
from .triangulations import FacedTriangulation, StackedTriangulation

Graph = Union[FacedTriangulation, StackedTriangulation]
Placement = Tuple[int, ...]

DEFAULT_BUDGET = 5_000_000
SEARCH_GUARD = 10  # placement search is exponential; beyond this, opt in


class BudgetExceeded(Exception):
    """Internal signal: search ran out of nodes before deciding."""


def graph_data(G: Graph) -> Tuple[int, frozenset]:
    """(vertex count, edge set) of either triangulation representation."""
    if isinstance(G, StackedTriangulation):
        return G.n, G.edge_set()
    if isinstance(G, FacedTriangulation):
        return G.n, G.edges
    raise TypeError(f"not a triangulation: {G!r}")


class PointSetGeometry:
    """Per-point-set tables of exact segment predicates.

    Everything a placement search asks -- do two point-pair segments properly
    cross, does a point sit strictly inside a segment -- is answered from
    these tables, so each exact test is computed once per point set.
    """

    def __init__(self, P: LabelledPointSet):
        self.P = P
        n = P.n
        pts = P.points
        pairs = [(i, j) for i, j in combinations(range(1, n + 1), 2)]
        self.cross: Dict[tuple, bool] = {}
        for (e1, e2) in combinations(pairs, 2):
            a, b = pts[e1[0] - 1], pts[e1[1] - 1]
            c, d = pts[e2[0] - 1], pts[e2[1] - 1]
            self.cross[(e1, e2)] = segments_properly_intersect(a, b, c, d)
        self.inside: Dict[tuple, bool] = {}
        for k in range(1, n + 1):
            p = pts[k - 1]
            for (i, j) in pairs:
                if k == i or k == j:
                    continue
                self.inside[(k, (i, j))] = point_in_open_segment(
                    p, pts[i - 1], pts[j - 1]
                )

    def segments_cross(self, e1: tuple, e2: tuple) -> bool:
        if e1 == e2:
            return False
        key = (e1, e2) if e1 < e2 else (e2, e1)
        return self.cross[key]

    def point_inside_segment(self, k: int, e: tuple) -> bool:
        if k == e[0] or k == e[1]:
            return False
        return self.inside[(k, e)]


def _pair(i: int, j: int) -> tuple:
    return (i, j) if i < j else (j, i)


def identity_placement(n: int) -> Placement:
    return tuple(range(1, n + 1))


@dataclass
class EmbeddingVerdict:
    """Outcome of an embeddability search.

    embeds is True (with a witness placement), False, or None when the node
    budget ran out before the search could decide.
    """

    embeds: Optional[bool]
    witness: Optional[Placement] = None
    crossings_checked: int = 0

    @property
    def unknown(self) -> bool:
        return self.embeds is None


def is_straight_line_embedding(
    G: Graph,
    P: LabelledPointSet,
    placement: Sequence[int],
    geometry: Optional[PointSetGeometry] = None,
) -> bool:
    """Exact check that a placement draws G crossing-free on P.

    Requires: no two edges sharing a point beyond a common endpoint, and no
    vertex point in the relative interior of any edge segment.
    """
    n, edges = graph_data(G)
    if P.n != n:
        raise ValueError(f"size mismatch: graph has {n} vertices, set has {P.n} points")
    placement = tuple(placement)
    if sorted(placement) != list(range(1, n + 1)):
        raise ValueError("placement must be a permutation of 1..n")
    geo = geometry if geometry is not None else PointSetGeometry(P)

    segs = [_pair(placement[u - 1], placement[v - 1]) for u, v in edges]
    for s, t in combinations(segs, 2):
        if geo.segments_cross(s, t):
            return False
    for v in range(1, n + 1):
        k = placement[v - 1]
        for s in segs:
            if geo.point_inside_segment(k, s):
                return False
    return True


def has_label_preserving_embedding(
    G: Graph, P: LabelledPointSet, geometry: Optional[PointSetGeometry] = None
) -> bool:
    """Does the identity placement v_i -> p_i draw G crossing-free?"""
    n, _ = graph_data(G)
    if P.n != n:
        raise ValueError(f"size mismatch: graph has {n} vertices, set has {P.n} points")
    return is_straight_line_embedding(G, P, identity_placement(n), geometry=geometry)


# ---------------------------------------------------------------------------
# Reconstruction
# ---------------------------------------------------------------------------


def reconstruct_stacked(P: LabelledPointSet) -> Optional[StackedTriangulation]:
    """The unique stacked member that label-preservingly embeds on P, if any.

    Walks the points in label order, maintaining the drawn faces of the
    partial triangulation: each bounded face is a triangle of placed points,
    and one abstract face is drawn as the outer (unbounded) region bounded by
    the current hull triangle.  Point i either lands strictly inside exactly
    one bounded face (stack there), or outside the hull: that is realizable
    exactly when i sees all three hull corners, i.e. sits in a corner wedge,
    in which case the stacked face is the current outer face and the wedge's
    corner becomes interior.  Any other location means no member fits.
    """
    n = P.n
    if n < 4:
        raise ValueError("reconstruction needs n >= 4")
    if not is_general_position(P):
        raise ValueError("reconstruction requires general position")

    pt = P.point
    inner = [
        t
        for t in range(1, 5)
        if point_strictly_inside_triangle(
            pt(t), *(pt(s) for s in range(1, 5) if s != t)
        )
    ]
    if not inner:
        return None
    assert len(inner) == 1
    hub = inner[0]
    others = [s for s in range(1, 5) if s != hub]
    bounded = {tuple(sorted((hub, a, b))) for a, b in combinations(others, 2)}
    outer = tuple(sorted(others))

    stacks: List[tuple] = []
    for i in range(5, n + 1):
        p = pt(i)
        if point_strictly_inside_triangle(p, *(pt(h) for h in outer)):
            homes = [
                f
                for f in bounded
                if point_strictly_inside_triangle(p, pt(f[0]), pt(f[1]), pt(f[2]))
            ]
            assert len(homes) == 1, "bounded faces tile the hull interior"
            face = homes[0]
            bounded.remove(face)
            a, b, c = face
            bounded.update(
                {
                    tuple(sorted((a, b, i))),
                    tuple(sorted((a, c, i))),
                    tuple(sorted((b, c, i))),
                }
            )
            stacks.append((i, face))
        else:
            # Outside the hull: i must see every hull corner, i.e. no segment
            # from p to a corner may properly cross a hull edge.
            h1, h2, h3 = outer
            hull_edges = [(pt(h1), pt(h2)), (pt(h1), pt(h3)), (pt(h2), pt(h3))]
            visible = True
            for h in outer:
                for (u, v) in hull_edges:
                    if pt(h) in (u, v):
                        continue
                    if segments_properly_intersect(p, pt(h), u, v):
                        visible = False
                        break
                if not visible:
                    break
            if not visible:
                return None
            absorbed = [
                x
                for x in outer
                if point_strictly_inside_triangle(
                    pt(x), p, *(pt(y) for y in outer if y != x)
                )
            ]
            assert len(absorbed) == 1, "a visible exterior point absorbs one corner"
            x = absorbed[0]
            y, z = (v for v in outer if v != x)
            stacks.append((i, outer))
            bounded.update(
                {tuple(sorted((i, x, y))), tuple(sorted((i, x, z)))}
            )
            outer = tuple(sorted((i, y, z)))

    return StackedTriangulation(n, tuple(stacks))


# ---------------------------------------------------------------------------
# Placement search
# ---------------------------------------------------------------------------


class _Budget:
    __slots__ = ("limit", "nodes", "checks")

    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.nodes = 0
        self.checks = 0

    def spend(self):
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise BudgetExceeded


def _placements(
    vertices: Sequence[int],
    edges: Iterable[tuple],
    n_points: int,
    geo: PointSetGeometry,
    fixed: Dict[int, int],
    budget: _Budget,
) -> Iterator[Dict[int, int]]:
    """Yield every crossing-free placement of the vertices onto the points.

    Vertices are inserted fixed-first, then by decreasing degree (ties by
    label); a partial placement is abandoned as soon as any drawn edge pair
    crosses or a placed point sits inside a drawn edge.
    """
    adj = {v: [] for v in vertices}
    degree = {v: 0 for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
        degree[u] += 1
        degree[v] += 1
    free = [v for v in vertices if v not in fixed]
    free.sort(key=lambda v: (-degree[v], v))
    order = sorted(fixed) + free

    pos: Dict[int, int] = {}
    used = [False] * (n_points + 1)
    segments: List[tuple] = []

    def place(v: int, q: int) -> Optional[int]:
        # Returns the number of segments appended, or None on conflict.
        budget.spend()
        for s in segments:
            budget.checks += 1
            if geo.point_inside_segment(q, s):
                return None
        added = 0
        for u in adj[v]:
            if u not in pos:
                continue
            new = _pair(pos[u], q)
            for s in segments:
                budget.checks += 1
                if geo.segments_cross(new, s):
                    for _ in range(added):
                        segments.pop()
                    return None
            for r in pos.values():
                budget.checks += 1
                if geo.point_inside_segment(r, new):
                    for _ in range(added):
                        segments.pop()
                    return None
            segments.append(new)
            added += 1
        return added

    def rec(i: int) -> Iterator[Dict[int, int]]:
        if i == len(order):
            yield dict(pos)
            return
        v = order[i]
        candidates = [fixed[v]] if v in fixed else range(1, n_points + 1)
        for q in candidates:
            if used[q]:
                continue
            added = place(v, q)
            if added is None:
                continue
            pos[v] = q
            used[q] = True
            yield from rec(i + 1)
            del pos[v]
            used[q] = False
            for _ in range(added):
                segments.pop()

    return rec(0)


def embeds_on(
    G: Graph,
    P: LabelledPointSet,
    budget: Optional[int] = DEFAULT_BUDGET,
    fixed: Optional[Dict[int, int]] = None,
    strategy: str = "backtracking",
    geometry: Optional[PointSetGeometry] = None,
    override_guard: bool = False,
) -> EmbeddingVerdict:
    """Search for any crossing-free placement of G on P.

    strategy "backtracking" inserts vertices by decreasing degree and prunes
    as soon as a partial placement crosses; "reconstruction" (stacked graphs
    only, no fixed vertices) walks relabellings of P and accepts a
    permutation tau exactly when reconstruction of the relabelled set
    reproduces G.  Exhausting the node budget yields an unknown verdict.
    """
    n, edges = graph_data(G)
    if P.n != n:
        raise ValueError(f"size mismatch: graph has {n} vertices, set has {P.n} points")
    if n > SEARCH_GUARD and not override_guard:
        raise ValueError(
            f"placement search guarded to n <= {SEARCH_GUARD}; pass override_guard=True"
        )
    fixed = dict(fixed or {})
    for v, q in fixed.items():
        if not (1 <= v <= n and 1 <= q <= n):
            raise ValueError(f"fixed assignment {v}->{q} out of range")
    if len(set(fixed.values())) != len(fixed):
        raise ValueError("fixed assignments must be injective")

    if strategy == "reconstruction":
        if not isinstance(G, StackedTriangulation):
            raise ValueError("reconstruction strategy needs a stacked triangulation")
        if fixed:
            raise ValueError("reconstruction strategy does not support fixed vertices")
        if not is_general_position(P):
            raise ValueError("reconstruction strategy requires general position")
        checked = 0
        for tau in permutations(range(1, n + 1)):
            checked += 1
            if budget is not None and checked > budget:
                return EmbeddingVerdict(None, crossings_checked=checked)
            if reconstruct_stacked(P.relabelled(tau)) == G:
                return EmbeddingVerdict(True, witness=tuple(tau), crossings_checked=checked)
        return EmbeddingVerdict(False, crossings_checked=checked)
    if strategy != "backtracking":
        raise ValueError(f"unknown strategy {strategy!r}")

    geo = geometry if geometry is not None else PointSetGeometry(P)
    b = _Budget(budget)
    try:
        for pos in _placements(range(1, n + 1), edges, n, geo, fixed, b):
            witness = tuple(pos[v] for v in range(1, n + 1))
            return EmbeddingVerdict(True, witness=witness, crossings_checked=b.checks)
    except BudgetExceeded:
        return EmbeddingVerdict(None, crossings_checked=b.checks)
    return EmbeddingVerdict(False, crossings_checked=b.checks)


@dataclass
class SimultaneousVerdict:
    """Conjunction over a collection: embeddable iff every member is."""

    all_embed: Optional[bool]
    verdicts: list = field(default_factory=list)

    @property
    def unknown(self) -> bool:
        return self.all_embed is None


def simultaneously_embeddable_on(
    graphs: Iterable[Graph],
    P: LabelledPointSet,
    budget: Optional[int] = DEFAULT_BUDGET,
    geometry: Optional[PointSetGeometry] = None,
) -> SimultaneousVerdict:
    """Check every graph against one point set, short-circuiting on failure."""
    graphs = list(graphs)
    if not graphs:
        raise ValueError("empty collection")
    geo = geometry if geometry is not None else PointSetGeometry(P)
    verdicts = []
    saw_unknown = False
    for G in graphs:
        v = embeds_on(G, P, budget=budget, geometry=geo)
        verdicts.append(v)
        if v.embeds is False:
            return SimultaneousVerdict(False, verdicts)
        if v.unknown:
            saw_unknown = True
    return SimultaneousVerdict(None if saw_unknown else True, verdicts)


@dataclass
class ConflictVerdict:
    """Outcome of checking a collection against every order-type representative.

    is_conflict True: no representative admits a simultaneous embedding.
    is_conflict False: counterexample holds one.  None: some representative
    could not be decided within budget and no counterexample was found.
    """

    is_conflict: Optional[bool]
    counterexample: Optional[LabelledPointSet] = None
    representatives_checked: int = 0
    undecided: int = 0


def verify_conflict_collection(
    graphs: Iterable[Graph],
    n: int,
    reps: Iterable[LabelledPointSet],
    budget: Optional[int] = DEFAULT_BUDGET,
) -> ConflictVerdict:
    """Is the collection free of any simultaneous embedding on the given reps?

    The caller must stream one representative per simple order type of size n
    for the verdict to carry its intended meaning.  Duplicate graphs are
    collapsed first.
    """
    seen = {}
    for G in graphs:
        gn, edges = graph_data(G)
        if gn != n:
            raise ValueError(f"graph on {gn} vertices in a size-{n} verification")
        seen.setdefault(edges, G)
    unique = list(seen.values())
    if not unique:
        raise ValueError("empty graph collection")

    checked = 0
    undecided = 0
    for P in reps:
        if P.n != n:
            raise ValueError(f"representative of size {P.n} in a size-{n} verification")
        checked += 1
        verdict = simultaneously_embeddable_on(unique, P, budget=budget)
        if verdict.all_embed:
            return ConflictVerdict(False, counterexample=P,
                                   representatives_checked=checked, undecided=undecided)
        if verdict.unknown:
            undecided += 1
    if checked == 0:
        raise ValueError("empty representative stream: refusing vacuous verification")
    if undecided:
        return ConflictVerdict(None, representatives_checked=checked, undecided=undecided)
    return ConflictVerdict(True, representatives_checked=checked)


# ---------------------------------------------------------------------------
# Exact counting experiments
# ---------------------------------------------------------------------------


@dataclass
class EmbeddingCounts:
    label_preserving_count: int
    embeddable_count: int
    total: int


def exact_embedding_counts(
    n: int, P: LabelledPointSet, budget: Optional[int] = DEFAULT_BUDGET
) -> EmbeddingCounts:
    """Exhaustive counts over the stacked family on n vertices.

    Counts members with (a) a label-preserving embedding on P and (b) any
    embedding on P.  Exact by enumeration; guarded to 4 <= n <= 8.
    """
    from .triangulations import count_stacked, enumerate_stacked

    if not 4 <= n <= 8:
        raise ValueError("exact counts are exhaustive; need 4 <= n <= 8")
    if P.n != n:
        raise ValueError(f"size mismatch: {P.n} points for n={n}")
    if not is_general_position(P):
        raise ValueError("exact counts require general position")
    geo = PointSetGeometry(P)
    label_preserving = 0
    embeddable = 0
    for T in enumerate_stacked(n):
        if has_label_preserving_embedding(T, P, geometry=geo):
            label_preserving += 1
        v = embeds_on(T, P, budget=budget, geometry=geo)
        if v.unknown:
            raise RuntimeError("budget too small for exact embedding counts")
        if v.embeds:
            embeddable += 1
    return EmbeddingCounts(label_preserving, embeddable, count_stacked(n))


# ---------------------------------------------------------------------------
# Octahedron consistency (the pigeonhole consequence of the construction)
# ---------------------------------------------------------------------------


def octahedron_placements(
    P: LabelledPointSet,
    geometry: Optional[PointSetGeometry] = None,
    budget: Optional[int] = None,
) -> Iterator[Dict[int, int]]:
    """All crossing-free placements of the octahedron's 6 vertices on P."""
    from .triangulations import octahedron

    geo = geometry if geometry is not None else PointSetGeometry(P)
    return _placements(
        range(1, 7), octahedron().edges, P.n, geo, {}, _Budget(budget)
    )


def octahedron_consistency_check(
    s: Composition8,
    s_prime: Composition8,
    n: int,
    P: LabelledPointSet,
    budget: Optional[int] = None,
) -> bool:
    """No placement pair of the two members agrees pointwise on labels 1..6.

    For distinct compositions this must always hold: if both triangulations
    embedded with the octahedron pinned to the same six points, each interior
    face would have to contain two different numbers of points at once.
    Exhaustive over octahedron placements; guarded to n <= 10.
    """
    if s == s_prime:
        raise ValueError("compositions must be distinct")
    if s.n != n or s_prime.n != n:
        raise ValueError("compositions must match n")
    if P.n != n:
        raise ValueError(f"size mismatch: {P.n} points for n={n}")
    if n > SEARCH_GUARD:
        raise ValueError(f"exhaustive consistency check guarded to n <= {SEARCH_GUARD}")

    T1 = build_member(n, s)
    T2 = build_member(n, s_prime)
    geo = PointSetGeometry(P)
    for rho in octahedron_placements(P, geometry=geo, budget=budget):
        v1 = embeds_on(T1, P, budget=budget, fixed=rho, geometry=geo)
        if v1.unknown:
            raise RuntimeError("budget too small for exhaustive consistency check")
        if not v1.embeds:
            continue
        v2 = embeds_on(T2, P, budget=budget, fixed=rho, geometry=geo)
        if v2.unknown:
            raise RuntimeError("budget too small for exhaustive consistency check")
        if v2.embeds:
            return False
    return True


def count_points_strictly_inside(
    P: LabelledPointSet, corners: Sequence[int]
) -> int:
    """How many points of P lie strictly inside the triangle of three point labels."""
    a, b, c = (P.point(t) for t in corners)
    return sum(
        1
        for k in range(1, P.n + 1)
        if k not in corners and point_strictly_inside_triangle(P.point(k), a, b, c)
    )
