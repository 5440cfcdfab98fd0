import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarconflict.geom import (
    LabelledPointSet,
    Point,
    SignPattern,
    are_combinatorially_equivalent,
    are_isomorphic,
    is_general_position,
    orientation,
    point_in_open_segment,
    point_strictly_inside_triangle,
    segments_properly_intersect,
    sign_pattern,
    triples,
)

coords = st.integers(min_value=-10**9, max_value=10**9)
points = st.tuples(coords, coords)


def det_sign_oracle(a, b, c):
    # independent of the subtraction-first formula: full 3x3 expansion
    d = (
        b[0] * c[1]
        - b[1] * c[0]
        - a[0] * c[1]
        + a[1] * c[0]
        + a[0] * b[1]
        - a[1] * b[0]
    )
    return (d > 0) - (d < 0)


class TestOrientation:
    def test_counterclockwise(self):
        assert orientation((0, 0), (1, 0), (0, 1)) == 1

    def test_collinear(self):
        assert orientation((0, 0), (1, 1), (2, 2)) == 0

    def test_swap_flips(self):
        assert orientation((0, 0), (0, 1), (1, 0)) == -1

    def test_coincident_points_are_collinear(self):
        assert orientation((3, 4), (3, 4), (7, 1)) == 0

    @given(a=points, b=points, c=points)
    @settings(max_examples=300)
    def test_matches_full_determinant_expansion(self, a, b, c):
        assert orientation(a, b, c) == det_sign_oracle(a, b, c)

    @given(a=points, b=points, c=points)
    @settings(max_examples=300)
    def test_antisymmetry_and_cyclic(self, a, b, c):
        o = orientation(a, b, c)
        assert orientation(b, a, c) == -o
        assert orientation(a, c, b) == -o
        assert orientation(b, c, a) == o
        assert orientation(c, a, b) == o

    @given(a=points, b=points, c=points, t=points,
           k=st.integers(min_value=1, max_value=10**6))
    @settings(max_examples=300)
    def test_translation_and_positive_scaling(self, a, b, c, t, k):
        def shift(p):
            return (p[0] + t[0], p[1] + t[1])

        def scale(p):
            return (k * p[0], k * p[1])

        o = orientation(a, b, c)
        assert orientation(shift(a), shift(b), shift(c)) == o
        assert orientation(scale(a), scale(b), scale(c)) == o

    def test_exactness_when_float_is_trustworthy(self):
        # whenever the float determinant clears its error bound, signs agree
        rng = random.Random(99)
        eps = 2.0**-52
        for _ in range(2000):
            a, b, c = (
                (rng.randrange(-(2**40), 2**40), rng.randrange(-(2**40), 2**40))
                for _ in range(3)
            )
            fl = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
            det_f = float(b[0] - a[0]) * float(c[1] - a[1]) - float(
                b[1] - a[1]
            ) * float(c[0] - a[0])
            bound = 4 * eps * (
                abs(float(b[0] - a[0]) * float(c[1] - a[1]))
                + abs(float(b[1] - a[1]) * float(c[0] - a[0]))
            )
            if abs(det_f) > bound:
                assert orientation(a, b, c) == (det_f > 0) - (det_f < 0)
                assert (fl > 0) - (fl < 0) == (det_f > 0) - (det_f < 0)


class TestLabelledPointSet:
    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            LabelledPointSet([(0, 0), (0, 0)])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            LabelledPointSet([])

    def test_rejects_non_integer(self):
        with pytest.raises(TypeError):
            LabelledPointSet([(0.5, 1), (2, 3)])

    def test_labels_are_one_based(self):
        P = LabelledPointSet([(5, 6), (7, 8)])
        assert P.point(1) == Point(5, 6)
        assert P.point(2) == Point(7, 8)

    def test_relabelled(self):
        P = LabelledPointSet([(0, 0), (1, 0), (2, 5)])
        Q = P.relabelled((3, 1, 2))
        assert Q.points == (Point(2, 5), Point(0, 0), Point(1, 0))
        with pytest.raises(ValueError):
            P.relabelled((1, 1, 2))


class TestSignPattern:
    def test_single_triple(self):
        P = LabelledPointSet([(0, 0), (1, 0), (0, 1)])
        assert sign_pattern(P).entries == (1,)

    def test_four_point_example(self):
        # triples 123, 124, 134, 234 evaluated by hand from the determinant
        P = LabelledPointSet([(0, 0), (2, 0), (1, 2), (1, 1)])
        assert sign_pattern(P).entries == (1, 1, -1, 1)

    def test_collinear_triple_entry(self):
        P = LabelledPointSet([(0, 0), (1, 0), (2, 0)])
        assert sign_pattern(P).entries == (0,)

    def test_rejects_small(self):
        with pytest.raises(ValueError):
            sign_pattern(LabelledPointSet([(0, 0), (1, 1)]))

    def test_length_is_n_choose_3(self):
        rng = random.Random(4)
        for n in range(3, 9):
            pts = set()
            while len(pts) < n:
                pts.add((rng.randrange(1000), rng.randrange(1000)))
            pat = sign_pattern(LabelledPointSet(sorted(pts)))
            assert len(pat) == n * (n - 1) * (n - 2) // 6

    def test_pattern_validates_length(self):
        with pytest.raises(ValueError):
            SignPattern(4, (1, 1))


class TestGeneralPosition:
    def test_square(self):
        assert is_general_position(LabelledPointSet([(0, 0), (1, 0), (0, 1), (1, 1)]))

    def test_axis_collinear(self):
        assert not is_general_position(
            LabelledPointSet([(0, 0), (1, 0), (2, 0), (0, 1)])
        )

    def test_skew_collinear(self):
        # (3,1), (1,3), (2,2) lie on x + y = 4
        assert not is_general_position(
            LabelledPointSet([(0, 0), (3, 1), (1, 3), (2, 2)])
        )


class TestIsomorphy:
    def test_reflexive(self):
        P = LabelledPointSet([(0, 0), (4, 1), (2, 7), (9, 3)])
        assert are_isomorphic(P, P)

    def test_positive_scaling(self):
        P = LabelledPointSet([(0, 0), (1, 0), (0, 1)])
        Q = LabelledPointSet([(0, 0), (2, 0), (0, 2)])
        assert are_isomorphic(P, Q)

    def test_swap_breaks(self):
        P = LabelledPointSet([(0, 0), (1, 0), (0, 1)])
        Q = LabelledPointSet([(0, 0), (0, 1), (1, 0)])
        assert not are_isomorphic(P, Q)

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            are_isomorphic(
                LabelledPointSet([(0, 0), (1, 0), (0, 1)]),
                LabelledPointSet([(0, 0), (1, 0), (0, 1), (5, 5)]),
            )

    def test_equivalence_relation_on_random_sets(self):
        rng = random.Random(12)
        sets = []
        for _ in range(12):
            pts = set()
            while len(pts) < 5:
                pts.add((rng.randrange(50), rng.randrange(50)))
            sets.append(LabelledPointSet(sorted(pts)))
        for A in sets:
            assert are_isomorphic(A, A)
        for A, B in combinations(sets, 2):
            assert are_isomorphic(A, B) == are_isomorphic(B, A)
        for A, B, C in combinations(sets, 3):
            if are_isomorphic(A, B) and are_isomorphic(B, C):
                assert are_isomorphic(A, C)


def brute_force_bijection(P, Q):
    n = P.n
    for tau in permutations(range(1, n + 1)):
        if are_isomorphic(P, Q.relabelled(tau)):
            return tau
    return None


class TestCombinatorialEquivalence:
    def test_label_shuffle_found(self):
        rng = random.Random(3)
        P = LabelledPointSet([(0, 0), (10, 1), (3, 9), (7, 4), (2, 5)])
        labels = list(range(1, 6))
        rng.shuffle(labels)
        Q = P.relabelled(labels)
        tau = are_combinatorially_equivalent(P, Q)
        assert tau is not None
        assert are_isomorphic(P, Q.relabelled(tau))

    def test_different_hull_sizes_have_no_bijection(self):
        tri_interior = LabelledPointSet([(0, 0), (10, 0), (0, 10), (2, 2)])
        convex = LabelledPointSet([(0, 0), (10, 0), (10, 10), (0, 10)])
        assert are_combinatorially_equivalent(tri_interior, convex) is None

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            are_combinatorially_equivalent(
                LabelledPointSet([(0, 0)]), LabelledPointSet([(0, 0), (1, 1)])
            )

    def test_matches_exhaustive_bijection_search(self):
        rng = random.Random(77)
        for _ in range(25):
            sets = []
            for _ in range(2):
                pts = set()
                while len(pts) < 6:
                    pts.add((rng.randrange(40), rng.randrange(40)))
                sets.append(LabelledPointSet(sorted(pts)))
            P, Q = sets
            mine = are_combinatorially_equivalent(P, Q)
            brute = brute_force_bijection(P, Q)
            assert (mine is None) == (brute is None)
            if mine is not None:
                assert are_isomorphic(P, Q.relabelled(mine))


class TestSegments:
    def test_x_crossing(self):
        assert segments_properly_intersect((0, 0), (2, 2), (0, 2), (2, 0))

    def test_shared_endpoint_only(self):
        assert not segments_properly_intersect((0, 0), (1, 0), (1, 0), (2, 1))

    def test_collinear_overlap(self):
        assert segments_properly_intersect((0, 0), (2, 0), (1, 0), (3, 0))

    def test_collinear_tip_touch(self):
        assert not segments_properly_intersect((0, 0), (1, 0), (1, 0), (2, 0))

    def test_t_touch_counts(self):
        # endpoint of one segment resting inside the other
        assert segments_properly_intersect((0, 0), (4, 0), (2, 0), (2, 3))

    def test_identical_segments_overlap(self):
        assert segments_properly_intersect((0, 0), (3, 3), (0, 0), (3, 3))

    def test_disjoint(self):
        assert not segments_properly_intersect((0, 0), (1, 0), (5, 5), (6, 6))

    def test_collinear_disjoint(self):
        assert not segments_properly_intersect((0, 0), (1, 0), (2, 0), (3, 0))

    def test_degenerate_raises(self):
        with pytest.raises(ValueError):
            segments_properly_intersect((0, 0), (0, 0), (1, 1), (2, 2))
        with pytest.raises(ValueError):
            segments_properly_intersect((1, 1), (2, 2), (5, 5), (5, 5))

    @given(
        a=points, b=points, c=points, d=points,
        shift=points, k=st.integers(min_value=1, max_value=1000),
    )
    @settings(max_examples=200)
    def test_affine_invariance(self, a, b, c, d, shift, k):
        if a == b or c == d:
            return

        def f(p):
            return (k * p[0] + shift[0], k * p[1] + shift[1])

        assert segments_properly_intersect(a, b, c, d) == segments_properly_intersect(
            f(a), f(b), f(c), f(d)
        )


class TestPointPredicates:
    def test_open_segment(self):
        assert point_in_open_segment((1, 1), (0, 0), (2, 2))
        assert not point_in_open_segment((0, 0), (0, 0), (2, 2))
        assert not point_in_open_segment((3, 3), (0, 0), (2, 2))

    def test_strictly_inside_triangle(self):
        assert point_strictly_inside_triangle((1, 1), (0, 0), (5, 0), (0, 5))
        assert not point_strictly_inside_triangle((0, 0), (0, 0), (5, 0), (0, 5))
        assert not point_strictly_inside_triangle((2, 0), (0, 0), (5, 0), (0, 5))
        assert not point_strictly_inside_triangle((9, 9), (0, 0), (5, 0), (0, 5))


def test_triples_are_lexicographic():
    assert list(triples(4)) == [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
