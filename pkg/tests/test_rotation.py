from __future__ import annotations

import itertools
import random

import pytest

from sepdraw.errors import (
    AdjacentEdgesError,
    InputError,
    RealizabilityError,
)
from sepdraw.rotation import (
    RotationSystem,
    canonical_key,
    convex,
    crossing_pairs,
    is_g_convex,
    is_realizable,
    is_realizable_touching,
    k5_index_of,
    k5_system,
    labeled_encoding,
    mirror,
    pair_crossing,
    parse_crs,
    relabel,
    same_triangle_side,
    serialize_crs,
    subrotation,
    triangle_sides,
)

from oracles import (
    convex_points,
    crossing_pairs_from_points,
    random_points,
    rotation_system_from_points,
)

# straight-line K4 with vertex 4 inside triangle 123 (computed from points
# (0,0), (4,0), (2,3), (2,1))
PLANAR_K4 = RotationSystem(4, [(3, 4, 2), (1, 4, 3), (2, 4, 1), (3, 2, 1)])

# convex 5-gon with edges {1,3} and {2,4} rerouted outside the hull
REROUTED_K5 = RotationSystem(
    5, [(2, 4, 5, 3), (3, 5, 1, 4), (4, 5, 2, 1), (5, 1, 3, 2), (1, 2, 3, 4)]
)


class TestRotationSystem:
    def test_rejects_non_permutation_rows(self):
        with pytest.raises(InputError):
            RotationSystem(3, [(2, 3), (1, 1), (1, 2)])
        with pytest.raises(InputError):
            RotationSystem(3, [(2, 3), (1, 3)])
        with pytest.raises(InputError):
            RotationSystem(0, [])

    def test_equality_is_cyclic(self):
        a = RotationSystem(4, [(2, 3, 4), (3, 4, 1), (4, 1, 2), (1, 2, 3)])
        b = RotationSystem(4, [(3, 4, 2), (1, 3, 4), (2, 4, 1), (2, 3, 1)])
        assert a == b
        assert hash(a) == hash(b)
        assert a != mirror(a)

    def test_convex_matches_point_oracle(self):
        for n in (3, 4, 5, 6, 7, 8):
            assert rotation_system_from_points(convex_points(n)) == convex(n)

    def test_planar_k4_matches_point_oracle(self):
        pts = {1: (0, 0), 2: (4, 0), 3: (2, 3), 4: (2, 1)}
        assert rotation_system_from_points(pts) == PLANAR_K4


class TestSubrotation:
    def test_convex_k5_restricts_to_convex_k3(self):
        assert subrotation(convex(5), {1, 2, 3}) == convex(3)

    def test_full_subset_is_identity(self):
        rs = convex(6)
        assert subrotation(rs, range(1, 7)) == rs

    def test_convex_k7_on_evens_is_convex_k3(self):
        assert subrotation(convex(7), {2, 4, 6}) == convex(3)

    def test_bad_subsets_rejected(self):
        with pytest.raises(InputError):
            subrotation(convex(5), [])
        with pytest.raises(InputError):
            subrotation(convex(5), [0, 1])
        with pytest.raises(InputError):
            subrotation(convex(5), [1, 6])


class TestPairCrossing:
    def test_convex_k4_diagonals_cross(self, tables):
        assert pair_crossing(tables, convex(4), (1, 3), (2, 4)) is True

    def test_convex_k4_hull_edges_do_not(self, tables):
        assert pair_crossing(tables, convex(4), (1, 2), (3, 4)) is False

    def test_planar_k4_has_no_crossing(self, tables):
        assert pair_crossing(tables, PLANAR_K4, (1, 3), (2, 4)) is False
        assert len(crossing_pairs(tables, PLANAR_K4)) == 0

    def test_adjacent_edges_rejected(self, tables):
        with pytest.raises(AdjacentEdgesError):
            pair_crossing(tables, convex(4), (1, 2), (2, 3))

    def test_unrealizable_subsystem_reported(self, tables):
        # flip one entry of a single rotation of convex K4: breaks the quad
        rs = RotationSystem(4, [(2, 4, 3), (3, 4, 1), (4, 1, 2), (1, 2, 3)])
        if tables.k4[0] != -2:  # guard: rs must genuinely be unrealizable
            try:
                ok = is_realizable(tables, rs)
            except RealizabilityError:
                ok = False
            if not ok:
                with pytest.raises(RealizabilityError):
                    pair_crossing(tables, rs, (1, 3), (2, 4))


class TestCrossingPairs:
    def test_convex_k4(self, tables):
        assert crossing_pairs(tables, convex(4)).pairs == frozenset(
            {((1, 3), (2, 4))}
        )

    def test_convex_k3_empty(self, tables):
        assert crossing_pairs(tables, convex(3)).pairs == frozenset()

    def test_convex_k5_diagonal_pairs(self, tables):
        expect = frozenset(
            {
                ((1, 3), (2, 4)),
                ((1, 3), (2, 5)),
                ((1, 4), (2, 5)),
                ((1, 4), (3, 5)),
                ((2, 4), (3, 5)),
            }
        )
        assert crossing_pairs(tables, convex(5)).pairs == expect

    def test_matches_point_oracle_on_random_configurations(self, tables):
        rng = random.Random(42)
        for n in (4, 5, 6, 7):
            for _ in range(5):
                pts = random_points(n, rng)
                rs = rotation_system_from_points(pts)
                assert is_realizable(tables, rs)
                assert crossing_pairs(
                    tables, rs
                ).pairs == crossing_pairs_from_points(pts)

    def test_invariance_under_relinearization(self, tables):
        rs = convex(6)
        rolled = RotationSystem(
            6, [row[2:] + row[:2] for row in rs.rows]
        )
        assert crossing_pairs(tables, rolled) == crossing_pairs(tables, rs)

    def test_relabeling_permutes_pairs(self, tables):
        rng = random.Random(3)
        rs = convex(6)
        base = crossing_pairs(tables, rs).pairs
        perm = list(range(1, 7))
        rng.shuffle(perm)
        pm = {i + 1: p for i, p in enumerate(perm)}
        relabeled = crossing_pairs(tables, relabel(rs, pm)).pairs
        expect = frozenset(
            tuple(
                sorted(
                    (
                        tuple(sorted((pm[e[0]], pm[e[1]]))),
                        tuple(sorted((pm[f[0]], pm[f[1]]))),
                    )
                )
            )
            for e, f in base
        )
        assert relabeled == expect

    def test_mirror_preserves_pairs(self, tables):
        rs = convex(7)
        assert crossing_pairs(tables, mirror(rs)) == crossing_pairs(tables, rs)


class TestRealizability:
    def test_convex_k7(self, tables):
        assert is_realizable(tables, convex(7))

    def test_small_n_trivial(self, tables):
        assert is_realizable(tables, convex(3))
        assert is_realizable(tables, RotationSystem(1, [()]))

    def test_smallest_non_realizable_k5(self, tables):
        non = min(set(range(6**5)) - set(tables.k5))
        assert not is_realizable(tables, k5_system(non))

    def test_k5_index_round_trip(self):
        rng = random.Random(9)
        for idx in rng.sample(range(6**5), 100):
            assert k5_index_of(k5_system(idx)) == idx

    def test_touching_after_valid_flip(self, tables):
        from sepdraw.separability import valid_flips

        flips = valid_flips(tables, convex(7), (2, 6))
        assert len(flips) == 1
        assert is_realizable_touching(tables, flips[0].new_rs, (2, 6))

    def test_touching_rejects_one_sided_edit(self, tables):
        # swapping two adjacent labels only at vertex 2 breaks some 5-tuple
        rows = list(convex(7).rows)
        r = list(rows[1])
        r[0], r[1] = r[1], r[0]
        rows[1] = tuple(r)
        rs = RotationSystem(7, rows)
        assert not is_realizable_touching(tables, rs, (2, 6))

    def test_touching_degenerates_to_k4_lookup(self, tables):
        assert is_realizable_touching(tables, convex(4), (1, 3))


class TestTriangleSides:
    def test_convex_k5_outside_pair(self, tables):
        assert same_triangle_side(tables, convex(5), (1, 2, 3), 4, 5)

    def test_inside_outside_split(self, tables):
        pts = {1: (0, 0), 2: (4, 0), 3: (2, 3), 4: (2, 1), 5: (2, -10)}
        rs = rotation_system_from_points(pts)
        assert not same_triangle_side(tables, rs, (1, 2, 3), 4, 5)

    def test_rejects_degenerate_queries(self, tables):
        with pytest.raises(InputError):
            same_triangle_side(tables, convex(5), (1, 2, 3), 4, 4)
        with pytest.raises(InputError):
            same_triangle_side(tables, convex(5), (1, 2, 3), 1, 4)

    def test_bipartition_properties(self, tables, enum5):
        for rep in enum5[5]:
            for t in itertools.combinations(range(1, 6), 3):
                side_a, side_b = triangle_sides(tables, rep.rs, t)
                others = set(range(1, 6)) - set(t)
                assert side_a | side_b == others
                assert not side_a & side_b
                for u, v in itertools.combinations(sorted(others), 2):
                    same = same_triangle_side(tables, rep.rs, t, u, v)
                    assert same == same_triangle_side(
                        tables, rep.rs, t, v, u
                    )
                    assert same == (
                        (u in side_a) == (v in side_a)
                    )


class TestGConvex:
    def test_convex_drawings(self, tables):
        for n in (3, 4, 5, 6, 7, 8):
            assert is_g_convex(tables, convex(n))

    def test_rerouted_k5_is_not(self, tables):
        assert is_realizable(tables, REROUTED_K5)
        assert not is_g_convex(tables, REROUTED_K5)

    def test_k3_trivially(self, tables):
        assert is_g_convex(tables, convex(3))


class TestCanonicalKey:
    def test_relabel_invariance(self):
        rng = random.Random(5)
        rs = convex(6)
        key = canonical_key(rs)
        for _ in range(5):
            perm = list(range(1, 7))
            rng.shuffle(perm)
            assert canonical_key(relabel(rs, perm)) == key

    def test_mirror_invariance(self):
        rs = REROUTED_K5
        assert canonical_key(mirror(rs)) == canonical_key(rs)

    def test_distinct_orbits_differ(self):
        assert canonical_key(convex(4)) != canonical_key(PLANAR_K4)

    def test_collision_free_across_orbits(self, enum5, enum6):
        keys = [r.key for n in (3, 4, 5) for r in enum5[n]]
        keys += [r.key for r in enum6]
        assert len(keys) == len(set(keys))

    def test_labeled_encoding_distinguishes_linearization_not(self):
        rs = convex(5)
        rolled = RotationSystem(5, [r[1:] + r[:1] for r in rs.rows])
        assert labeled_encoding(rs) == labeled_encoding(rolled)


class TestCrsFormat:
    def test_round_trip(self):
        text = serialize_crs([convex(5), PLANAR_K4])
        records = parse_crs(text)
        assert records == [convex(5), PLANAR_K4]
        assert serialize_crs(records) == text

    def test_comments_and_whitespace(self):
        text = "# a drawing\nn = 3\n 1:  2 3\n2: 3 1\n3: 1 2\n"
        assert parse_crs(text) == [convex(3)]

    def test_errors(self):
        with pytest.raises(InputError):
            parse_crs("")
        with pytest.raises(InputError):
            parse_crs("n=2\n1: 2\n")  # missing rotation for 2
        with pytest.raises(InputError):
            parse_crs("1: 2 3\n")
        with pytest.raises(InputError):
            parse_crs("n=3\n1: 2 3\n1: 3 2\n2: 1 3\n3: 1 2\n")
