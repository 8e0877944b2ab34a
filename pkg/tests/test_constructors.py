"""Constructions: class counts, coverage, freeness, and design invariants."""
from __future__ import annotations

from itertools import combinations
from math import comb

import pytest

from bergeparts._design9 import (
    FULL9,
    STS9_CLASSES,
    build_q_partition,
    triple_masks,
)
from bergeparts.berge import PatternGraph, partition_is_g_free
from bergeparts.constructors import (
    best_residue,
    claw_partition_6,
    claw_partition_9,
    exceptional_partition_5,
    modular_class,
    modular_packing_partition,
    quad_partition,
)
from bergeparts.errors import DomainError, GroundTooSmall
from bergeparts.setcore import (
    Family,
    GroundSet,
    complement,
    elements_of,
    mask_of,
    validate_partition,
)

M = mask_of


class TestQuadPartition:
    def test_n3_exact_layout(self):
        p = quad_partition(GroundSet(3))
        got = [tuple(part.sets) for part in p.parts]
        assert got == [
            (0, M([1, 2, 3]), M([3]), M([1, 2])),
            (M([1]), M([2, 3]), M([1, 3]), M([2])),
        ]

    @pytest.mark.parametrize("n", range(3, 13))
    def test_counts_and_validity(self, n):
        p = quad_partition(GroundSet(n))
        assert len(p.parts) == 1 << (n - 2)
        assert all(len(part.sets) == 4 for part in p.parts)
        assert validate_partition(p).ok

    @pytest.mark.parametrize("n", (15, 16))
    def test_large_n_validates(self, n):
        p = quad_partition(GroundSet(n))
        assert len(p.parts) == 1 << (n - 2)
        assert validate_partition(p).ok

    def test_disjointness_structure(self):
        for part in quad_partition(GroundSet(7)).parts:
            x1, x2, x3, x4 = part.sets
            assert x1 & x2 == 0 and x3 & x4 == 0 and x1 & x4 == 0

    def test_too_small(self):
        with pytest.raises(GroundTooSmall):
            quad_partition(GroundSet(2))


class TestExceptional5:
    def test_shape(self):
        p = exceptional_partition_5()
        assert len(p.parts) == 7
        assert p.family is Family.POWER_SET_STAR
        assert validate_partition(p).ok
        part_sets = [frozenset(part.sets) for part in p.parts]
        z2 = frozenset(
            (M([2, 3]), M([4, 5]), M([2, 3, 4, 5]), M([1, 4, 5]))
        )
        z3 = frozenset(
            (M([3, 4]), M([1, 5]), M([1, 3, 4, 5]), M([1, 2, 5]))
        )
        assert z2 in part_sets and z3 in part_sets

    def test_triangle_free(self):
        rep = partition_is_g_free(
            exceptional_partition_5(), PatternGraph.cycle(3),
            use_component_fast_path=False,
        )
        assert rep.free


class TestModularPacking:
    def test_residue_classes_brute_force(self):
        g = GroundSet(8)
        counts = {}
        for c in combinations(range(1, 9), 3):
            counts.setdefault(sum(c) % 8, []).append(M(c))
        for r, members in counts.items():
            cls = modular_class(g, 3, r)
            assert sorted(members) == list(cls.members)
        best = max(len(v) for v in counts.values())
        tied = min(r for r, v in counts.items() if len(v) == best)
        assert best_residue(g, 3) == (tied, best)

    def test_stats_recounted_independently(self):
        for n, k in ((8, 4), (12, 4), (12, 3)):
            g = GroundSet(n)
            p, stats = modular_packing_partition(g, k)
            expect_full = 0
            for m in range(k - 1, (n + 1) // 2):
                _, size = best_residue(g, m)
                expect_full += (m // (k - 1)) * size
                assert size >= -(-comb(n, m) // n)  # pigeonhole guarantee
            assert stats.full_parts == expect_full
            assert stats.total_parts == len(p.parts)
            assert (
                stats.leftover_sets
                == (1 << n) - 2 * (k - 1) * stats.full_parts
            )

    def test_part_structure(self):
        n, k = 8, 4
        p, stats = modular_packing_partition(GroundSet(n), k)
        for part in p.parts[: stats.full_parts]:
            assert len(part.sets) == 2 * (k - 1)
            small = [s for s in part.sets if s.bit_count() < n / 2 - 1]
            large = [s for s in part.sets if s.bit_count() >= n / 2 - 1]
            assert len(small) == len(large) == k - 1
            for a in small:
                for b in large:
                    assert a & b == 0
        for part in p.parts[stats.full_parts:]:
            assert len(part.sets) <= k - 1

    def test_validates_and_counts(self):
        p, stats = modular_packing_partition(GroundSet(8), 4)
        assert validate_partition(p).ok
        assert stats.full_parts == 7
        assert stats.total_parts == 79

    def test_freeness_with_certificate(self):
        p, stats = modular_packing_partition(GroundSet(10), 4)
        for pat in ("c4", "p4", "s4"):
            assert partition_is_g_free(p, PatternGraph.parse(pat)).free

    def test_empty_size_range_still_partitions(self):
        # n = 2(k-1) leaves no usable sizes; everything is chunked
        p, stats = modular_packing_partition(GroundSet(6), 4)
        assert stats.full_parts == 0
        assert validate_partition(p).ok

    def test_preconditions(self):
        with pytest.raises(GroundTooSmall):
            modular_packing_partition(GroundSet(5), 4)
        with pytest.raises(DomainError):
            modular_packing_partition(GroundSet(6), 1)


class TestClaw6:
    def test_shape_and_freeness(self):
        p = claw_partition_6()
        assert len(p.parts) == 15
        assert validate_partition(p).ok
        rep = partition_is_g_free(
            p, PatternGraph.star(3), use_component_fast_path=False
        )
        assert rep.free

    def test_quoted_classes_present(self):
        p = claw_partition_6()
        part_sets = [frozenset(part.sets) for part in p.parts]
        x = frozenset(
            M(s) for s in ((1, 2, 3), (4, 5, 6), (1, 2), (1, 3), (2, 3),
                           (4, 5), (4, 6), (5, 6))
        )
        z1 = frozenset((M([1, 4]), M([2, 3, 4, 5, 6]), M([1, 2, 3, 5, 6])))
        z2 = frozenset((M([2, 5]), M([1, 3, 4, 5, 6]), M([1, 2, 3, 4, 6])))
        z3 = frozenset((M([3, 6]), M([1, 2, 4, 5, 6]), M([1, 2, 3, 4, 5])))
        assert x in part_sets
        assert z1 in part_sets and z2 in part_sets and z3 in part_sets
        # the six pair sets tracing the fixed 6-cycle through 1,5,3,4,2,6
        w = frozenset(
            M(p) for p in ((1, 5), (5, 3), (3, 4), (4, 2), (2, 6), (6, 1))
        )
        assert w in part_sets
        # the closing class: the ground set plus the reserved triple pair
        r = frozenset((M(range(1, 7)), M((1, 5, 6)), M((2, 3, 4))))
        assert r in part_sets

    def test_one_factorization_recovered(self):
        # the five 4-set classes complement a one-factorization: each class's
        # complements are 3 disjoint pairs covering {1..6}, and the 15 pairs
        # across classes are exactly the edge set of the complete graph
        p = claw_partition_6()
        g6 = GroundSet(6)
        factors = [
            [complement(s, g6) for s in part.sets]
            for part in p.parts
            if all(s.bit_count() == 4 for s in part.sets)
        ]
        assert len(factors) == 5
        all_pairs = set()
        for factor in factors:
            union = 0
            for pair in factor:
                assert pair.bit_count() == 2
                assert union & pair == 0
                union |= pair
                all_pairs.add(pair)
            assert union == g6.full_mask
        assert len(all_pairs) == 15

    def test_two_regular_except_x(self):
        p = claw_partition_6()
        for part in p.parts:
            degree = [0] * 6
            for s in part.sets:
                for e in elements_of(s):
                    degree[e - 1] += 1
            assert set(degree) in ({2}, {3})


class TestDesign9:
    def test_q_partition_invariants(self):
        q = build_q_partition()
        assert len(q) == 28
        seen = set()
        for cls in q:
            union = 0
            for t in cls:
                assert t.bit_count() == 3
                assert t not in seen
                seen.add(t)
                assert union & t == 0
                union |= t
            assert union == FULL9
        assert seen == set(triple_masks())

    def test_sts_covers_pairs_once(self):
        cover = {}
        for cls in STS9_CLASSES:
            for t in cls:
                for pair in combinations(t, 2):
                    cover[pair] = cover.get(pair, 0) + 1
        assert len(cover) == 36
        assert set(cover.values()) == {1}


class TestClaw9:
    def test_shape_and_freeness(self):
        p = claw_partition_9()
        assert len(p.parts) == 126
        assert validate_partition(p).ok
        rep = partition_is_g_free(
            p, PatternGraph.star(3), use_component_fast_path=False
        )
        assert rep.free

    def test_type_census(self):
        from collections import Counter

        p = claw_partition_9()
        census = Counter(
            tuple(sorted(s.bit_count() for s in part.sets)) for part in p.parts
        )
        assert census[(5, 5, 8)] == 9
        assert census[(4, 7, 7)] == 18
        assert census[(4, 4, 5, 5)] == 54
        assert census[(6, 6, 6)] == 28
        assert census[(3, 3, 3, 3, 3, 3)] == 12
        assert census[(2,) * 9 + (3,) * 3] == 4
        assert census[(9,)] == 1

    def test_double_covers(self):
        # every class except the four triple-and-pair ones and the whole-set
        # class covers each point exactly twice
        p = claw_partition_9()
        for part in p.parts:
            shape = tuple(sorted(s.bit_count() for s in part.sets))
            if shape == (9,) or shape == (2,) * 9 + (3,) * 3:
                continue
            degree = [0] * 9
            for s in part.sets:
                for e in elements_of(s):
                    degree[e - 1] += 1
            assert set(degree) == {2}, shape

    def test_offset_quads_consume_complementary_pairs(self):
        # the (5,5,8) and (4,7,7) classes consume exactly the 18
        # complementary (4,5) pairs arising from the two offset patterns
        p = claw_partition_9()
        quads = set()
        fives = set()
        for part in p.parts:
            shape = tuple(sorted(s.bit_count() for s in part.sets))
            if shape == (5, 5, 8):
                fives.update(s for s in part.sets if s.bit_count() == 5)
            elif shape == (4, 7, 7):
                quads.update(s for s in part.sets if s.bit_count() == 4)
        assert len(quads) == 18 and len(fives) == 18
        assert {FULL9 ^ q for q in quads} == fives

    def test_deterministic(self):
        assert claw_partition_9() == claw_partition_9()
