"""Core mask/partition machinery: enumeration, validation, canonical keys,
serialization round trips."""
from __future__ import annotations

import random

import pytest

from bergeparts.constructors import exceptional_partition_5, quad_partition
from bergeparts.errors import GroundTooLarge
from bergeparts.setcore import (
    Family,
    FamilyClass,
    GroundSet,
    Part,
    Partition,
    apply_permutation,
    canonical_order,
    canonicalize,
    complement,
    elements_of,
    enumerate_family,
    family_class,
    family_size,
    mask_of,
    partition_from_json,
    partition_from_parts,
    partition_from_text,
    partition_to_json,
    partition_to_text,
    validate_partition,
)


def test_ground_set_bounds():
    GroundSet(1)
    GroundSet(63)
    with pytest.raises(ValueError):
        GroundSet(0)
    with pytest.raises(GroundTooLarge):
        GroundSet(64)


def test_mask_roundtrip():
    assert mask_of([1, 2, 4]) == 0b1011
    assert elements_of(0b1011) == (1, 2, 4)
    assert elements_of(0) == ()


def test_enumerate_family_counts():
    g3 = GroundSet(3)
    assert list(enumerate_family(g3, Family.POWER_SET)) == list(range(8))
    star3 = list(enumerate_family(g3, Family.POWER_SET_STAR))
    assert star3 == [3, 5, 6, 7]  # {12, 13, 23, 123}
    assert len(list(enumerate_family(GroundSet(5), Family.POWER_SET_STAR))) == 26
    for n in (1, 4, 6):
        g = GroundSet(n)
        for fam in Family:
            members = list(enumerate_family(g, fam))
            assert len(members) == family_size(g, fam)
            assert members == sorted(set(members))


def test_complement():
    g5 = GroundSet(5)
    assert complement(mask_of([1, 2]), g5) == mask_of([3, 4, 5])
    assert complement(0, GroundSet(4)) == mask_of([1, 2, 3, 4])
    assert complement(mask_of([1, 2, 4]), GroundSet(6)) == mask_of([3, 5, 6])
    rnd = random.Random(11)
    for _ in range(200):
        n = rnd.randint(1, 20)
        g = GroundSet(n)
        m = rnd.randrange(1 << n)
        assert complement(complement(m, g), g) == m
        assert m.bit_count() + complement(m, g).bit_count() == n


def test_family_class():
    g6 = GroundSet(6)
    assert family_class(mask_of([1, 2, 3]), g6) is FamilyClass.MEDIUM
    assert family_class(mask_of([1, 2, 3, 4]), g6) is FamilyClass.LARGE
    assert family_class(mask_of([1, 2]), g6) is FamilyClass.SMALL
    g5 = GroundSet(5)
    assert family_class(mask_of([1, 2, 3]), g5) is FamilyClass.LARGE
    assert family_class(mask_of([1, 2]), g5) is FamilyClass.SMALL


def test_validate_detects_each_violation_kind():
    ok = validate_partition(quad_partition(GroundSet(3)))
    assert ok.ok and not ok.violations

    dup = partition_from_parts(
        3, Family.POWER_SET,
        [[0, 3], [3, 5, 6, 7], [1, 2, 4]],
    )
    rep = validate_partition(dup)
    assert not rep.ok
    assert any(v.kind == "duplicate" and v.mask == 3 for v in rep.violations)

    missing = partition_from_parts(3, Family.POWER_SET, [[0, 1, 2, 3]])
    rep = validate_partition(missing)
    assert {v.kind for v in rep.violations} == {"missing"}

    foreign = partition_from_parts(3, Family.POWER_SET_STAR, [[1], [3, 5, 6, 7]])
    rep = validate_partition(foreign)
    assert any(v.kind == "foreign" and v.part_index == 0 for v in rep.violations)


def test_exceptional_partition_validates():
    rep = validate_partition(exceptional_partition_5())
    assert rep.ok
    assert len(exceptional_partition_5().parts) == 7


def test_canonicalize_permutation_invariance():
    rnd = random.Random(5)
    for n in (4, 5, 6, 7):
        p = quad_partition(GroundSet(n))
        key = canonicalize(p)
        perm = list(range(1, n + 1))
        rnd.shuffle(perm)
        assert canonicalize(apply_permutation(p, tuple(perm))) == key


def test_canonicalize_exceptional_under_cycle():
    p = exceptional_partition_5()
    image = apply_permutation(p, (3, 2, 5, 4, 1))  # the 3-cycle (1 3 5)
    assert canonicalize(image) == canonicalize(p)


def test_canonicalize_distinguishes_structure():
    quad = quad_partition(GroundSet(4))
    # merge two classes and split another to get a structurally different
    # 4-part cover of the same family
    parts = [list(p.sets) for p in quad.parts]
    other = partition_from_parts(
        4,
        Family.POWER_SET,
        [parts[0] + parts[1], parts[2][:2], parts[2][2:], parts[3]],
    )
    assert validate_partition(other).ok
    assert canonicalize(other) != canonicalize(quad)


def test_canonicalize_rejects_large_ground():
    p = quad_partition(GroundSet(9))
    with pytest.raises(GroundTooLarge):
        canonicalize(p)


def test_json_roundtrip():
    for p in (quad_partition(GroundSet(4)), exceptional_partition_5()):
        text = partition_to_json(p)
        again = partition_from_json(text)
        assert again == p
        assert partition_to_json(again) == text


def test_text_roundtrip_and_canonical_layout():
    p = quad_partition(GroundSet(3))
    text = partition_to_text(p)
    # empty set renders as an empty field; layout ascending by mask
    assert text.splitlines()[0] == "|1,2|3|1,2,3"
    again = partition_from_text(text)
    assert again.family is Family.POWER_SET
    assert again.ground.n == 3
    assert canonical_order(again) == canonical_order(p)
    assert partition_to_text(again) == text

    star = exceptional_partition_5()
    text = partition_to_text(star)
    again = partition_from_text(text)
    assert again.family is Family.POWER_SET_STAR
    assert canonical_order(again) == canonical_order(star)


def test_serialization_fuzz_roundtrip():
    rnd = random.Random(2)
    for _ in range(40):
        n = rnd.randint(2, 6)
        masks = [m for m in range(1 << n) if m.bit_count() >= 2]
        rnd.shuffle(masks)
        parts = []
        i = 0
        while i < len(masks):
            j = min(len(masks), i + rnd.randint(1, 4))
            parts.append(masks[i:j])
            i = j
        p = partition_from_parts(n, Family.POWER_SET_STAR, parts)
        assert partition_from_json(partition_to_json(p)) == p
        text = partition_to_text(p)
        assert partition_to_text(partition_from_text(text)) == text


def test_text_format_rejects_lone_empty_set():
    p = partition_from_parts(
        2, Family.POWER_SET, [[0], [1, 2], [3]]
    )
    with pytest.raises(ValueError):
        partition_to_text(p)


def test_part_of_accepts_iterables_and_masks():
    part = Part.of([1, 2], 8, [3])
    assert part.sets == (mask_of([1, 2]), 8, mask_of([3]))
