"""Explicit pattern-free partitions of power sets.

quad_partition          -- 2^(n-2) classes of two complementary set pairs;
                           triangle-, 4-cycle-, and claw-free all at once.
exceptional_partition_5 -- the seven triangle-free classes special to n = 5.
modular_packing_partition -- residue-class packing yielding classes of
                           2(k-1) sets whose intersection graphs split into
                           components smaller than k; free of every connected
                           pattern with k edges.
claw_partition_6 / claw_partition_9 -- hand-built designs giving 15 and 126
                           claw-free classes on 6 and 9 points.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ._design9 import build_q_partition
from .errors import DesignConstructionFailed, DomainError, GroundTooSmall
from .setcore import (
    Family,
    GroundSet,
    Part,
    Partition,
    complement,
    elements_of,
    mask_of,
)


def quad_partition(ground: GroundSet) -> Partition:
    """Partition the full power set into 2^(n-2) classes
    {A, [n]\\A, A+{n}, [n]\\(A+{n})} for A inside {1..n-1}.

    A and its complement within {1..n-1} define the same class; the
    numerically smaller mask is kept as representative.
    """
    n = ground.n
    if n < 3:
        raise GroundTooSmall(f"quadruple classes need n >= 3, got {n}")
    full = ground.full_mask
    head = 1 << (n - 1)
    sub_full = head - 1  # mask of {1..n-1}
    parts = []
    for a in range(head):
        if a > sub_full ^ a:
            continue
        x1 = a
        x2 = full ^ a
        x3 = a | head
        x4 = full ^ x3
        parts.append(Part((x1, x2, x3, x4)))
    return Partition(ground, Family.POWER_SET, tuple(parts))


# The seven triangle-free classes of P*(5).  The two sunflower classes carry
# their two-element cores (24 and 13); without them two pair sets would be
# left uncovered, and adding them keeps both classes triangle-free.
_EXCEPTIONAL_5: tuple[tuple[tuple[int, ...], ...], ...] = (
    ((1, 2, 3, 4, 5), (1, 2, 3, 4)),
    ((2, 4), (1, 2, 4), (2, 3, 4), (2, 4, 5)),
    ((1, 3), (1, 2, 3), (1, 3, 4), (1, 3, 5)),
    ((1, 2), (3, 5), (1, 2, 3, 5), (3, 4, 5)),
    ((2, 3), (4, 5), (2, 3, 4, 5), (1, 4, 5)),
    ((3, 4), (1, 5), (1, 3, 4, 5), (1, 2, 5)),
    ((1, 4), (2, 5), (1, 2, 4, 5), (2, 3, 5)),
)


def exceptional_partition_5() -> Partition:
    """The unique (up to relabeling) seven-class triangle-free partition of
    the pairs-and-up subsets of {1..5}."""
    parts = tuple(
        Part(tuple(mask_of(s) for s in group)) for group in _EXCEPTIONAL_5
    )
    return Partition(GroundSet(5), Family.POWER_SET_STAR, parts)


@dataclass(frozen=True)
class ModularClass:
    """Sets of one size with a fixed element-sum residue mod n."""

    m: int
    r: int
    members: tuple[int, ...]


@dataclass(frozen=True)
class ConstructionStats:
    n: int
    k: int
    full_parts: int
    leftover_sets: int
    leftover_parts: int
    total_parts: int
    ratio: float  # total parts / (2^n / (2(k-1)))
    residues: tuple[tuple[int, int], ...]  # (m, chosen residue)


def modular_class(ground: GroundSet, m: int, r: int) -> ModularClass:
    """All m-subsets of {1..n} whose element sum is r mod n, ascending."""
    n = ground.n
    members = []
    for combo in combinations(range(1, n + 1), m):
        if sum(combo) % n == r:
            members.append(mask_of(combo))
    return ModularClass(m=m, r=r, members=tuple(sorted(members)))


def best_residue(ground: GroundSet, m: int) -> tuple[int, int]:
    """Residue maximizing the class size (smallest residue on ties) and the
    size achieved.  At least C(n,m)/n by pigeonhole."""
    n = ground.n
    counts = [0] * n
    for combo in combinations(range(1, n + 1), m):
        counts[sum(combo) % n] += 1
    best = max(counts)
    return counts.index(best), best


def modular_packing_partition(
    ground: GroundSet, k: int
) -> tuple[Partition, ConstructionStats]:
    """Partition the full power set into classes free of every connected
    pattern with k edges.

    For each size m with k-1 <= m < n/2, every member A of the largest
    residue class spawns floor(m/(k-1)) classes of 2(k-1) sets: a block of
    one-element deletions from A and the matching block from its complement.
    Everything left over is chunked, ascending by mask, into classes of at
    most k-1 sets, which cannot host k distinct hyperedges at all.
    """
    n = ground.n
    if k < 2:
        raise DomainError(f"patterns need k >= 2 edges, got k={k}")
    if n < 2 * (k - 1):
        raise GroundTooSmall(f"need n >= 2(k-1) = {2 * (k - 1)}, got {n}")

    full = ground.full_mask
    parts: list[Part] = []
    used: set[int] = set()
    residues: list[tuple[int, int]] = []
    block = k - 1
    for m in range(k - 1, (n + 1) // 2):
        r, _ = best_residue(ground, m)
        residues.append((m, r))
        cls = modular_class(ground, m, r)
        for a_mask in cls.members:
            a_elems = elements_of(a_mask)
            b_elems = elements_of(full ^ a_mask)
            for i in range(m // block):
                sets = []
                for j in range(block):
                    sets.append(a_mask & ~(1 << (a_elems[block * i + j] - 1)))
                for j in range(block):
                    sets.append((full ^ a_mask) & ~(1 << (b_elems[block * i + j] - 1)))
                parts.append(Part(tuple(sets)))
                used.update(sets)

    full_parts = len(parts)
    leftovers = [mask for mask in range(full + 1) if mask not in used]
    for i in range(0, len(leftovers), block):
        parts.append(Part(tuple(leftovers[i : i + block])))
    leftover_parts = len(parts) - full_parts
    denom = (1 << n) / (2 * block)
    stats = ConstructionStats(
        n=n,
        k=k,
        full_parts=full_parts,
        leftover_sets=len(leftovers),
        leftover_parts=leftover_parts,
        total_parts=len(parts),
        ratio=len(parts) / denom,
        residues=tuple(residues),
    )
    return Partition(ground, Family.POWER_SET, tuple(parts)), stats


# ---------------------------------------------------------------------------
# Claw-free designs on 6 and 9 points.


def _one_factorization_k6() -> tuple[tuple[int, ...], ...]:
    """The starter-rotation one-factorization of the complete graph on
    {1..6}: fix 6, rotate {1..5}.  Five perfect matchings as pair masks."""
    factors = []
    for r in range(5):
        pairs = [mask_of((6, r + 1))]
        for j in (1, 2):
            x = (r + j) % 5 + 1
            y = (r - j) % 5 + 1
            pairs.append(mask_of((x, y)))
        factors.append(tuple(sorted(pairs)))
    return tuple(factors)


def _complementary_triple_pairs_6() -> list[tuple[int, int]]:
    """The ten complementary triple pairs of {1..6}, ordered by the
    lexicographically least triple of each pair."""
    full = (1 << 6) - 1
    pairs = []
    for combo in combinations(range(1, 7), 3):
        t = mask_of(combo)
        c = full ^ t
        if elements_of(t) < elements_of(c):
            pairs.append((combo, (t, c)))
    pairs.sort(key=lambda item: item[0])
    return [masks for _, masks in pairs]


def claw_partition_6() -> Partition:
    """Fifteen claw-free classes covering the pairs-and-up subsets of {1..6}.

    One 3-regular class mixes the complementary triples 123/456 with the six
    pairs inside them; all other classes cover every point exactly twice.
    """
    full = (1 << 6) - 1
    parts: list[Part] = []
    # X: 123, 456, and the pairs inside them
    x_sets = [mask_of(s) for s in ((1, 2, 3), (4, 5, 6))]
    x_sets += [mask_of(p) for p in ((1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6))]
    parts.append(Part(tuple(x_sets)))
    # Y1..Y4: two complementary triple pairs each, skipping (123,456) and
    # reserving the lexicographically last pair for R
    triple_pairs = _complementary_triple_pairs_6()
    assert triple_pairs[0] == (mask_of((1, 2, 3)), mask_of((4, 5, 6)))
    usable = triple_pairs[1:-1]
    reserve = triple_pairs[-1]
    for i in range(0, 8, 2):
        t1, c1 = usable[i]
        t2, c2 = usable[i + 1]
        parts.append(Part((t1, c1, t2, c2)))
    # Z1..Z3: a pair plus the two 5-sets avoiding its elements
    for a, b in ((1, 4), (2, 5), (3, 6)):
        parts.append(
            Part(
                (
                    mask_of((a, b)),
                    full ^ (1 << (a - 1)),
                    full ^ (1 << (b - 1)),
                )
            )
        )
    # U1..U5: complements of the one-factorization's matchings
    for factor in _one_factorization_k6():
        parts.append(Part(tuple(full ^ pair for pair in factor)))
    # W: the pair sets of the 6-cycle 1,5,3,4,2,6
    cycle = (1, 5, 3, 4, 2, 6)
    w_sets = [
        mask_of((cycle[i], cycle[(i + 1) % 6])) for i in range(6)
    ]
    parts.append(Part(tuple(w_sets)))
    # R: the whole ground set plus the reserved triple pair
    parts.append(Part((full, reserve[0], reserve[1])))
    return Partition(GroundSet(6), Family.POWER_SET_STAR, tuple(parts))


def _elem9(x: int) -> int:
    """Wrap an integer into {1..9} (residue 0 becomes 9)."""
    r = x % 9
    return 9 if r == 0 else r


@dataclass(frozen=True)
class DesignTables9:
    """Ingredients of the 126-class design on 9 points."""

    q_classes: tuple[tuple[int, int, int], ...]  # 28 parallel classes
    sts_classes: tuple[int, ...]  # indices of the Steiner classes in q_classes
    u_parts: tuple[tuple[int, ...], ...]
    w_parts: tuple[tuple[int, ...], ...]
    r_parts: tuple[tuple[int, ...], ...]
    t_parts: tuple[tuple[int, ...], ...]


def _build_design_tables_9() -> DesignTables9:
    full = (1 << 9) - 1
    q_classes = build_q_partition()

    a_masks = []
    b_masks = []
    u_parts = []
    w_parts = []
    r_parts = []
    for i in range(1, 10):
        a_i = mask_of(_elem9(i + d) for d in (1, 2, 3, 6))
        b_i = mask_of(_elem9(i + d) for d in (4, 5, 7, 8))
        i_bit = 1 << (_elem9(i) - 1)
        c_i = full ^ mask_of((_elem9(i + 1), _elem9(i + 2)))
        d_i = full ^ mask_of((_elem9(i + 3), _elem9(i + 6)))
        e_i = full ^ mask_of((_elem9(i + 4), _elem9(i + 8)))
        f_i = full ^ mask_of((_elem9(i + 5), _elem9(i + 7)))
        a_masks.append(a_i)
        b_masks.append(b_i)
        u_parts.append((a_i | i_bit, b_i | i_bit, a_i | b_i))
        w_parts.append((a_i, c_i, d_i))
        r_parts.append((b_i, e_i, f_i))

    consumed_quads = set(a_masks) | set(b_masks)
    if len(consumed_quads) != 18:
        raise DesignConstructionFailed("offset 4-sets are not pairwise distinct")
    remaining = [
        mask_of(c)
        for c in combinations(range(1, 10), 4)
        if mask_of(c) not in consumed_quads
    ]
    remaining.sort(key=elements_of)
    if len(remaining) != 108:
        raise DesignConstructionFailed(
            f"expected 108 leftover 4-sets, got {len(remaining)}"
        )
    t_parts = []
    for i in range(0, 108, 2):
        s1, s2 = remaining[i], remaining[i + 1]
        t_parts.append((s1, full ^ s1, s2, full ^ s2))

    return DesignTables9(
        q_classes=q_classes,
        sts_classes=(0, 1, 2, 3),
        u_parts=tuple(u_parts),
        w_parts=tuple(w_parts),
        r_parts=tuple(r_parts),
        t_parts=tuple(t_parts),
    )


def claw_partition_9() -> Partition:
    """126 claw-free classes covering the pairs-and-up subsets of {1..9}.

    Class census: 4 Steiner classes extended by their covered pairs, 12
    pairings of the other triple classes, 28 complements of triple classes,
    9 double covers of shape (5,5,8), 18 of shape (4,7,7), 54 from paired
    complementary (4,5)-splits, and the ground set alone.
    """
    full = (1 << 9) - 1
    tables = _build_design_tables_9()
    parts: list[Part] = []
    # X1..X4: Steiner classes plus the nine pairs their triples cover
    for ci in tables.sts_classes:
        sets = list(tables.q_classes[ci])
        for t in tables.q_classes[ci]:
            elems = elements_of(t)
            for pair in combinations(elems, 2):
                sets.append(mask_of(pair))
        parts.append(Part(tuple(sets)))
    # Y1..Y12: the remaining 24 classes of Q, paired in order
    rest = [
        tables.q_classes[i]
        for i in range(len(tables.q_classes))
        if i not in tables.sts_classes
    ]
    for i in range(0, 24, 2):
        parts.append(Part(tuple(rest[i]) + tuple(rest[i + 1])))
    # Z1..Z28: complements of all 28 classes
    for cls in tables.q_classes:
        parts.append(Part(tuple(full ^ t for t in cls)))
    for group in (tables.u_parts, tables.w_parts, tables.r_parts, tables.t_parts):
        for sets in group:
            parts.append(Part(tuple(sets)))
    parts.append(Part((full,)))
    return Partition(GroundSet(9), Family.POWER_SET_STAR, tuple(parts))
