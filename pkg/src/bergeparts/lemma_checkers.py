"""Brute-force and sampled verification of the tuple statements behind the
lower-bound proofs: triangles among medium/large sets, 4-cycles among
medium/large sets, and the 4-cycle-or-stem classification of quadruples.

Exhaustive mode covers the full tuple space (with sound pruning through
precomputed pattern-free tables); sampled mode draws distinct tuples from a
seeded counter-based generator.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence, Union

from ._sampling import (
    CounterRng,
    SizeRangePool,
    UniformSizePool,
    sample_tuple_batch,
)
from .berge import classify_quadruple, cycle4_exists, has_berge_triangle, QuadKind
from .errors import DomainError, TooLargeForExhaustive
from .setcore import GroundSet

VIOLATION_CAP = 100

EXHAUSTIVE_MAX_EVEN = 8
EXHAUSTIVE_MAX_ODD = 9


@dataclass(frozen=True)
class Exhaustive:
    pass


@dataclass(frozen=True)
class Sample:
    count: int
    seed: int


CheckMode = Union[Exhaustive, Sample]


@dataclass(frozen=True)
class CheckReport:
    n: int
    statement: str
    mode: CheckMode
    tuples_checked: int  # full space size (exhaustive) or samples drawn
    violation_count: int
    violations: tuple[tuple[int, ...], ...]  # capped at VIOLATION_CAP


def medium_masks(n: int) -> list[int]:
    """All n/2-subsets of {1..n} (even n), ascending by mask."""
    if n % 2:
        raise DomainError(f"medium sets need even n, got {n}")
    return sorted(
        sum(1 << (e - 1) for e in c) for c in combinations(range(1, n + 1), n // 2)
    )


def large_masks(n: int) -> list[int]:
    """All subsets of size at least floor(n/2)+1, ascending by mask."""
    out = []
    lo = n // 2 + 1
    for mask in range(1 << n):
        if mask.bit_count() >= lo:
            out.append(mask)
    return out


def _report(
    n: int,
    statement: str,
    mode: CheckMode,
    tuples_checked: int,
    violations: list[tuple[int, ...]],
    violation_count: int,
) -> CheckReport:
    return CheckReport(
        n=n,
        statement=statement,
        mode=mode,
        tuples_checked=tuples_checked,
        violation_count=violation_count,
        violations=tuple(violations[:VIOLATION_CAP]),
    )


def _collect(violations: list, count: int, item: tuple[int, ...]) -> int:
    if len(violations) < VIOLATION_CAP:
        violations.append(item)
    return count + 1


# ---------------------------------------------------------------------------
# Triangle statements: of five medium sets / three medium and one large /
# one medium and two large / three large, some three must form a triangle.


def _triangle_free_triples(masks: Sequence[int]) -> set[tuple[int, int, int]]:
    tf = set()
    m = len(masks)
    for i in range(m):
        a = masks[i]
        for j in range(i + 1, m):
            b = masks[j]
            for k in range(j + 1, m):
                if not has_berge_triangle(a, b, masks[k]):
                    tf.add((i, j, k))
    return tf


def _no_triangle(sets: Sequence[int]) -> bool:
    return all(
        not has_berge_triangle(a, b, c) for a, b, c in combinations(sets, 3)
    )


def check_triangle_lemma(n: int, mode: CheckMode) -> tuple[CheckReport, ...]:
    """Check the four triangle statements; a violation is a tuple in which no
    three members form a triangle."""
    if n % 2 or n < 4:
        raise DomainError(f"triangle statements need even n >= 4, got {n}")
    if isinstance(mode, Exhaustive) and n > EXHAUSTIVE_MAX_EVEN:
        raise TooLargeForExhaustive(
            f"exhaustive triangle check capped at n={EXHAUSTIVE_MAX_EVEN}"
        )
    reports = []

    if isinstance(mode, Exhaustive):
        med = medium_masks(n)
        lar = large_masks(n)
        tf = _triangle_free_triples(med)
        tf_sorted = sorted(tf)

        # statement 1: five medium sets.  A violating quintuple has all ten
        # sub-triples triangle-free, so enumerate extensions of free triples.
        violations: list[tuple[int, ...]] = []
        vcount = 0
        nm = len(med)
        for i, j, k in tf_sorted:
            for l in range(k + 1, nm):
                if (i, j, l) not in tf or (i, k, l) not in tf or (j, k, l) not in tf:
                    continue
                for m2 in range(l + 1, nm):
                    if (
                        (i, j, m2) in tf
                        and (i, k, m2) in tf
                        and (i, l, m2) in tf
                        and (j, k, m2) in tf
                        and (j, l, m2) in tf
                        and (k, l, m2) in tf
                    ):
                        vcount = _collect(
                            violations, vcount,
                            (med[i], med[j], med[k], med[l], med[m2]),
                        )
        reports.append(
            _report(n, "five-medium", mode, comb(nm, 5), violations, vcount)
        )

        # statement 2: three medium, one large; the medium triple must be free
        violations, vcount = [], 0
        for i, j, k in tf_sorted:
            a, b, c = med[i], med[j], med[k]
            for l_mask in lar:
                if (
                    not has_berge_triangle(a, b, l_mask)
                    and not has_berge_triangle(a, c, l_mask)
                    and not has_berge_triangle(b, c, l_mask)
                ):
                    vcount = _collect(violations, vcount, (a, b, c, l_mask))
        reports.append(
            _report(
                n, "three-medium-one-large", mode,
                comb(nm, 3) * len(lar), violations, vcount,
            )
        )

        # statement 3: one medium, two large
        violations, vcount = [], 0
        for li in range(len(lar)):
            for lj in range(li + 1, len(lar)):
                a, b = lar[li], lar[lj]
                for m_mask in med:
                    if not has_berge_triangle(m_mask, a, b):
                        vcount = _collect(violations, vcount, (m_mask, a, b))
        reports.append(
            _report(
                n, "one-medium-two-large", mode,
                nm * comb(len(lar), 2), violations, vcount,
            )
        )

        # statement 4: three large
        violations, vcount = [], 0
        for a, b, c in combinations(lar, 3):
            if not has_berge_triangle(a, b, c):
                vcount = _collect(violations, vcount, (a, b, c))
        reports.append(
            _report(n, "three-large", mode, comb(len(lar), 3), violations, vcount)
        )
        return tuple(reports)

    # sampled mode
    med_pool = UniformSizePool(n, n // 2)
    lar_pool = SizeRangePool(n, n // 2 + 1)
    specs = [
        ("five-medium", (med_pool,), (5,)),
        ("three-medium-one-large", (med_pool, lar_pool), (3, 1)),
        ("one-medium-two-large", (med_pool, lar_pool), (1, 2)),
        ("three-large", (lar_pool,), (3,)),
    ]
    for statement, pools, arities in specs:
        rng = CounterRng(mode.seed)
        violations, vcount = [], 0
        for parts in sample_tuple_batch(rng, pools, arities, mode.count):
            sets = tuple(s for group in parts for s in group)
            if _no_triangle(sets):
                vcount = _collect(violations, vcount, sets)
        reports.append(_report(n, statement, mode, mode.count, violations, vcount))
    return tuple(reports)


# ---------------------------------------------------------------------------
# 4-cycle statements.


def _no_c4_among(sets: Sequence[int]) -> bool:
    return all(
        not cycle4_exists(a, b, c, d) for a, b, c, d in combinations(sets, 4)
    )


def check_c4_claim(n: int, mode: CheckMode) -> CheckReport:
    """Count quadruples of medium-or-large sets classified as neither a Berge
    4-cycle nor a stem configuration."""
    if n % 2 or n < 4:
        raise DomainError(f"the quadruple claim needs even n >= 4, got {n}")
    if isinstance(mode, Exhaustive) and n > EXHAUSTIVE_MAX_EVEN:
        raise TooLargeForExhaustive(
            f"exhaustive claim check capped at n={EXHAUSTIVE_MAX_EVEN}"
        )
    ground = GroundSet(n)
    violations: list[tuple[int, ...]] = []
    vcount = 0
    if isinstance(mode, Exhaustive):
        fam = sorted(medium_masks(n) + large_masks(n))
        for quad in combinations(fam, 4):
            if classify_quadruple(*quad, ground).kind is QuadKind.NEITHER:
                vcount = _collect(violations, vcount, quad)
        checked = comb(len(fam), 4)
    else:
        pool = SizeRangePool(n, n // 2)
        rng = CounterRng(mode.seed)
        for parts in sample_tuple_batch(rng, (pool,), (4,), mode.count):
            quad = parts[0]
            if classify_quadruple(*quad, ground).kind is QuadKind.NEITHER:
                vcount = _collect(violations, vcount, quad)
        checked = mode.count
    return _report(
        n, "quadruples-medium-or-large", mode, checked, violations, vcount
    )


def check_even_c4_lemma(n: int, mode: CheckMode) -> tuple[CheckReport, ...]:
    """Check the four even-n 4-cycle statements; a violation is a tuple in
    which no four members form a Berge 4-cycle."""
    if n % 2 or n < 4:
        raise DomainError(f"even-n 4-cycle statements need even n >= 4, got {n}")
    if isinstance(mode, Exhaustive) and n > EXHAUSTIVE_MAX_EVEN:
        raise TooLargeForExhaustive(
            f"exhaustive 4-cycle check capped at n={EXHAUSTIVE_MAX_EVEN}"
        )
    reports = []

    if isinstance(mode, Exhaustive):
        med = medium_masks(n)
        lar = large_masks(n)
        nm = len(med)
        # 4-cycle-free quadruples within the medium family
        tf4: set[tuple[int, int, int, int]] = set()
        for idx in combinations(range(nm), 4):
            if not cycle4_exists(*(med[i] for i in idx)):
                tf4.add(idx)

        # statement 1: five medium sets; all five sub-quadruples must be free
        violations: list[tuple[int, ...]] = []
        vcount = 0
        for i, j, k, l in sorted(tf4):
            for m2 in range(l + 1, nm):
                if (
                    (i, j, k, m2) in tf4
                    and (i, j, l, m2) in tf4
                    and (i, k, l, m2) in tf4
                    and (j, k, l, m2) in tf4
                ):
                    vcount = _collect(
                        violations, vcount,
                        (med[i], med[j], med[k], med[l], med[m2]),
                    )
        reports.append(
            _report(n, "five-medium", mode, comb(nm, 5), violations, vcount)
        )

        # statement 2: four medium, one large; the medium quadruple must be free
        violations, vcount = [], 0
        for idx in sorted(tf4):
            quad = [med[i] for i in idx]
            for l_mask in lar:
                if all(
                    not cycle4_exists(*tri, l_mask)
                    for tri in combinations(quad, 3)
                ):
                    vcount = _collect(violations, vcount, (*quad, l_mask))
        reports.append(
            _report(
                n, "four-medium-one-large", mode,
                comb(nm, 4) * len(lar), violations, vcount,
            )
        )

        # statement 3: two medium, two large
        violations, vcount = [], 0
        for mi, mj in combinations(med, 2):
            for li, lj in combinations(lar, 2):
                if not cycle4_exists(mi, mj, li, lj):
                    vcount = _collect(violations, vcount, (mi, mj, li, lj))
        reports.append(
            _report(
                n, "two-medium-two-large", mode,
                comb(nm, 2) * comb(len(lar), 2), violations, vcount,
            )
        )

        # statement 4: one medium, three large
        violations, vcount = [], 0
        for m_mask in med:
            for tri in combinations(lar, 3):
                if not cycle4_exists(m_mask, *tri):
                    vcount = _collect(violations, vcount, (m_mask, *tri))
        reports.append(
            _report(
                n, "one-medium-three-large", mode,
                nm * comb(len(lar), 3), violations, vcount,
            )
        )
        return tuple(reports)

    med_pool = UniformSizePool(n, n // 2)
    lar_pool = SizeRangePool(n, n // 2 + 1)
    specs = [
        ("five-medium", (med_pool,), (5,), True),
        ("four-medium-one-large", (med_pool, lar_pool), (4, 1), True),
        ("two-medium-two-large", (med_pool, lar_pool), (2, 2), False),
        ("one-medium-three-large", (med_pool, lar_pool), (1, 3), False),
    ]
    for statement, pools, arities, need_subsets in specs:
        rng = CounterRng(mode.seed)
        violations, vcount = [], 0
        for parts in sample_tuple_batch(rng, pools, arities, mode.count):
            sets = tuple(s for group in parts for s in group)
            bad = (
                _no_c4_among(sets)
                if need_subsets
                else not cycle4_exists(*sets)
            )
            if bad:
                vcount = _collect(violations, vcount, sets)
        reports.append(_report(n, statement, mode, mode.count, violations, vcount))
    return tuple(reports)


def check_odd_c4_lemma(n: int, mode: CheckMode) -> CheckReport:
    """Check that four distinct large sets form a Berge 4-cycle (odd n)."""
    if n % 2 == 0 or n < 5:
        raise DomainError(f"the odd-n statement needs odd n >= 5, got {n}")
    if isinstance(mode, Exhaustive) and n > EXHAUSTIVE_MAX_ODD:
        raise TooLargeForExhaustive(
            f"exhaustive odd-n check capped at n={EXHAUSTIVE_MAX_ODD}"
        )
    violations: list[tuple[int, ...]] = []
    vcount = 0
    if isinstance(mode, Exhaustive):
        lar = large_masks(n)
        for quad in combinations(lar, 4):
            if not cycle4_exists(*quad):
                vcount = _collect(violations, vcount, quad)
        checked = comb(len(lar), 4)
    else:
        pool = SizeRangePool(n, (n + 1) // 2)
        rng = CounterRng(mode.seed)
        for parts in sample_tuple_batch(rng, (pool,), (4,), mode.count):
            quad = parts[0]
            if not cycle4_exists(*quad):
                vcount = _collect(violations, vcount, quad)
        checked = mode.count
    return _report(n, "four-large", mode, checked, violations, vcount)
