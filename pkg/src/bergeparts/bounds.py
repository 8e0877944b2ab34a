"""Exact integer evaluation of the known bounds on the minimum number of
pattern-free classes, plus a consolidated lookup per (n, pattern).

All arithmetic is arbitrary-precision; ceilings of rationals are exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from .berge import PatternGraph, recognize
from .constructors import modular_packing_partition
from .errors import DomainError, UnsupportedPattern
from .setcore import GroundSet


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class ProvenanceEntry:
    kind: str  # "lower" | "upper" | "exact" | "note"
    label: str
    value: Optional[int] = None


@dataclass(frozen=True)
class BoundsReport:
    lower: int
    upper: int
    exact: Optional[int]
    provenance: tuple[ProvenanceEntry, ...]

    def __post_init__(self) -> None:
        if self.exact is not None and not (self.lower <= self.exact <= self.upper):
            raise ValueError("exact value outside [lower, upper]")
        if self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")


def star_lower_bound(n: int, k: int) -> int:
    """Degree-counting lower bound for star-free partitions: every class has
    maximum degree below k on the sets of size at least k, so

        ceil((2^(n-1) - sum_{j<=k-2} C(n-1,j)) / (k-1))

    classes are needed.  The equivalent degree-sum form is computed too and
    the two are asserted equal.
    """
    if k < 2 or k > n:
        raise DomainError(f"star bound needs 2 <= k <= n, got k={k}, n={n}")
    a = _ceil_div((1 << (n - 1)) - sum(comb(n - 1, j) for j in range(k - 1)), k - 1)
    b = _ceil_div(
        n * (1 << (n - 1)) - sum(j * comb(n, j) for j in range(1, k)),
        (k - 1) * n,
    )
    assert a == b, (a, b)
    return a


def triangle_value(n: int) -> int:
    """The exact minimum number of triangle-free classes: 2^(n-2) except for
    the five-point ground set, where it is 7."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    if n <= 2:
        return 1
    if n == 5:
        return 7
    return 1 << (n - 2)


def _quad_upper(n: int) -> int:
    return 1 << (n - 2)


def c4_bounds(n: int, *, measure_construction: bool = False) -> BoundsReport:
    """Bounds for 4-cycle-free partitions.

    Lower bounds come from counting large and medium sets per class; they
    only apply from n = 26 (even) / n = 27 (odd) on.  The upper bound is the
    complementary-quadruple partition, optionally compared against the
    measured modular packing.
    """
    if n < 4:
        raise DomainError(f"4-cycle bounds need n >= 4, got {n}")
    prov: list[ProvenanceEntry] = []
    if n % 2 == 0 and n >= 26:
        # ceil((2^n + C(n, n/2)/3) / 6) computed without rounding error
        lower = _ceil_div(3 * (1 << n) + comb(n, n // 2), 18)
        prov.append(
            ProvenanceEntry(
                "lower", "large/medium class-counting bound (even n)", lower
            )
        )
    elif n % 2 == 1 and n >= 27:
        lower = _ceil_div(1 << (n - 1), 3)
        prov.append(
            ProvenanceEntry("lower", "large-set counting bound (odd n)", lower)
        )
    else:
        lower = 1
        prov.append(
            ProvenanceEntry("lower", "class-counting thresholds not met", 1)
        )
    upper = _quad_upper(n)
    prov.append(
        ProvenanceEntry("upper", "complementary-quadruple partition", upper)
    )
    if measure_construction:
        _, stats = modular_packing_partition(GroundSet(n), 4)
        prov.append(
            ProvenanceEntry(
                "upper", "modular packing construction (measured)", stats.total_parts
            )
        )
        upper = min(upper, stats.total_parts)
    return BoundsReport(lower=lower, upper=upper, exact=None, provenance=tuple(prov))


_CLAW_DESIGN_UPPERS = {6: 15, 9: 126}


def known_bounds(
    n: int, g: PatternGraph, *, measure_construction: bool = False
) -> BoundsReport:
    """Best certified bounds for partitioning the power set of {1..n} into
    classes free of Berge copies of g.

    Handles cycles, paths, stars, and general connected patterns; the
    asymptotically matching construction is reported as a measured count,
    never as a certified formula.
    """
    if not g.is_connected():
        raise UnsupportedPattern("bounds are only maintained for connected patterns")
    k = g.edge_count
    if k < 2:
        raise DomainError("patterns with a single edge are out of scope")
    ground = GroundSet(n)
    if n < g.vertex_count:
        # no injective vertex image exists, so one class suffices
        prov = (
            ProvenanceEntry(
                "exact",
                "pattern needs more distinct elements than the ground set has",
                1,
            ),
        )
        return BoundsReport(lower=1, upper=1, exact=1, provenance=prov)

    kind = recognize(g)
    prov: list[ProvenanceEntry] = []

    if kind == ("cycle", 3):
        exact = triangle_value(n)
        prov.append(
            ProvenanceEntry("exact", "exact triangle-free partition number", exact)
        )
        return BoundsReport(lower=exact, upper=exact, exact=exact, provenance=tuple(prov))

    lower = 1
    if kind == ("cycle", 4):
        rep = c4_bounds(n, measure_construction=measure_construction)
        return rep
    if kind is not None and kind[0] == "star":
        lower = star_lower_bound(n, k)
        prov.append(
            ProvenanceEntry("lower", "degree-counting bound for star-free classes", lower)
        )
    else:
        prov.append(
            ProvenanceEntry("lower", "no certified lower bound at this size", 1)
        )

    uppers: list[tuple[str, int]] = []
    if kind in (("cycle", 3), ("cycle", 4), ("star", 3)) and n >= 3:
        uppers.append(("complementary-quadruple partition", _quad_upper(n)))
    if kind is not None and kind[0] == "star" and k == 3 and n in _CLAW_DESIGN_UPPERS:
        uppers.append(
            (f"explicit {n}-point claw-free design", _CLAW_DESIGN_UPPERS[n])
        )
    # chunking the power set into classes of k-1 sets is always pattern-free
    uppers.append(("chunks of k-1 sets", _ceil_div(1 << n, k - 1)))
    if measure_construction and n >= 2 * (k - 1):
        _, stats = modular_packing_partition(ground, k)
        uppers.append(("modular packing construction (measured)", stats.total_parts))
    upper = min(v for _, v in uppers)
    for label, v in uppers:
        prov.append(ProvenanceEntry("upper", label, v))
    return BoundsReport(lower=lower, upper=upper, exact=None, provenance=tuple(prov))
