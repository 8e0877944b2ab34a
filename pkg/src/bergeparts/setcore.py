"""Ground-set arithmetic, subset families, partitions, validation, canonical forms.

Subsets of the ground set {1, ..., n} are represented as integer bitmasks:
bit i-1 is set iff element i is in the subset.  All operations here are pure
functions on immutable values.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from typing import Iterable, Iterator

from .errors import GroundTooLarge

MAX_GROUND = 63
CANONICAL_MAX_GROUND = 8


def mask_of(elements: Iterable[int]) -> int:
    """Bitmask for a collection of 1-based elements."""
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    """1-based elements of a mask, ascending."""
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def mask_size(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class GroundSet:
    """The labeled ground set {1, ..., n}; capped so a subset fits one word."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"ground set needs at least one element, got n={self.n}")
        if self.n > MAX_GROUND:
            raise GroundTooLarge(f"n={self.n} exceeds the cap of {MAX_GROUND}")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def contains_mask(self, mask: int) -> bool:
        return 0 <= mask <= self.full_mask


class Family(Enum):
    POWER_SET = "power_set"
    POWER_SET_STAR = "power_set_star"


class FamilyClass(Enum):
    MEDIUM = "medium"
    LARGE = "large"
    SMALL = "small"


def family_class(mask: int, ground: GroundSet) -> FamilyClass:
    """Classify a subset by size: medium = exactly n/2 (even n only),
    large = at least floor(n/2)+1, small otherwise."""
    size = mask.bit_count()
    n = ground.n
    if size >= n // 2 + 1:
        return FamilyClass.LARGE
    if n % 2 == 0 and size == n // 2:
        return FamilyClass.MEDIUM
    return FamilyClass.SMALL


@dataclass(frozen=True)
class Part:
    """One partition class: an ordered list of pairwise-distinct subsets."""

    sets: tuple[int, ...]

    @staticmethod
    def of(*subsets: Iterable[int] | int) -> "Part":
        masks = tuple(s if isinstance(s, int) else mask_of(s) for s in subsets)
        return Part(masks)

    def __len__(self) -> int:
        return len(self.sets)


@dataclass(frozen=True)
class Partition:
    """A list of parts meant to cover a declared family exactly once."""

    ground: GroundSet
    family: Family
    parts: tuple[Part, ...]

    @property
    def n(self) -> int:
        return self.ground.n

    def all_masks(self) -> Iterator[int]:
        for part in self.parts:
            yield from part.sets


def partition_from_parts(
    n: int, family: Family, parts: Iterable[Iterable[int]]
) -> Partition:
    """Build a Partition from mask iterables (no validation performed)."""
    return Partition(
        GroundSet(n), family, tuple(Part(tuple(p)) for p in parts)
    )


def enumerate_family(ground: GroundSet, family: Family) -> Iterator[int]:
    """Yield every member of the family exactly once, ascending by mask."""
    if family is Family.POWER_SET:
        yield from range(1 << ground.n)
    else:
        for mask in range(1 << ground.n):
            if mask.bit_count() >= 2:
                yield mask


def family_size(ground: GroundSet, family: Family) -> int:
    if family is Family.POWER_SET:
        return 1 << ground.n
    return (1 << ground.n) - 1 - ground.n


def complement(mask: int, ground: GroundSet) -> int:
    """The complement of a subset within {1, ..., n}."""
    if not ground.contains_mask(mask):
        raise ValueError(f"mask {mask} does not fit in a ground set of size {ground.n}")
    return ground.full_mask ^ mask


@dataclass(frozen=True)
class Violation:
    kind: str  # "duplicate" | "missing" | "foreign"
    mask: int
    part_index: int | None


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]

    def summary(self) -> str:
        if self.ok:
            return "ok"
        kinds: dict[str, int] = {}
        for v in self.violations:
            kinds[v.kind] = kinds.get(v.kind, 0) + 1
        return ", ".join(f"{k}={c}" for k, c in sorted(kinds.items()))


def validate_partition(p: Partition) -> ValidationReport:
    """Check disjointness and exact coverage of the declared family."""
    ground = p.ground
    is_star = p.family is Family.POWER_SET_STAR
    violations: list[Violation] = []
    seen: set[int] = set()
    for idx, part in enumerate(p.parts):
        for mask in part.sets:
            if not ground.contains_mask(mask) or (is_star and mask.bit_count() < 2):
                violations.append(Violation("foreign", mask, idx))
                continue
            if mask in seen:
                violations.append(Violation("duplicate", mask, idx))
            else:
                seen.add(mask)
    for mask in enumerate_family(ground, p.family):
        if mask not in seen:
            violations.append(Violation("missing", mask, None))
    return ValidationReport(ok=not violations, violations=tuple(violations))


def permute_mask(mask: int, perm: tuple[int, ...]) -> int:
    """Apply a permutation of {1..n} to a mask; perm[i] is the image of i+1."""
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << (perm[i] - 1)
        mask >>= 1
        i += 1
    return out


_PERM_TABLE_CACHE: dict[int, list[list[int]]] = {}


def _perm_tables(n: int) -> list[list[int]]:
    """Per-permutation mask translation tables (cached for n <= 6)."""
    cached = _PERM_TABLE_CACHE.get(n)
    if cached is not None:
        return cached
    tables = []
    for perm in permutations(range(1, n + 1)):
        tables.append([permute_mask(m, perm) for m in range(1 << n)])
    if n <= 6:
        _PERM_TABLE_CACHE[n] = tables
    return tables


def apply_permutation(p: Partition, perm: tuple[int, ...]) -> Partition:
    """Relabel every set of the partition by a permutation of {1..n}."""
    parts = tuple(
        Part(tuple(permute_mask(m, perm) for m in part.sets)) for part in p.parts
    )
    return Partition(p.ground, p.family, parts)


def _normal_form(parts: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(part)) for part in parts))


def _key_bytes(n: int, family: Family, normal: tuple[tuple[int, ...], ...]) -> bytes:
    out = bytearray()
    out.append(n)
    out.append(0 if family is Family.POWER_SET else 1)
    for part in normal:
        out.append(len(part))
        out.extend(part)
    return bytes(out)


def canonicalize(p: Partition) -> bytes:
    """Canonical key, identical for two partitions iff one is a relabeling of
    the other.  Explicit minimum over all n! relabelings; n <= 8 only."""
    n = p.ground.n
    if n > CANONICAL_MAX_GROUND:
        raise GroundTooLarge(f"canonical keys take n! relabelings; n={n} > 8")
    raw_parts = [part.sets for part in p.parts]
    best: bytes | None = None
    if n <= 6:
        for table in _perm_tables(n):
            normal = _normal_form(tuple(table[m] for m in part) for part in raw_parts)
            key = _key_bytes(n, p.family, normal)
            if best is None or key < best:
                best = key
    else:
        for perm in permutations(range(1, n + 1)):
            normal = _normal_form(
                tuple(permute_mask(m, perm) for m in part) for part in raw_parts
            )
            key = _key_bytes(n, p.family, normal)
            if best is None or key < best:
                best = key
    assert best is not None
    return best


def canonical_order(p: Partition) -> Partition:
    """Sort sets within parts and parts by mask tuples (no relabeling)."""
    normal = _normal_form(part.sets for part in p.parts)
    return Partition(p.ground, p.family, tuple(Part(part) for part in normal))


# ---------------------------------------------------------------------------
# Serialization.  JSON schema:
#   {"n": int, "family": "power_set"|"power_set_star", "parts": [[[ints]...]...]}
# Text format: one part per line, sets separated by "|", elements ascending and
# comma-separated; lines and in-part order ascending by mask.


def partition_to_json_dict(p: Partition) -> dict:
    return {
        "n": p.ground.n,
        "family": p.family.value,
        "parts": [
            [list(elements_of(m)) for m in part.sets] for part in p.parts
        ],
    }


def partition_from_json_dict(d: dict) -> Partition:
    n = int(d["n"])
    family = Family(d["family"])
    parts = tuple(
        Part(tuple(mask_of(s) for s in part)) for part in d["parts"]
    )
    return Partition(GroundSet(n), family, parts)


def partition_to_json(p: Partition) -> str:
    return json.dumps(partition_to_json_dict(p), sort_keys=True, indent=2) + "\n"


def partition_from_json(text: str) -> Partition:
    return partition_from_json_dict(json.loads(text))


def partition_to_text(p: Partition) -> str:
    lines = []
    for part in canonical_order(p).parts:
        if not part.sets:
            raise ValueError("empty parts cannot be written in text format")
        if part.sets == (0,):
            # the line would be blank and indistinguishable from a separator
            raise ValueError(
                "a class holding only the empty set cannot be written in "
                "text format; use JSON"
            )
        lines.append("|".join(",".join(map(str, elements_of(m))) for m in part.sets))
    return "\n".join(lines) + "\n"


def partition_from_text(
    text: str, n: int | None = None, family: Family | None = None
) -> Partition:
    """Parse the text format.  n and family are inferred when omitted: n from
    the largest element, family from the presence of sets of size < 2."""
    parts = []
    max_elem = 1
    has_tiny = False
    for line in text.splitlines():
        if not line.strip():
            continue
        masks = []
        for token in line.split("|"):
            token = token.strip()
            elems = [int(x) for x in token.split(",") if x.strip()] if token else []
            if elems:
                max_elem = max(max_elem, *elems)
            if len(elems) < 2:
                has_tiny = True
            masks.append(mask_of(elems))
        parts.append(tuple(masks))
    if n is None:
        n = max_elem
    if family is None:
        family = Family.POWER_SET if has_tiny else Family.POWER_SET_STAR
    return Partition(GroundSet(n), family, tuple(Part(p) for p in parts))
