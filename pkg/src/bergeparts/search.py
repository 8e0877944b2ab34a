"""Exact minimum class counts by complete branch-and-bound coloring.

Sets are assigned to classes in a fixed order (descending size, then
ascending mask); a class may receive a set only if the class stays free of
the forbidden pattern, checked incrementally against precomputed completion
tables.  Color symmetry is broken by restricted growth: a set may open class
c only when classes 1..c-1 are in use, so every unordered partition is
visited exactly once.  The decision procedure is run for t = 0, 1, 2, ...
until satisfiable, which proves minimality outright.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .berge import PatternGraph, check_family
from .setcore import (
    Family,
    GroundSet,
    Part,
    Partition,
    canonicalize,
    enumerate_family,
)

DEFAULT_NODE_BUDGET = 200_000_000


@dataclass(frozen=True)
class SearchConfig:
    n: int
    pattern: PatternGraph
    family: Family = Family.POWER_SET_STAR
    node_budget: int = DEFAULT_NODE_BUDGET
    symmetry: bool = False  # reserved for orbit pruning; color order always on
    prove_unique: bool = False

    def __post_init__(self) -> None:
        if self.node_budget <= 0:
            raise ValueError("node_budget must be positive")


@dataclass(frozen=True)
class SearchResult:
    value: Optional[int]  # exact minimum when complete
    lower: int  # classes proven insufficient are below this
    upper: Optional[int]
    witness: Optional[Partition]
    nodes_expanded: int
    complete: bool


@dataclass(frozen=True)
class CensusResult:
    value: int
    count: Optional[int]  # distinct optima up to relabeling, when complete
    complete: bool
    nodes_expanded: int


class _Budget:
    __slots__ = ("remaining",)

    def __init__(self, limit: int) -> None:
        self.remaining = limit


class _BudgetExhausted(Exception):
    pass


class _CompletionTables:
    """For a fixed ordered family, lazily maps each (k-1)-subset of member
    indices to the frozenset of indices completing a forbidden pattern."""

    def __init__(self, masks: list[int], pattern: PatternGraph) -> None:
        self.masks = masks
        self.pattern = pattern
        self.k = pattern.edge_count
        self._table: dict[tuple[int, ...], frozenset[int]] = {}

    def completions(self, key: tuple[int, ...]) -> frozenset[int]:
        got = self._table.get(key)
        if got is not None:
            return got
        base = [self.masks[i] for i in key]
        bad = frozenset(
            j
            for j in range(len(self.masks))
            if j not in key
            and check_family(base + [self.masks[j]], self.pattern) is not None
        )
        self._table[key] = bad
        return bad


def _ordered_masks(n: int, family: Family) -> list[int]:
    masks = [
        m for m in enumerate_family(GroundSet(n), family) if m.bit_count() >= 2
    ]
    masks.sort(key=lambda m: (-m.bit_count(), m))
    return masks


def _search(
    masks: list[int],
    tables: _CompletionTables,
    t: int,
    budget: _Budget,
    on_solution,
) -> bool:
    """DFS over restricted-growth assignments into at most t free classes.

    Returns True once on_solution accepts a complete assignment (short
    circuit); collecting callers return False from on_solution to keep
    enumerating.  Raises _BudgetExhausted when the node budget runs out.
    """
    count = len(masks)
    k1 = tables.k - 1
    classes: list[list[int]] = []
    # per class, a stack of completion sets contributed by each added member
    forbidden: list[list[frozenset[int]]] = []

    def rec(idx: int) -> bool:
        if idx == count:
            return on_solution(classes)
        if budget.remaining <= 0:
            raise _BudgetExhausted
        budget.remaining -= 1
        for ci in range(len(classes)):
            cls = classes[ci]
            forb = forbidden[ci]
            if any(idx in fs for fs in forb):
                continue
            added: list[frozenset[int]] = []
            if len(cls) >= k1 - 1:
                fs: set[int] = set()
                for sub in combinations(cls, k1 - 1):
                    fs |= tables.completions(tuple(sorted((*sub, idx))))
                added.append(frozenset(fs))
            else:
                added.append(frozenset())
            cls.append(idx)
            forb.extend(added)
            if rec(idx + 1):
                return True
            forb.pop()
            cls.pop()
        if len(classes) < t:
            classes.append([idx])
            forbidden.append([frozenset()])
            if rec(idx + 1):
                return True
            classes.pop()
            forbidden.pop()
        return False

    return rec(0)


def _witness_partition(
    n: int, family: Family, masks: list[int], classes: list[list[int]]
) -> Partition:
    parts = [[masks[i] for i in cls] for cls in classes]
    if family is Family.POWER_SET:
        tiny = [
            m
            for m in enumerate_family(GroundSet(n), family)
            if m.bit_count() < 2
        ]
        if parts:
            parts[0] = parts[0] + tiny
        elif tiny:
            parts = [tiny]
    return Partition(
        GroundSet(n), family, tuple(Part(tuple(p)) for p in parts)
    )


def exact_f(cfg: SearchConfig) -> SearchResult:
    """Exact minimum number of pattern-free classes, with a verified witness.

    Sets that cannot host a pattern edge (the empty set and singletons) are
    assigned after the search; they never constrain freeness.
    """
    masks = _ordered_masks(cfg.n, cfg.family)
    tables = _CompletionTables(masks, cfg.pattern)
    budget = _Budget(cfg.node_budget)
    spent_before = cfg.node_budget

    t = 0
    while True:
        holder: dict[str, list[list[int]]] = {}

        def grab(classes: list[list[int]]) -> bool:
            holder["classes"] = [list(c) for c in classes]
            return True

        try:
            sat = _search(masks, tables, t, budget, grab)
        except _BudgetExhausted:
            return SearchResult(
                value=None,
                lower=t,  # every count below t was refuted
                upper=None,
                witness=None,
                nodes_expanded=spent_before - budget.remaining,
                complete=False,
            )
        if sat:
            witness = _witness_partition(cfg.n, cfg.family, masks, holder["classes"])
            return SearchResult(
                value=t,
                lower=t,
                upper=t,
                witness=witness,
                nodes_expanded=spent_before - budget.remaining,
                complete=True,
            )
        t += 1


def census_optimal(cfg: SearchConfig) -> CensusResult:
    """Number of optimal partitions up to relabeling of the ground set.

    Enumerates every complete coloring at the proven optimum and counts
    distinct canonical keys.  Requires prove_unique in the configuration.
    """
    if not cfg.prove_unique:
        raise ValueError("census requires prove_unique=True")
    base = exact_f(cfg)
    if not base.complete or base.value is None:
        return CensusResult(
            value=base.lower,
            count=None,
            complete=False,
            nodes_expanded=base.nodes_expanded,
        )
    masks = _ordered_masks(cfg.n, cfg.family)
    tables = _CompletionTables(masks, cfg.pattern)
    budget = _Budget(cfg.node_budget)
    keys: set[bytes] = set()

    def collect(classes: list[list[int]]) -> bool:
        keys.add(
            canonicalize(_witness_partition(cfg.n, cfg.family, masks, classes))
        )
        return False  # keep enumerating

    try:
        _search(masks, tables, base.value, budget, collect)
    except _BudgetExhausted:
        return CensusResult(
            value=base.value,
            count=None,
            complete=False,
            nodes_expanded=base.nodes_expanded + (cfg.node_budget - budget.remaining),
        )
    return CensusResult(
        value=base.value,
        count=len(keys),
        complete=True,
        nodes_expanded=base.nodes_expanded + (cfg.node_budget - budget.remaining),
    )
