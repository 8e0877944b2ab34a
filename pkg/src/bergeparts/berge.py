"""Berge-pattern detection: embeddings, fast detectors, and certificates.

A family of subsets hosts a Berge copy of a graph G when its members can be
put in bijection with the edges of G so that each graph edge is contained in
its image.  The detectors below decide containment for arbitrary connected
patterns, with fast paths for triangles, 4-cycles, stars, and paths built on
systems of distinct representatives (bipartite matching over bitmasks).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence

from .errors import ArityMismatch, InvalidPartition
from .setcore import (
    GroundSet,
    Part,
    Partition,
    validate_partition,
)


@dataclass(frozen=True)
class PatternGraph:
    """The forbidden graph: labeled vertices 1..vertex_count, simple edges,
    no isolated vertices."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        touched = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (1 <= u < v <= self.vertex_count):
                raise ValueError(f"edge ({u},{v}) outside 1..{self.vertex_count}")
            if (u, v) in seen:
                raise ValueError(f"repeated edge ({u},{v})")
            seen.add((u, v))
            touched.add(u)
            touched.add(v)
        if len(touched) != self.vertex_count:
            missing = sorted(set(range(1, self.vertex_count + 1)) - touched)
            raise ValueError(f"isolated vertices not allowed: {missing}")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return False
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.vertex_count + 1)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        stack, seen = [1], {1}
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.vertex_count

    @staticmethod
    def from_edges(pairs: Iterable[tuple[int, int]]) -> "PatternGraph":
        """Build from arbitrary positive labels; labels are compacted to 1..V."""
        pairs = [tuple(sorted(p)) for p in pairs]
        labels = sorted({x for p in pairs for x in p})
        remap = {x: i + 1 for i, x in enumerate(labels)}
        edges = tuple(sorted((remap[u], remap[v]) for u, v in pairs))
        return PatternGraph(len(labels), edges)

    @staticmethod
    def cycle(k: int) -> "PatternGraph":
        if k < 3:
            raise ValueError(f"cycles need at least 3 edges, got {k}")
        edges = tuple((i, i + 1) for i in range(1, k)) + ((1, k),)
        return PatternGraph(k, tuple(sorted(edges)))

    @staticmethod
    def path(k: int) -> "PatternGraph":
        if k < 1:
            raise ValueError(f"paths need at least 1 edge, got {k}")
        return PatternGraph(k + 1, tuple((i, i + 1) for i in range(1, k + 1)))

    @staticmethod
    def star(k: int) -> "PatternGraph":
        if k < 1:
            raise ValueError(f"stars need at least 1 edge, got {k}")
        return PatternGraph(k + 1, tuple((1, i) for i in range(2, k + 2)))

    @staticmethod
    def parse(text: str) -> "PatternGraph":
        """CLI syntax: c3, c4, cK:<k>, pK:<k>, sK:<k>, or edges:1-2,2-3,..."""
        text = text.strip().lower()
        m = re.fullmatch(r"([cps])(?:k:)?(\d+)", text)
        if m:
            kind, k = m.group(1), int(m.group(2))
            if kind == "c":
                return PatternGraph.cycle(k)
            if kind == "p":
                return PatternGraph.path(k)
            return PatternGraph.star(k)
        if text.startswith("edges:"):
            pairs = []
            for token in text[len("edges:"):].split(","):
                a, b = token.split("-")
                pairs.append((int(a), int(b)))
            return PatternGraph.from_edges(pairs)
        raise ValueError(f"cannot parse pattern {text!r}")

    def describe(self) -> str:
        kind = recognize(self)
        if kind is not None:
            prefix = {"cycle": "c", "path": "p", "star": "s"}[kind[0]]
            return f"{prefix}{kind[1]}"
        return "edges:" + ",".join(f"{u}-{v}" for u, v in self.edges)


def recognize(g: PatternGraph) -> Optional[tuple[str, int]]:
    """Recognize cycles, paths, and stars by degree sequence; None otherwise."""
    k = g.edge_count
    deg: dict[int, int] = {}
    for u, v in g.edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    degs = sorted(deg.values())
    if g.vertex_count == k and all(d == 2 for d in degs) and g.is_connected():
        return ("cycle", k)
    if k >= 2 and g.vertex_count == k + 1 and degs == [1] * k + [k]:
        return ("star", k)
    if (
        g.vertex_count == k + 1
        and degs == [1, 1] + [2] * (k - 1)
        and g.is_connected()
    ):
        return ("path", k)
    if k == 1:
        return ("path", 1)
    return None


@dataclass(frozen=True)
class BergeEmbedding:
    """Certificate of a Berge copy: injective vertex map (pattern vertex ->
    ground element) and a bijection from pattern edges to hyperedges."""

    vertex_map: tuple[tuple[int, int], ...]
    edge_map: tuple[tuple[tuple[int, int], int], ...]

    @property
    def vertices(self) -> dict[int, int]:
        return dict(self.vertex_map)

    @property
    def edges(self) -> dict[tuple[int, int], int]:
        return dict(self.edge_map)

    def is_valid_for(self, family: Sequence[int], g: PatternGraph) -> bool:
        vmap = self.vertices
        emap = self.edges
        if len(set(vmap.values())) != len(vmap):
            return False
        if sorted(emap.keys()) != sorted(g.edges):
            return False
        images = list(emap.values())
        if len(set(images)) != len(images) or sorted(images) != sorted(family):
            return False
        for (u, v), hyper in emap.items():
            need = (1 << (vmap[u] - 1)) | (1 << (vmap[v] - 1))
            if need & hyper != need:
                return False
        return True


def _make_embedding(
    vmap: dict[int, int], emap: dict[tuple[int, int], int]
) -> BergeEmbedding:
    return BergeEmbedding(
        vertex_map=tuple(sorted(vmap.items())),
        edge_map=tuple(sorted(emap.items())),
    )


def sdr(sets: Sequence[int]) -> Optional[list[int]]:
    """System of distinct representatives via augmenting paths, or None.

    Representatives are returned as 1-based elements, one per input set, and
    are chosen deterministically (lowest elements first).
    """
    match: dict[int, int] = {}  # element bit -> set index

    def augment(i: int, visited: set[int]) -> bool:
        m = sets[i]
        while m:
            bit = m & -m
            m ^= bit
            if bit in visited:
                continue
            visited.add(bit)
            j = match.get(bit)
            if j is None or augment(j, visited):
                match[bit] = i
                return True
        return False

    for i in range(len(sets)):
        if not augment(i, set()):
            return None
    reps = [0] * len(sets)
    for bit, i in match.items():
        reps[i] = bit.bit_length()
    return reps


def has_berge_triangle(a: int, b: int, c: int) -> bool:
    """True iff the three pairwise intersections admit distinct representatives.

    Hall's condition on three sets, checked with popcounts.
    """
    ab = a & b
    ac = a & c
    bc = b & c
    if not (ab and ac and bc):
        return False
    if (ab | ac).bit_count() < 2 or (ab | bc).bit_count() < 2 or (ac | bc).bit_count() < 2:
        return False
    return (ab | ac | bc).bit_count() >= 3


_CYCLE4_ORDERS = ((0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3))


def has_berge_cycle4(a: int, b: int, c: int, d: int) -> Optional[BergeEmbedding]:
    """Seek a Berge 4-cycle over the three essentially distinct cyclic orders;
    first witness wins.  Agrees with the generic finder on cycle(4)."""
    masks = (a, b, c, d)
    for order in _CYCLE4_ORDERS:
        s = [masks[i] for i in order]
        ints = [s[0] & s[1], s[1] & s[2], s[2] & s[3], s[3] & s[0]]
        if 0 in ints:
            continue
        reps = sdr(ints)
        if reps is None:
            continue
        r1, r2, r3, r4 = reps
        vmap = {1: r4, 2: r1, 3: r2, 4: r3}
        emap = {(1, 2): s[0], (2, 3): s[1], (3, 4): s[2], (1, 4): s[3]}
        return _make_embedding(vmap, emap)
    return None


def _sdr4_exists(a: int, b: int, c: int, d: int) -> bool:
    """Hall's condition for four nonempty sets, allocation-free."""
    if (
        (a | b).bit_count() < 2
        or (a | c).bit_count() < 2
        or (a | d).bit_count() < 2
        or (b | c).bit_count() < 2
        or (b | d).bit_count() < 2
        or (c | d).bit_count() < 2
    ):
        return False
    if (
        (a | b | c).bit_count() < 3
        or (a | b | d).bit_count() < 3
        or (a | c | d).bit_count() < 3
        or (b | c | d).bit_count() < 3
    ):
        return False
    return (a | b | c | d).bit_count() >= 4


def cycle4_exists(a: int, b: int, c: int, d: int) -> bool:
    """Existence-only variant of has_berge_cycle4 (hot loops)."""
    ab = a & b
    ac = a & c
    ad = a & d
    bc = b & c
    bd = b & d
    cd = c & d
    if ab and bc and cd and ad and _sdr4_exists(ab, bc, cd, ad):
        return True
    if ab and bd and cd and ac and _sdr4_exists(ab, bd, cd, ac):
        return True
    if ac and bc and bd and ad and _sdr4_exists(ac, bc, bd, ad):
        return True
    return False


def has_berge_star(family: Sequence[int], k: int) -> Optional[BergeEmbedding]:
    """Seek a center contained in all k sets plus k distinct leaves."""
    if len(family) != k:
        raise ArityMismatch(f"star with {k} edges needs {k} sets, got {len(family)}")
    common = family[0]
    for s in family[1:]:
        common &= s
    while common:
        bit = common & -common
        common ^= bit
        leaves = sdr([s & ~bit for s in family])
        if leaves is not None:
            v = bit.bit_length()
            vmap = {1: v}
            emap = {}
            for j, s in enumerate(family):
                vmap[j + 2] = leaves[j]
                emap[(1, j + 2)] = s
            return _make_embedding(vmap, emap)
    return None


def has_berge_path(family: Sequence[int], k: int) -> Optional[BergeEmbedding]:
    """Seek a Berge path with k edges: try edge orders, match k+1 vertices."""
    if len(family) != k:
        raise ArityMismatch(f"path with {k} edges needs {k} sets, got {len(family)}")
    for perm in permutations(range(k)):
        if perm[0] > perm[-1]:
            continue  # a path order and its reverse host the same copies
        seq = [family[i] for i in perm]
        slots = [seq[0]]
        ok = True
        for i in range(k - 1):
            inter = seq[i] & seq[i + 1]
            if not inter:
                ok = False
                break
            slots.append(inter)
        if not ok:
            continue
        slots.append(seq[-1])
        reps = sdr(slots)
        if reps is None:
            continue
        vmap = {i + 1: reps[i] for i in range(k + 1)}
        emap = {(i, i + 1): seq[i - 1] for i in range(1, k + 1)}
        return _make_embedding(vmap, emap)
    return None


def find_berge_embedding(
    family: Sequence[int], g: PatternGraph
) -> Optional[BergeEmbedding]:
    """Generic backtracking over edge-to-hyperedge bijections and vertex
    representatives with the all-distinct constraint."""
    k = g.edge_count
    if len(family) != k:
        raise ArityMismatch(
            f"family size {len(family)} != pattern edge count {k}"
        )
    if len(set(family)) != k:
        raise ValueError("family members must be distinct")

    # Order pattern edges so each one touches an earlier vertex when possible.
    order: list[tuple[int, int]] = []
    remaining = list(g.edges)
    placed: set[int] = set()
    while remaining:
        pick = None
        for e in remaining:
            if not order or e[0] in placed or e[1] in placed:
                pick = e
                break
        if pick is None:
            pick = remaining[0]
        order.append(pick)
        placed.update(pick)
        remaining.remove(pick)

    used_hyper = [False] * k
    vmap: dict[int, int] = {}
    used_bits = 0
    emap: dict[tuple[int, int], int] = {}

    def rec(ei: int) -> bool:
        nonlocal used_bits
        if ei == k:
            return True
        u, v = order[ei]
        for hi in range(k):
            if used_hyper[hi]:
                continue
            hyper = family[hi]
            bu = 1 << (vmap[u] - 1) if u in vmap else None
            bv = 1 << (vmap[v] - 1) if v in vmap else None
            if bu is not None and not (hyper & bu):
                continue
            if bv is not None and not (hyper & bv):
                continue
            used_hyper[hi] = True
            emap[(u, v)] = hyper
            if bu is not None and bv is not None:
                if rec(ei + 1):
                    return True
            elif bu is not None or bv is not None:
                free_vertex = v if bu is not None else u
                avail = hyper & ~used_bits
                while avail:
                    bit = avail & -avail
                    avail ^= bit
                    vmap[free_vertex] = bit.bit_length()
                    used_bits |= bit
                    if rec(ei + 1):
                        return True
                    used_bits &= ~bit
                    del vmap[free_vertex]
            else:
                avail_u = hyper & ~used_bits
                while avail_u:
                    bit_u = avail_u & -avail_u
                    avail_u ^= bit_u
                    vmap[u] = bit_u.bit_length()
                    used_bits |= bit_u
                    avail_v = hyper & ~used_bits
                    while avail_v:
                        bit_v = avail_v & -avail_v
                        avail_v ^= bit_v
                        vmap[v] = bit_v.bit_length()
                        used_bits |= bit_v
                        if rec(ei + 1):
                            return True
                        used_bits &= ~bit_v
                        del vmap[v]
                    used_bits &= ~bit_u
                    del vmap[u]
            del emap[(u, v)]
            used_hyper[hi] = False
        return False

    if rec(0):
        return _make_embedding(vmap, emap)
    return None


def check_family(sub: Sequence[int], g: PatternGraph) -> Optional[BergeEmbedding]:
    """Dispatch to the fast detector for recognized patterns, else generic."""
    kind = recognize(g)
    if kind == ("cycle", 3):
        if has_berge_triangle(*sub):
            return find_berge_embedding(sub, g)
        return None
    if kind == ("cycle", 4):
        return has_berge_cycle4(*sub)
    if kind is not None and kind[0] == "star":
        return has_berge_star(sub, kind[1])
    if kind is not None and kind[0] == "path":
        return has_berge_path(sub, kind[1])
    return find_berge_embedding(sub, g)


@dataclass(frozen=True)
class Witness:
    """An offending sub-family together with its embedding."""

    sets: tuple[int, ...]
    embedding: BergeEmbedding


def _component_indices(members: Sequence[int]) -> list[list[int]]:
    """Connected components of the intersection graph (indices into members).
    The empty set is an isolated vertex."""
    m = len(members)
    seen = [False] * m
    comps: list[list[int]] = []
    # adjacency on demand: nonempty pairwise intersection
    for start in range(m):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        stack = [start]
        while stack:
            x = stack.pop()
            mx = members[x]
            for y in range(m):
                if not seen[y] and mx & members[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def intersection_graph_components(part: Part) -> list[int]:
    """Sorted sizes of the intersection-graph components of a part."""
    return sorted(len(c) for c in _component_indices(part.sets))


def part_is_g_free(
    part: Part, g: PatternGraph, *, use_component_fast_path: bool = True
) -> Optional[Witness]:
    """None iff no sub-family of the part hosts a Berge copy of g.

    Fast path for connected g: if every intersection-graph component has at
    most |E(g)|-1 members, no copy can exist and enumeration is skipped.
    """
    k = g.edge_count
    members = part.sets
    if len(members) < k:
        return None
    if use_component_fast_path and g.is_connected():
        comps = _component_indices(members)
        if all(len(c) < k for c in comps):
            return None
        # a connected copy cannot straddle components
        pools = [
            [members[i] for i in comp if members[i].bit_count() >= 2]
            for comp in comps
        ]
    else:
        pools = [[s for s in members if s.bit_count() >= 2]]
    for pool in pools:
        if len(pool) < k:
            continue
        for sub in combinations(pool, k):
            emb = check_family(sub, g)
            if emb is not None:
                return Witness(sets=tuple(sub), embedding=emb)
    return None


@dataclass(frozen=True)
class FreenessReport:
    pattern: PatternGraph
    free: bool
    per_part: tuple[Optional[Witness], ...]
    witness_part: Optional[int]

    @property
    def witness(self) -> Optional[Witness]:
        if self.witness_part is None:
            return None
        return self.per_part[self.witness_part]


def partition_is_g_free(
    p: Partition, g: PatternGraph, *, use_component_fast_path: bool = True
) -> FreenessReport:
    """Aggregate part_is_g_free over all parts, in part order."""
    report = validate_partition(p)
    if not report.ok:
        raise InvalidPartition(report)
    per_part = tuple(
        part_is_g_free(part, g, use_component_fast_path=use_component_fast_path)
        for part in p.parts
    )
    witness_part = next(
        (i for i, w in enumerate(per_part) if w is not None), None
    )
    return FreenessReport(
        pattern=g,
        free=witness_part is None,
        per_part=per_part,
        witness_part=witness_part,
    )


class QuadKind(Enum):
    C4 = "c4"
    PSI = "psi"
    NEITHER = "neither"


@dataclass(frozen=True)
class QuadClass:
    kind: QuadKind
    embedding: Optional[BergeEmbedding] = None
    stem: Optional[int] = None
    apex: Optional[int] = None


def classify_quadruple(
    a: int, b: int, c: int, d: int, ground: GroundSet
) -> QuadClass:
    """Classify four distinct medium-or-large sets: a Berge 4-cycle, or a
    stem configuration (one set meeting the others inside a single element),
    or neither.  Small members make the stem case unavailable."""
    if cycle4_exists(a, b, c, d):
        emb = has_berge_cycle4(a, b, c, d)
        return QuadClass(kind=QuadKind.C4, embedding=emb)
    n = ground.n
    if n % 2 == 0:
        masks = (a, b, c, d)
        half = n // 2
        if all(m.bit_count() >= half for m in masks):
            for i, stem in enumerate(masks):
                others = [masks[j] for j in range(4) if j != i]
                union = (stem & others[0]) | (stem & others[1]) | (stem & others[2])
                if union.bit_count() <= 1:
                    apex = union.bit_length() if union else None
                    return QuadClass(kind=QuadKind.PSI, stem=stem, apex=apex)
    return QuadClass(kind=QuadKind.NEITHER)
