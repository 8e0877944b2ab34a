"""Deterministic counter-based sampling of set tuples.

The generator is a pure function of (seed, counter), so identical
(n, count, seed) inputs reproduce identical reports on any platform and
under any evaluation schedule.  Families are addressed through pools that
unrank members on demand; nothing is materialized, which keeps sampling
usable when the family has tens of millions of sets.
"""
from __future__ import annotations

from bisect import bisect_right
from math import comb
from typing import Sequence

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix(x: int) -> int:
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


class CounterRng:
    """64-bit stream indexed by an internal draw counter."""

    def __init__(self, seed: int) -> None:
        self._base = _mix((seed & _MASK64) ^ 0xD1B54A32D192ED03)
        self._counter = 0

    def u64(self) -> int:
        self._counter += 1
        return _mix((self._base + self._counter * _GOLDEN) & _MASK64)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection over whole words."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        words = max(1, (bound.bit_length() + 63) // 64)
        span = 1 << (64 * words)
        limit = span - (span % bound)
        while True:
            x = 0
            for _ in range(words):
                x = (x << 64) | self.u64()
            if x < limit:
                return x % bound


_PASCAL: list[list[int]] = [[1]]


def _pascal_rows(n: int) -> list[list[int]]:
    """Pascal's triangle rows 0..n, grown on demand (fast comb lookups)."""
    while len(_PASCAL) <= n:
        prev = _PASCAL[-1]
        _PASCAL.append(
            [1] + [prev[i] + prev[i + 1] for i in range(len(prev) - 1)] + [1]
        )
    return _PASCAL


def unrank_combination(rank: int, n: int, k: int) -> tuple[int, ...]:
    """The rank-th k-subset of {0..n-1} in lexicographic order."""
    if n <= 512:
        rows = _pascal_rows(n)
        out = []
        x = 0
        for slots in range(k, 0, -1):
            row = slots - 1
            block = rows[n - 1 - x][row] if row <= n - 1 - x else 0
            while block <= rank:
                rank -= block
                x += 1
                block = rows[n - 1 - x][row] if row <= n - 1 - x else 0
            out.append(x)
            x += 1
        return tuple(out)
    # wide universe: binary search per element; subsets with minimum at
    # least x number C(n-x, k), so those before first element e number
    # C(n,k) - C(n-e, k)
    out = []
    base = 0
    while k > 0:
        total = comb(n, k)
        lo, hi = 0, n - k
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if total - comb(n - mid, k) <= rank:
                lo = mid
            else:
                hi = mid - 1
        rank -= total - comb(n - lo, k)
        out.append(base + lo)
        base += lo + 1
        n -= lo + 1
        k -= 1
    return tuple(out)


class MaskPool:
    """A family of masks addressable by rank."""

    def size(self) -> int:
        raise NotImplementedError

    def unrank(self, rank: int) -> int:
        raise NotImplementedError


class ExplicitPool(MaskPool):
    def __init__(self, masks: Sequence[int]) -> None:
        self._masks = list(masks)

    def size(self) -> int:
        return len(self._masks)

    def unrank(self, rank: int) -> int:
        return self._masks[rank]


class UniformSizePool(MaskPool):
    """All k-subsets of {1..n} as masks, ranked lexicographically by the
    sorted element tuple."""

    def __init__(self, n: int, k: int) -> None:
        self.n = n
        self.k = k
        self._size = comb(n, k)

    def size(self) -> int:
        return self._size

    def unrank(self, rank: int) -> int:
        mask = 0
        for i in unrank_combination(rank, self.n, self.k):
            mask |= 1 << i
        return mask


class SizeRangePool(MaskPool):
    """All subsets of {1..n} with size in [lo, hi], size classes in order."""

    def __init__(self, n: int, lo: int, hi: int | None = None) -> None:
        self.n = n
        self.lo = lo
        self.hi = n if hi is None else hi
        self._cum = []
        total = 0
        for s in range(self.lo, self.hi + 1):
            total += comb(n, s)
            self._cum.append(total)

    def size(self) -> int:
        return self._cum[-1] if self._cum else 0

    def unrank(self, rank: int) -> int:
        idx = bisect_right(self._cum, rank)
        prev = self._cum[idx - 1] if idx else 0
        s = self.lo + idx
        mask = 0
        for i in unrank_combination(rank - prev, self.n, s):
            mask |= 1 << i
        return mask


def sample_tuple_batch(
    rng: CounterRng,
    pools: Sequence[MaskPool],
    arities: Sequence[int],
    count: int,
) -> list[tuple[tuple[int, ...], ...]]:
    """count distinct tuples, each a product of uniform fixed-size subsets of
    the pools (one subset per pool; no tuple repeats within the batch)."""
    space = 1
    for pool, k in zip(pools, arities):
        space *= comb(pool.size(), k)
    if count > space:
        raise ValueError(f"requested {count} samples from a space of {space}")
    sizes = [pool.size() for pool in pools]
    seen: set[tuple[tuple[int, ...], ...]] = set()
    out: list[tuple[tuple[int, ...], ...]] = []
    while len(out) < count:
        key = []
        for size, k in zip(sizes, arities):
            # k distinct ranks by rejection; uniform over k-subsets
            ranks: set[int] = set()
            while len(ranks) < k:
                ranks.add(rng.below(size))
            key.append(tuple(sorted(ranks)))
        key = tuple(key)
        if key in seen:
            continue
        seen.add(key)
        out.append(
            tuple(
                tuple(pool.unrank(i) for i in combo)
                for pool, combo in zip(pools, key)
            )
        )
    return out
