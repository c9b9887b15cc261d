"""Stirling and Bell numbers, set partitions, and the state-partition bijection.

The TL-state universe with h slots and f empties is counted by the Stirling
number S(h+1, f+1).  The counting works through an explicit bijection: each
occupied slot of a TL-state contributes one edge of a linkage graph on the
vertex set {1..h+1}, whose connected components are the blocks of a set
partition.  Both directions of that correspondence live here, next to the
number engines that check the counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .states import TLState

__all__ = [
    "ChainGraph",
    "SetPartition",
    "bell",
    "enumerate_partitions",
    "linkage_graph",
    "partition_to_tl",
    "stirling2",
    "tl_to_partition",
]


@lru_cache(maxsize=None)
def stirling2(a: int, b: int) -> int:
    """Stirling number of the second kind: partitions of an a-set into b blocks.

    Computed by the recurrence S(a,b) = b*S(a-1,b) + S(a-1,b-1).  Returns 0
    for b > a (with S(0,0) = 1).
    """
    if a < 0 or b < 0:
        raise ValueError(f"stirling2 needs nonnegative arguments, got ({a}, {b})")
    if a == 0:
        return 1 if b == 0 else 0
    if b == 0 or b > a:
        return 0
    return b * stirling2(a - 1, b) + stirling2(a - 1, b - 1)


def bell(n: int) -> int:
    """Bell number: total number of set partitions of an n-set."""
    if n < 0:
        raise ValueError(f"bell needs a nonnegative argument, got {n}")
    return sum(stirling2(n, i) for i in range(n + 1))


@dataclass(frozen=True)
class SetPartition:
    """A partition of {1..n} into disjoint non-empty blocks.

    Canonical form: elements ascending within each block, blocks sorted by
    their minimum element.  The constructor normalizes to it, so equality of
    partitions is literal tuple equality.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"ground set size must be positive, got {self.n}")
        normalized = tuple(
            sorted(tuple(sorted(block)) for block in self.blocks)
        )
        object.__setattr__(self, "blocks", normalized)
        seen: set[int] = set()
        for block in self.blocks:
            if not block:
                raise ValueError("empty block in set partition")
            for x in block:
                if not isinstance(x, int) or not 1 <= x <= self.n:
                    raise ValueError(f"element {x!r} outside ground set [1, {self.n}]")
                if x in seen:
                    raise ValueError(f"element {x} appears in two blocks")
                seen.add(x)
        if len(seen) != self.n:
            missing = sorted(set(range(1, self.n + 1)) - seen)
            raise ValueError(f"partition does not cover the ground set; missing {missing}")

    def __str__(self) -> str:
        return "|".join("{" + ",".join(str(x) for x in block) + "}" for block in self.blocks)

    @classmethod
    def parse(cls, text: str) -> SetPartition:
        """Parse the textual form, e.g. ``"{1,3,7,8}|{4,6}|{2}|{5}"``."""
        blocks = []
        for part in text.split("|"):
            part = part.strip()
            if not (part.startswith("{") and part.endswith("}")):
                raise ValueError(f"malformed block in {text!r}")
            try:
                blocks.append(tuple(int(x) for x in part[1:-1].split(",")))
            except ValueError:
                raise ValueError(f"malformed block in {text!r}") from None
        n = sum(len(b) for b in blocks)
        return cls(n=n, blocks=tuple(blocks))


@dataclass(frozen=True)
class ChainGraph:
    """An undirected graph on {1..n} whose components are monotone chains.

    Every vertex has at most one smaller and at most one larger neighbor, so
    each component, read in increasing order, is a path.  This is the shape
    the linkage graph of a TL-state always takes, and the constructor
    enforces it.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        smaller: dict[int, int] = {}
        larger: dict[int, int] = {}
        for t, i in self.edges:
            if not (1 <= t < i <= self.n):
                raise ValueError(f"edge ({t}, {i}) is not an increasing pair in [1, {self.n}]")
            if t in larger or i in smaller:
                raise ValueError(
                    f"edge ({t}, {i}) gives a vertex two neighbors on the same side"
                )
            larger[t] = i
            smaller[i] = t

    def components(self) -> list[tuple[int, ...]]:
        """Connected components as ascending vertex tuples, sorted by minimum."""
        successor = dict(self.edges)
        has_predecessor = {i for _, i in self.edges}
        comps = []
        for start in range(1, self.n + 1):
            if start in has_predecessor:
                continue
            chain = [start]
            while chain[-1] in successor:
                chain.append(successor[chain[-1]])
            comps.append(tuple(chain))
        comps.sort()
        return comps


def linkage_graph(state: TLState) -> ChainGraph:
    """The graph on {1..h+1} pairing each occupied slot with its linked slot.

    A slot t holding air time v was thrown v - t seconds ago and contributes
    the edge {t, h+1-(v-t)}.  The rule is sometimes stated as "value at slot
    i is h+1+t-i", which contradicts the meaning of the slot values (the air
    time of the ball landing at t); the rule used here is the transposed
    reading "value at slot t is h+1+t-i", which is the one consistent with
    the worked example in the tests.  Since v <= h, the partner h+1-(v-t) is
    strictly above t, and distinct throw instants give distinct partners, so
    the result is always a valid chain graph.
    """
    h = state.h
    edges = tuple(
        (t, h + 1 - (v - t))
        for t, v in enumerate(state.slots, start=1)
        if v is not None
    )
    return ChainGraph(n=h + 1, edges=edges)


def tl_to_partition(state: TLState) -> SetPartition:
    """Map a TL-state to the set partition of {1..h+1} given by its linkage graph."""
    graph = linkage_graph(state)
    return SetPartition(n=graph.n, blocks=tuple(graph.components()))


def partition_to_tl(p: SetPartition) -> TLState:
    """Map a partition of {1..h+1} back to the TL-state with that linkage.

    Within a block a_1 < ... < a_m, position a_l (l < m) gets air time
    h+1+a_l-a_{l+1}; every block maximum, and every position in no block's
    interior, stays empty.  Inverts tl_to_partition exactly.
    """
    if p.n < 2:
        raise ValueError("partition of [h+1] needs ground size at least 2 (h >= 1)")
    h = p.n - 1
    slots: list[int | None] = [None] * h
    for block in p.blocks:
        for a, a_next in zip(block, block[1:]):
            slots[a - 1] = h + 1 + a - a_next
    return TLState(tuple(slots))


def enumerate_partitions(n: int, k: int) -> list[SetPartition]:
    """All partitions of {1..n} into exactly k blocks, in restricted-growth order.

    A restricted-growth string assigns element i the index of its block,
    never skipping a fresh index; enumerating those strings yields each
    partition exactly once, with blocks already ordered by minimum.
    """
    if n < 1:
        raise ValueError(f"ground set size must be positive, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"block count must satisfy 0 <= k <= n={n}, got {k}")
    results: list[SetPartition] = []
    if k == 0:
        return results
    blocks: list[list[int]] = []

    def extend(i: int) -> None:
        if i > n:
            if len(blocks) == k:
                results.append(
                    SetPartition(n=n, blocks=tuple(tuple(b) for b in blocks))
                )
            return
        # prune: must still be able to open enough fresh blocks to reach k
        if len(blocks) + (n - i + 1) >= k:
            for b in blocks:
                b.append(i)
                extend(i + 1)
                b.pop()
            if len(blocks) < k:
                blocks.append([i])
                extend(i + 1)
                blocks.pop()

    extend(1)
    return results
