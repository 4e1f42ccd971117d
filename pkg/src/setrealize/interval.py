"""Orderings of W under which every member set is an interval.

The positive side is a PQ-tree reduction; the negative side is an
obstruction triple: three elements, each avoided by an F-connected set
that holds the other two.  The two searches are independent, so each
run can be checked against the other.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .model import Ordering, SetFamily
from .pqtree import Infeasible, PQTree

ORDER_ORACLE_LIMIT = 9


@dataclass(frozen=True)
class ObstructionTriple:
    vertices: tuple[str, str, str]
    witnesses: tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]

    kind = "obstruction-triple"

    def verify(self, family: SetFamily) -> bool:
        vs = self.vertices
        if len(set(vs)) != 3:
            return False
        for j, xj in enumerate(self.witnesses):
            xs = set(xj)
            for i, v in enumerate(vs):
                if (v in xs) != (i != j):
                    return False
            if not is_f_connected(family, xj).connected:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": list(self.vertices),
            "witnesses": [list(x) for x in self.witnesses],
        }


@dataclass(frozen=True)
class FComponents:
    base: tuple[str, ...]
    blocks: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class Connectivity:
    """Answer of :func:`is_f_connected`; ``partition`` is set when disconnected."""

    connected: bool
    partition: tuple[tuple[str, ...], tuple[str, ...]] | None = None

    def __bool__(self) -> bool:
        return self.connected


def _block_masks(masks, x: int) -> list[int]:
    """Components of the graph on ``x`` linking elements that share a member set inside ``x``."""
    inside = [m for m in masks if m and m & x == m]
    blocks = []
    remaining = x
    while remaining:
        block = remaining & -remaining
        grown = True
        while grown:
            grown = False
            for m in inside:
                if m & block and m & ~block:
                    block |= m
                    grown = True
        blocks.append(block)
        remaining &= ~block
    return blocks


def f_connected_components(family: SetFamily, subset: Iterable[str]) -> FComponents:
    ground = family.ground
    x = ground.mask(subset)
    blocks = _block_masks(family.masks, x)
    return FComponents(ground.labels(x), tuple(sorted(ground.labels(b) for b in blocks)))


def is_f_connected(family: SetFamily, subset: Iterable[str]) -> Connectivity:
    ground = family.ground
    x = ground.mask(subset)
    blocks = _block_masks(family.masks, x)
    if len(blocks) <= 1:
        return Connectivity(True)
    first = min(blocks, key=ground.labels)
    return Connectivity(False, (ground.labels(first), ground.labels(x & ~first)))


def find_obstruction_triple(family: SetFamily) -> ObstructionTriple | None:
    """First triple, in lexicographic order, that blocks every interval ordering."""
    ground = family.ground
    n = len(ground)
    masks = family.masks
    full = ground.full_mask
    blocks_without = {}
    for v in range(n):
        blocks_without[v] = _block_masks(masks, full & ~(1 << v))

    def shared(j: int, a: int, b: int) -> int | None:
        both = (1 << a) | (1 << b)
        for blk in blocks_without[j]:
            if blk & both == both:
                return blk
        return None

    for a, b, c in combinations(range(n), 3):
        x1 = shared(a, b, c)
        if x1 is None:
            continue
        x2 = shared(b, a, c)
        if x2 is None:
            continue
        x3 = shared(c, a, b)
        if x3 is None:
            continue
        e = ground.elements
        return ObstructionTriple(
            (e[a], e[b], e[c]),
            (ground.labels(x1), ground.labels(x2), ground.labels(x3)),
        )
    return None


def is_interval_ordering(family: SetFamily, ordering: Ordering) -> bool:
    if sorted(ordering.sequence) != list(family.ground.elements):
        return False
    return all(ordering.is_interval(m) for m in family.members)


def consecutive_ones_order(family: SetFamily) -> Ordering | None:
    """PQ-tree ordering of W, or None if the member sets admit none."""
    ground = family.ground
    if len(ground) == 0:
        return Ordering(())
    full = ground.full_mask
    relevant = sorted({m for m in family.masks if m.bit_count() >= 2 and m != full})
    tree = PQTree(ground.elements)
    try:
        for m in relevant:
            tree.reduce(ground.labels(m))
    except Infeasible:
        return None
    seq = tree.frontier()
    return Ordering(tuple(min(seq, seq[::-1])))


def realize_interval_order(family: SetFamily) -> Ordering | ObstructionTriple:
    triple = find_obstruction_triple(family)
    if triple is not None:
        return triple
    order = consecutive_ones_order(family)
    if order is None or not is_interval_ordering(family, order):
        raise AssertionError("no obstruction triple, yet the PQ-tree found no valid ordering")
    return order


def brute_force_order(family: SetFamily) -> Ordering | None:
    """Lexicographically first interval ordering, by exhaustive search.

    Permutations are built left to right and a prefix is abandoned as soon as
    some set has a gap.  Whether a prefix can be completed depends only on
    which elements are placed and which one is last, so failures are cached
    on that pair; this prunes the search without skipping any permutation
    that could succeed.
    """
    ground = family.ground
    n = len(ground)
    if n > ORDER_ORACLE_LIMIT:
        raise ValueError(f"ground set has {n} elements; the exhaustive oracle takes at most {ORDER_ORACLE_LIMIT}")
    masks = [m for m in family.masks if m]
    full = ground.full_mask

    def extends(placed: int, last: int, v: int) -> bool:
        bit = 1 << v
        for m in masks:
            started = m & placed
            if not started or started == m:
                continue
            # an open set must continue right after its last placed element
            if not (m >> last & 1) or not (m & bit):
                return False
        return True

    @lru_cache(maxsize=None)
    def search(placed: int, last: int) -> tuple[int, ...] | None:
        if placed == full:
            return ()
        for v in range(n):
            if placed >> v & 1:
                continue
            if last >= 0 and not extends(placed, last, v):
                continue
            rest = search(placed | 1 << v, v)
            if rest is not None:
                return (v,) + rest
        return None

    found = search(0, -1)
    if found is None:
        return None
    return Ordering(tuple(ground.elements[i] for i in found))
