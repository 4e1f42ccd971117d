"""Helly and chordality tests with refutation certificates."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .model import Graph, Ordering, SetFamily

HELLY_ORACLE_LIMIT = 20


@dataclass(frozen=True)
class HellyViolation:
    """Pairwise-meeting sets with no common element.

    A single name means that set is empty.
    """

    witness_sets: tuple[str, ...]

    kind = "helly-violation"

    def verify(self, family: SetFamily) -> bool:
        if not self.witness_sets:
            return False
        masks = [family.mask_of(n) for n in self.witness_sets]
        if any(a & b == 0 for a, b in combinations(masks, 2)):
            return False
        common = family.ground.full_mask
        for m in masks:
            common &= m
        return common == 0

    def to_json(self) -> dict:
        return {"kind": self.kind, "sets": list(self.witness_sets)}


@dataclass(frozen=True)
class ChordlessCycle:
    cycle: tuple[str, ...]

    kind = "chordless-cycle"

    def verify(self, graph: Graph) -> bool:
        c = self.cycle
        k = len(c)
        if k < 4 or len(set(c)) != k or any(v not in graph.vertices for v in c):
            return False
        for i in range(k):
            for j in range(i + 1, k):
                consecutive = j == i + 1 or (i == 0 and j == k - 1)
                if graph.has_edge(c[i], c[j]) != consecutive:
                    return False
        return True

    def to_json(self) -> dict:
        return {"kind": self.kind, "cycle": list(self.cycle)}


@dataclass(frozen=True)
class MeetingChainReport:
    depth: int
    chain: tuple[str, ...]


# -- Helly ------------------------------------------------------------------

def _common(masks, full):
    acc = full
    for m in masks:
        acc &= m
    return acc


def _minimize_helly(family: SetFamily, picked: list[int]) -> tuple[str, ...]:
    full = family.ground.full_mask
    masks = family.masks
    keep = list(picked)
    for idx in list(picked):
        trial = [i for i in keep if i != idx]
        if trial and _common((masks[i] for i in trial), full) == 0:
            keep = trial
    return tuple(family.names[i] for i in keep)


def _pair_meets(masks, n: int, full: int) -> dict[tuple[int, int], int]:
    meets = {}
    for i in range(n):
        for j in range(i + 1, n):
            both = (1 << i) | (1 << j)
            acc = full
            for m in masks:
                if m & both == both:
                    acc &= m
            meets[i, j] = acc
    return meets


def _bad_triple(masks, n: int, full: int) -> int | None:
    meets = _pair_meets(masks, n, full)
    for x, y, z in combinations(range(n), 3):
        if not meets[x, y] & meets[x, z] & meets[y, z]:
            return (1 << x) | (1 << y) | (1 << z)
    return None


def helly_holds(masks, n: int) -> bool:
    """Mask-level Helly test; ``masks`` are subsets of ``range(n)``."""
    return all(masks) and _bad_triple(masks, n, (1 << n) - 1) is None


def check_helly_triples(family: SetFamily) -> HellyViolation | None:
    """Return ``None`` when the finite Helly property holds, else a witness.

    Uses the triple criterion: the family is Helly iff for every three
    elements, the sets containing at least two of them share an element.
    The intersection of all sets through a pair is precomputed, so each
    triple costs three ANDs.
    """
    masks = family.masks
    for name, m in zip(family.names, masks):
        if m == 0:
            return HellyViolation((name,))
    triple = _bad_triple(masks, len(family.ground), family.ground.full_mask)
    if triple is None:
        return None
    picked = [i for i, m in enumerate(masks) if (m & triple).bit_count() >= 2]
    return HellyViolation(_minimize_helly(family, picked))


def check_helly_bruteforce(family: SetFamily) -> HellyViolation | None:
    """Exhaustive oracle: smallest pairwise-meeting subfamily with empty meet."""
    k = len(family)
    if k > HELLY_ORACLE_LIMIT:
        raise ValueError(f"family has {k} sets; the exhaustive oracle takes at most {HELLY_ORACLE_LIMIT}")
    masks = family.masks
    full = family.ground.full_mask
    for size in range(1, k + 1):
        for combo in combinations(range(k), size):
            chosen = [masks[i] for i in combo]
            if any(a & b == 0 for a, b in combinations(chosen, 2)):
                continue
            if _common(chosen, full) == 0:
                return HellyViolation(tuple(family.names[i] for i in combo))
    return None


# -- chordality -------------------------------------------------------------

def _mcs(adj) -> list[int]:
    n = len(adj)
    weight = [0] * n
    unvisited = set(range(n))
    order = []
    for _ in range(n):
        v = max(unvisited, key=lambda u: (weight[u], -u))
        unvisited.discard(v)
        order.append(v)
        nb = adj[v]
        for u in unvisited:
            if nb >> u & 1:
                weight[u] += 1
    return order


def _elimination_failure(adj, peo: list[int]) -> tuple[int, int, int] | None:
    """First (v, p, u) where later neighbours p, u of v are non-adjacent."""
    pos = [0] * len(adj)
    for i, v in enumerate(peo):
        pos[v] = i
    for v in peo:
        later = [u for u in range(len(adj)) if adj[v] >> u & 1 and pos[u] > pos[v]]
        if len(later) < 2:
            continue
        p = min(later, key=pos.__getitem__)
        for u in later:
            if u != p and not adj[p] >> u & 1:
                return v, p, u
    return None


def mcs_order(graph: Graph) -> list[int]:
    """Maximum cardinality search visit order, ties to the smallest label."""
    return _mcs(graph.adjacency)


def chordal_holds(adj) -> bool:
    """Mask-level chordality test on an adjacency list of bitmasks."""
    return _elimination_failure(adj, _mcs(adj)[::-1]) is None


def intersection_adjacency(masks) -> list[int]:
    k = len(masks)
    adj = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if masks[i] & masks[j]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def _shortest_path(adj, allowed: int, src: int, dst: int) -> list[int] | None:
    parent = {src: -1}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            path = []
            while v != -1:
                path.append(v)
                v = parent[v]
            return path[::-1]
        nb = adj[v] & allowed
        while nb:
            bit = nb & -nb
            nb ^= bit
            u = bit.bit_length() - 1
            if u not in parent:
                parent[u] = v
                queue.append(u)
    return None


def _cycle_through(graph: Graph, v: int, x: int, y: int) -> list[int] | None:
    """Chordless cycle v-x-...-y-v whose inner path avoids N[v]."""
    adj = graph.adjacency
    allowed = graph.vertices.full_mask & ~(adj[v] | 1 << v) | 1 << x | 1 << y
    path = _shortest_path(adj, allowed, x, y)
    if path is None:
        return None
    return [v] + path


def _find_any_chordless_cycle(graph: Graph) -> list[int] | None:
    adj = graph.adjacency
    for v in range(len(graph)):
        nbs = [u for u in range(len(graph)) if adj[v] >> u & 1]
        for x, y in combinations(nbs, 2):
            if adj[x] >> y & 1:
                continue
            cyc = _cycle_through(graph, v, x, y)
            if cyc is not None:
                return cyc
    return None


def check_chordal(graph: Graph) -> Ordering | ChordlessCycle:
    """Perfect elimination ordering, or an induced cycle of length >= 4."""
    labels = graph.vertices.elements
    peo = mcs_order(graph)[::-1]
    bad = _elimination_failure(graph.adjacency, peo)
    if bad is None:
        return Ordering(tuple(labels[i] for i in peo))
    v, p, u = bad
    cyc = _cycle_through(graph, v, p, u) or _find_any_chordless_cycle(graph)
    assert cyc is not None, "elimination check failed but no chordless cycle exists"
    return ChordlessCycle(tuple(labels[i] for i in cyc))


def is_perfect_elimination_ordering(graph: Graph, ordering: Ordering) -> bool:
    pos = ordering.positions()
    if set(pos) != set(graph.vertices):
        return False
    for v in graph.vertices:
        later = [u for u in graph.neighbors(v) if pos[u] > pos[v]]
        for a, b in combinations(later, 2):
            if not graph.has_edge(a, b):
                return False
    return True


# -- well-foundedness diagnostic ---------------------------------------------

def meeting_chain_depth(family: SetFamily) -> MeetingChainReport:
    """Longest chain whose running intersection stays nonempty and keeps shrinking.

    Each step strictly shrinks the running intersection, so the depth is at
    most ``len(family.ground)``; the search memoizes on that intersection.
    """
    masks = family.masks

    @lru_cache(maxsize=None)
    def best(current: int) -> tuple[int, tuple[int, ...]]:
        top: tuple[int, tuple[int, ...]] = (0, ())
        for i, m in enumerate(masks):
            nxt = current & m
            if nxt and nxt != current:
                d, tail = best(nxt)
                if d + 1 > top[0]:
                    top = (d + 1, (i,) + tail)
        return top

    result: tuple[int, tuple[int, ...]] = (0, ())
    for i, m in enumerate(masks):
        if m:
            d, tail = best(m)
            if d + 1 > result[0]:
                result = (d + 1, (i,) + tail)
    return MeetingChainReport(result[0], tuple(family.names[i] for i in result[1]))
