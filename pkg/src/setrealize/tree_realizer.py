"""Subtree realization of a set family on a tree with vertex set W.

The construction adjoins W, then greedily adds two-element sets ("edge
ships") for as long as the family stays Helly and chordal.  Once no pair
can be added, the edge ships span W and any spanning tree made of them
realizes every member as a subtree.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .checkers import (
    ChordlessCycle,
    HellyViolation,
    chordal_holds,
    check_chordal,
    check_helly_triples,
    helly_holds,
    intersection_adjacency,
)
from .model import GroundSet, SetFamily, Tree, intersection_graph, validate_subtree_representation

GROUND_NAME = "__ground__"


class NotAFleet(ValueError):
    pass


def _fresh_name(base: str, taken: set[str]) -> str:
    name = base
    k = 1
    while name in taken:
        k += 1
        name = f"{base}#{k}"
    taken.add(name)
    return name


@dataclass(frozen=True)
class Fleet:
    """A Helly, chordal family that contains its whole ground set."""

    family: SetFamily

    def __post_init__(self):
        fam = self.family
        full = fam.ground.full_mask
        if full not in fam.masks:
            raise NotAFleet("the ground set is not a member")
        if not helly_holds(fam.masks, len(fam.ground)):
            raise NotAFleet("the finite Helly property fails")
        if not chordal_holds(intersection_adjacency(fam.masks)):
            raise NotAFleet("the intersection graph is not chordal")

    @classmethod
    def from_family(cls, family: SetFamily) -> Fleet:
        """Adjoin W (if missing) and drop duplicate members."""
        full = family.ground.full_mask
        seen = set()
        keep = []
        for name, m in zip(family.names, family.masks):
            if m not in seen:
                seen.add(m)
                keep.append((name, m))
        if full not in seen:
            keep.append((_fresh_name(GROUND_NAME, set(family.names)), full))
        return cls(SetFamily.from_masks(family.ground, keep))

    @property
    def ground(self) -> GroundSet:
        return self.family.ground

    @property
    def edge_ships(self) -> tuple[tuple[str, str], ...]:
        pairs = {m for m in self.family.masks if m.bit_count() == 2}
        return tuple(sorted(self.ground.labels(m) for m in pairs))

    def edge_ship_masks(self) -> list[int]:
        return [m for m in self.family.masks if m.bit_count() == 2]


@dataclass(frozen=True)
class DisconnectedMeeting:
    generators: tuple[str, ...]
    meeting: tuple[str, ...]
    parts: tuple[tuple[str, ...], ...]


def extend_fleet_maximally(fleet: Fleet) -> Fleet:
    """Add every pair, in lexicographic order, that keeps the fleet valid.

    Each candidate is checked by recomputing the Helly and chordal tests from
    scratch.  Rejection is permanent: a Helly witness or induced cycle that
    involves the candidate survives any later insertion, so one pass yields a
    maximal extension.
    """
    fam = fleet.family
    n = len(fam.ground)
    masks = list(fam.masks)
    present = set(masks)
    named = list(zip(fam.names, masks))
    taken = set(fam.names)
    labels = fam.ground.elements
    for i, j in combinations(range(n), 2):
        pair = (1 << i) | (1 << j)
        if pair in present:
            continue
        trial = masks + [pair]
        if helly_holds(trial, n) and chordal_holds(intersection_adjacency(trial)):
            masks = trial
            present.add(pair)
            named.append((_fresh_name(f"{labels[i]}~{labels[j]}", taken), pair))
    return Fleet(SetFamily.from_masks(fam.ground, named))


def _edge_components(n: int, edges: list[int], within: int) -> list[int]:
    adj = [0] * n
    for e in edges:
        if e & within == e:
            a = e & -e
            b = e ^ a
            ia, ib = a.bit_length() - 1, b.bit_length() - 1
            adj[ia] |= b
            adj[ib] |= a
    comps = []
    remaining = within
    while remaining:
        comp = frontier = remaining & -remaining
        while frontier:
            bit = frontier & -frontier
            frontier ^= bit
            new = adj[bit.bit_length() - 1] & remaining & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        remaining &= ~comp
    return comps


def meetings(fleet: Fleet) -> dict[int, tuple[str, ...]]:
    """All nonempty finite intersections of ships, each with a shortest generator list."""
    fam = fleet.family
    found: dict[int, tuple[str, ...]] = {}
    queue: deque[int] = deque()
    for name, m in zip(fam.names, fam.masks):
        if m and m not in found:
            found[m] = (name,)
            queue.append(m)
    while queue:
        cur = queue.popleft()
        for name, m in zip(fam.names, fam.masks):
            nxt = cur & m
            if nxt and nxt not in found:
                found[nxt] = found[cur] + (name,)
                queue.append(nxt)
    return found


def find_disconnected_meeting(fleet: Fleet) -> DisconnectedMeeting | None:
    """Smallest meeting whose internal edge ships leave it disconnected."""
    ground = fleet.ground
    n = len(ground)
    edges = fleet.edge_ship_masks()
    found = meetings(fleet)
    for m in sorted(found, key=lambda m: (m.bit_count(), ground.labels(m))):
        comps = _edge_components(n, edges, m)
        if len(comps) > 1:
            parts = sorted(ground.labels(c) for c in comps)
            return DisconnectedMeeting(found[m], ground.labels(m), tuple(parts))
    return None


def spanning_tree_of_edge_ships(fleet: Fleet) -> Tree:
    """BFS tree over edge ships from the smallest label, neighbours in label order."""
    ground = fleet.ground
    n = len(ground)
    adj = [0] * n
    for e in fleet.edge_ship_masks():
        a = e & -e
        b = e ^ a
        adj[a.bit_length() - 1] |= b
        adj[b.bit_length() - 1] |= a
    seen = 1
    tree_edges = []
    queue = deque([0])
    while queue:
        v = queue.popleft()
        nb = adj[v] & ~seen
        for u in range(n):
            if nb >> u & 1:
                seen |= 1 << u
                tree_edges.append((ground.elements[v], ground.elements[u]))
                queue.append(u)
    if seen != ground.full_mask:
        raise ValueError("edge ships do not connect the ground set")
    return Tree.from_edges(ground, tree_edges)


def realize_tree(family: SetFamily) -> Tree | HellyViolation | ChordlessCycle:
    """A tree on W in which every member induces a subtree, or a certificate.

    Certificates name sets of the input family.  The result is fully
    determined by the family.
    """
    if len(family.ground) == 0:
        raise ValueError("the ground set is empty")
    helly = check_helly_triples(family)
    if helly is not None:
        return helly
    chordal = check_chordal(intersection_graph(family))
    if isinstance(chordal, ChordlessCycle):
        return chordal
    if len(family.ground) == 1:
        tree = Tree.from_edges(family.ground, [])
    else:
        fleet = extend_fleet_maximally(Fleet.from_family(family))
        tree = spanning_tree_of_edge_ships(fleet)
    report = validate_subtree_representation(tree, family)
    assert report.ok, f"constructed tree fails on {report.failures}"
    return tree
