"""Graph-level uses of the two realizers.

Chordal graphs become families over their maximal cliques: the tree
realizer gives a subtree-intersection representation, and the interval
realizer orders the cliques into a path decomposition when one exists.
Also here: a path-decomposition verifier and an exact path-width oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .checkers import ChordlessCycle, check_chordal
from .interval import ObstructionTriple, realize_interval_order
from .model import Graph, SetFamily, Tree, induced_component_count
from .tree_realizer import realize_tree

PATHWIDTH_ORACLE_LIMIT = 15


class NotChordal(ValueError):
    def __init__(self, cycle: ChordlessCycle):
        self.cycle = cycle
        super().__init__(f"graph is not chordal: chordless cycle {' '.join(cycle.cycle)}")


@dataclass(frozen=True)
class PathDecomposition:
    graph: Graph
    bags: tuple[tuple[str, ...], ...]

    def __init__(self, graph: Graph, bags: Sequence[Sequence[str]]):
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "bags", tuple(tuple(sorted(b)) for b in bags))


@dataclass(frozen=True)
class DecompositionViolation:
    """A failed decomposition condition and its witness.

    ``condition`` is one of vertex-coverage, edge-coverage, contiguity or
    unknown-vertex.  Bag positions in witnesses count from 1, so a
    contiguity witness ``(v, i, j, k)`` means v is in bags i and k but not j.
    """

    condition: str
    witness: tuple

    kind = "decomposition-violation"

    def to_json(self) -> dict:
        return {"kind": self.kind, "condition": self.condition, "witness": list(self.witness)}


@dataclass(frozen=True)
class SubtreeRepresentation:
    host: Tree
    cliques: Mapping[str, tuple[str, ...]]
    subtrees: Mapping[str, tuple[str, ...]]

    def intersection_graph(self) -> Graph:
        verts = sorted(self.subtrees)
        sets = {v: set(self.subtrees[v]) for v in verts}
        edges = [
            (u, v)
            for i, u in enumerate(verts)
            for v in verts[i + 1:]
            if sets[u] & sets[v]
        ]
        return Graph(verts, edges)


def maximal_cliques_chordal(graph: Graph) -> list[tuple[str, ...]]:
    """Maximal cliques of a chordal graph, each a sorted label tuple, sorted."""
    result = check_chordal(graph)
    if isinstance(result, ChordlessCycle):
        raise NotChordal(result)
    g = graph.vertices
    pos = result.positions()
    candidates = set()
    for v in result.sequence:
        later = [u for u in graph.neighbors(v) if pos[u] > pos[v]]
        candidates.add(g.mask([v, *later]))
    maximal = [m for m in candidates if not any(m != o and m & o == m for o in candidates)]
    return sorted(g.labels(m) for m in maximal)


def _clique_family(graph: Graph) -> tuple[dict[str, tuple[str, ...]], SetFamily]:
    cliques = maximal_cliques_chordal(graph)
    width = len(str(max(len(cliques) - 1, 0)))
    names = {f"K{i:0{width}d}": c for i, c in enumerate(cliques)}
    members = {v: [k for k, c in names.items() if v in c] for v in graph.vertices}
    return names, SetFamily(list(names), members)


def subtree_representation(graph: Graph) -> SubtreeRepresentation:
    """Host tree on the maximal cliques; vertex v maps to the cliques holding it."""
    if len(graph) == 0:
        raise ValueError("graph has no vertices")
    names, family = _clique_family(graph)
    host = realize_tree(family)
    if not isinstance(host, Tree):
        raise AssertionError(f"clique family of a chordal graph was refused: {host}")
    subtrees = dict(family.items())
    rep = SubtreeRepresentation(host, names, subtrees)
    for v, s in subtrees.items():
        assert induced_component_count(host, s) == 1, f"S_{v} is not a subtree"
    assert rep.intersection_graph().edges == graph.edges, "representation changes adjacency"
    return rep


def verify_path_decomposition(dec: PathDecomposition) -> int | DecompositionViolation:
    g = dec.graph
    where: dict[str, list[int]] = {v: [] for v in g.vertices}
    for i, bag in enumerate(dec.bags):
        for v in bag:
            if v not in where:
                return DecompositionViolation("unknown-vertex", (v, i + 1))
            where[v].append(i)
    for v, idx in where.items():
        if not idx:
            return DecompositionViolation("vertex-coverage", (v,))
    for u, v in g.sorted_edges():
        if not set(where[u]) & set(where[v]):
            return DecompositionViolation("edge-coverage", (u, v))
    for v, idx in where.items():
        for a, b in zip(idx, idx[1:]):
            if b != a + 1:
                return DecompositionViolation("contiguity", (v, a + 1, a + 2, b + 1))
    if not dec.bags:
        return -1
    return max(len(b) for b in dec.bags) - 1


def line_decomposition_from_cliques(graph: Graph) -> PathDecomposition | ObstructionTriple:
    """Order the maximal cliques so each vertex's cliques are consecutive.

    Succeeds exactly for interval graphs; otherwise returns the obstruction
    triple over clique names.
    """
    if len(graph) == 0:
        return PathDecomposition(graph, [()])
    names, family = _clique_family(graph)
    order = realize_interval_order(family)
    if isinstance(order, ObstructionTriple):
        return order
    dec = PathDecomposition(graph, [names[k] for k in order.sequence])
    width = verify_path_decomposition(dec)
    assert isinstance(width, int), f"clique ordering is not a path decomposition: {width}"
    return dec


def _vertex_separation(graph: Graph) -> tuple[int, list[int]]:
    n = len(graph)
    adj = graph.adjacency
    full = (1 << n) - 1

    def boundary(s: int) -> int:
        count = 0
        rest = full & ~s
        m = s
        while m:
            bit = m & -m
            m ^= bit
            if adj[bit.bit_length() - 1] & rest:
                count += 1
        return count

    @lru_cache(maxsize=None)
    def best(s: int) -> tuple[int, int]:
        """(min over orders of prefix ``s`` of the worst boundary, last vertex)."""
        if s == 0:
            return 0, -1
        here = boundary(s)
        top = (n + 1, -1)
        m = s
        while m:
            bit = m & -m
            m ^= bit
            sub, _ = best(s & ~bit)
            cand = max(sub, here)
            if cand < top[0]:
                top = (cand, bit.bit_length() - 1)
        return top

    value, _ = best(full)
    order = []
    s = full
    while s:
        _, v = best(s)
        order.append(v)
        s &= ~(1 << v)
    best.cache_clear()
    return value, order[::-1]


def _bags_from_order(graph: Graph, order: list[int]) -> PathDecomposition:
    adj = graph.adjacency
    labels = graph.vertices.elements
    bags = []
    rest = graph.vertices.full_mask
    for i, v in enumerate(order):
        bags.append([labels[v]] + [labels[u] for u in order[:i] if adj[u] & rest])
        rest &= ~(1 << v)
    return PathDecomposition(graph, bags)


def _check_size(graph: Graph) -> None:
    if len(graph) > PATHWIDTH_ORACLE_LIMIT:
        raise ValueError(
            f"graph has {len(graph)} vertices; the exact oracle takes at most {PATHWIDTH_ORACLE_LIMIT}"
        )


def pathwidth_decomposition(graph: Graph) -> PathDecomposition:
    """Optimal decomposition from a minimum vertex-separation order.

    Bag i holds the i-th vertex plus every earlier vertex that still has a
    neighbour at position i or later.
    """
    _check_size(graph)
    if len(graph) == 0:
        return PathDecomposition(graph, [()])
    return _bags_from_order(graph, _vertex_separation(graph)[1])


def pathwidth_bruteforce(graph: Graph) -> int:
    """Exact path-width via a vertex-separation DP over vertex subsets.

    The result is cross-checked by rebuilding a decomposition of that width.
    The empty graph has width -1.
    """
    _check_size(graph)
    if len(graph) == 0:
        return -1
    value, order = _vertex_separation(graph)
    width = verify_path_decomposition(_bags_from_order(graph, order))
    assert width == value, f"reconstructed decomposition has width {width}, expected {value}"
    return value
