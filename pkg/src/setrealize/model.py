"""Ground sets, set families, graphs, trees and orderings.

Every value here is immutable.  Labels are opaque strings kept in sorted
order, and each subset carries a bitmask indexed by that order so the
exhaustive routines elsewhere can intersect sets with a single ``&``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


class FormatError(ValueError):
    """Raised when a family or graph file cannot be parsed.

    ``location`` is a human-readable pointer into the input, e.g.
    ``"line 3, column 7"`` or ``"sets.s1[0]"``.
    """

    def __init__(self, message: str, location: str | None = None):
        self.message = message
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


@dataclass(frozen=True)
class GroundSet:
    elements: tuple[str, ...]
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __init__(self, elements: Iterable[str]):
        elements = list(elements)
        for x in elements:
            if not isinstance(x, str):
                raise TypeError(f"labels must be strings, got {x!r}")
        if len(set(elements)) != len(elements):
            seen: set[str] = set()
            dup = next(x for x in elements if x in seen or seen.add(x))
            raise ValueError(f"duplicate label {dup}")
        ordered = tuple(sorted(elements))
        object.__setattr__(self, "elements", ordered)
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(ordered)})

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def index(self, label: str) -> int:
        return self._index[label]

    @property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for x in labels:
            try:
                m |= 1 << self._index[x]
            except KeyError:
                raise ValueError(f"unknown label {x}") from None
        return m

    def labels(self, mask: int) -> tuple[str, ...]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self.elements[i])
            mask >>= 1
            i += 1
        return tuple(out)


@dataclass(frozen=True)
class SetFamily:
    """A ground set plus named member sets, kept in name order."""

    ground: GroundSet
    names: tuple[str, ...]
    members: tuple[tuple[str, ...], ...]
    masks: tuple[int, ...] = field(repr=False, compare=False)

    def __init__(self, ground: GroundSet | Iterable[str], sets: Mapping[str, Iterable[str]] | Iterable[tuple[str, Iterable[str]]]):
        if not isinstance(ground, GroundSet):
            ground = GroundSet(ground)
        items = list(sets.items()) if isinstance(sets, Mapping) else list(sets)
        seen: set[str] = set()
        for name, _ in items:
            if not isinstance(name, str):
                raise TypeError(f"set names must be strings, got {name!r}")
            if name in seen:
                raise ValueError(f"duplicate set name {name}")
            seen.add(name)
        items.sort(key=lambda kv: kv[0])
        masks = tuple(ground.mask(m) for _, m in items)
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "names", tuple(n for n, _ in items))
        object.__setattr__(self, "members", tuple(ground.labels(m) for m in masks))
        object.__setattr__(self, "masks", masks)

    @classmethod
    def from_masks(cls, ground: GroundSet, named_masks: Iterable[tuple[str, int]]) -> SetFamily:
        return cls(ground, [(n, ground.labels(m)) for n, m in named_masks])

    def __len__(self) -> int:
        return len(self.names)

    def items(self) -> Iterator[tuple[str, tuple[str, ...]]]:
        return zip(self.names, self.members)

    def get(self, name: str) -> tuple[str, ...]:
        return self.members[self.names.index(name)]

    def mask_of(self, name: str) -> int:
        return self.masks[self.names.index(name)]

    def as_dict(self) -> dict[str, list[str]]:
        return {n: list(m) for n, m in self.items()}


@dataclass(frozen=True)
class Graph:
    vertices: GroundSet
    edges: frozenset[tuple[str, str]]
    adjacency: tuple[int, ...] = field(repr=False, compare=False)

    def __init__(self, vertices: GroundSet | Iterable[str], edges: Iterable[Iterable[str]] = ()):
        if not isinstance(vertices, GroundSet):
            vertices = GroundSet(vertices)
        norm = set()
        adj = [0] * len(vertices)
        for e in edges:
            u, v = tuple(e)
            if u == v:
                raise ValueError(f"loop at {u}")
            if u not in vertices or v not in vertices:
                raise ValueError(f"edge {u} {v} has an endpoint outside the vertex set")
            if u > v:
                u, v = v, u
            norm.add((u, v))
            i, j = vertices.index(u), vertices.index(v)
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "adjacency", tuple(adj))

    def __len__(self) -> int:
        return len(self.vertices)

    def has_edge(self, u: str, v: str) -> bool:
        return bool(self.adjacency[self.vertices.index(u)] >> self.vertices.index(v) & 1)

    def neighbors(self, v: str) -> tuple[str, ...]:
        return self.vertices.labels(self.adjacency[self.vertices.index(v)])

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(self.edges)

    def induced(self, labels: Iterable[str]) -> Graph:
        keep = set(labels)
        return Graph(keep, [e for e in self.edges if e[0] in keep and e[1] in keep])

    def components(self, mask: int | None = None) -> list[int]:
        """Connected components of the subgraph induced on ``mask``, as masks."""
        remaining = self.vertices.full_mask if mask is None else mask
        out = []
        while remaining:
            low = remaining & -remaining
            comp = low
            frontier = low
            while frontier:
                bit = frontier & -frontier
                frontier ^= bit
                new = self.adjacency[bit.bit_length() - 1] & remaining & ~comp
                comp |= new
                frontier |= new
            out.append(comp)
            remaining &= ~comp
        return out


@dataclass(frozen=True)
class Tree:
    underlying: Graph

    def __post_init__(self):
        g = self.underlying
        n = len(g)
        if n == 0:
            raise ValueError("a tree needs at least one vertex")
        if len(g.edges) != n - 1:
            raise ValueError(f"a tree on {n} vertices has {n - 1} edges, got {len(g.edges)}")
        if len(g.components()) != 1:
            raise ValueError("tree is not connected")

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[Iterable[str]]) -> Tree:
        return cls(Graph(vertices, edges))

    @property
    def vertices(self) -> GroundSet:
        return self.underlying.vertices

    @property
    def edges(self) -> frozenset[tuple[str, str]]:
        return self.underlying.edges

    def sorted_edges(self) -> list[tuple[str, str]]:
        return self.underlying.sorted_edges()


@dataclass(frozen=True)
class Ordering:
    sequence: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "sequence", tuple(self.sequence))
        if len(set(self.sequence)) != len(self.sequence):
            raise ValueError("ordering repeats a label")

    def positions(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.sequence)}

    def is_interval(self, labels: Iterable[str]) -> bool:
        pos = self.positions()
        idx = sorted(pos[x] for x in labels)
        return not idx or idx[-1] - idx[0] + 1 == len(idx)

    def as_path(self) -> Graph:
        seq = self.sequence
        return Graph(seq, zip(seq, seq[1:]))


@dataclass(frozen=True)
class ValidationReport:
    """Sets that fail to induce a subtree, with their component counts."""

    failures: tuple[tuple[str, int], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures


# -- serialization ----------------------------------------------------------

def _locate(text: str, pos: int) -> str:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return f"line {line}, column {col}"


def parse_family(data: bytes | str) -> SetFamily:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        obj = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    except _DuplicateKey as exc:
        raise FormatError(f"duplicate set name {exc.key}", "sets") from None
    if not isinstance(obj, dict) or set(obj) != {"ground", "sets"}:
        raise FormatError('expected an object with exactly the keys "ground" and "sets"', "top level")
    ground = obj["ground"]
    sets = obj["sets"]
    if not isinstance(ground, list) or not all(isinstance(x, str) for x in ground):
        raise FormatError("ground must be a list of strings", "ground")
    seen: set[str] = set()
    for i, x in enumerate(ground):
        if x in seen:
            raise FormatError(f"duplicate label {x}", f"ground[{i}]")
        seen.add(x)
    if not isinstance(sets, dict):
        raise FormatError("sets must be an object mapping names to label lists", "sets")
    for name, members in sets.items():
        if not isinstance(members, list) or not all(isinstance(x, str) for x in members):
            raise FormatError("members must be a list of strings", f"sets.{name}")
        for i, x in enumerate(members):
            if x not in seen:
                raise FormatError(f"unknown label {x}", f"sets.{name}[{i}]")
    return SetFamily(ground, sets)


class _DuplicateKey(Exception):
    def __init__(self, key):
        self.key = key


def _reject_duplicate_keys(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise _DuplicateKey(k)
        out[k] = v
    return out


def serialize_family(family: SetFamily) -> str:
    doc = {"ground": list(family.ground.elements), "sets": family.as_dict()}
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def parse_graph(data: bytes | str) -> Graph:
    """Parse the edge-list format: a ``vertices:`` header then ``u v`` lines.

    Blank lines and lines starting with ``#`` are ignored.
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    vertices: list[str] | None = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if vertices is None:
            if not line.startswith("vertices:"):
                raise FormatError('expected a "vertices:" header', f"line {lineno}, column 1")
            vertices = line[len("vertices:"):].split()
            if len(set(vertices)) != len(vertices):
                raise FormatError("duplicate vertex label", f"line {lineno}")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected two labels, got {len(parts)}", f"line {lineno}, column 1")
        u, v = parts
        for label, col in ((u, raw.index(u) + 1), (v, raw.rindex(v) + 1)):
            if label not in vertices:
                raise FormatError(f"unknown label {label}", f"line {lineno}, column {col}")
        if u == v:
            raise FormatError(f"loop at {u}", f"line {lineno}, column 1")
        edges.append((u, v))
    if vertices is None:
        raise FormatError('missing "vertices:" header', "line 1, column 1")
    return Graph(vertices, edges)


def serialize_graph(graph: Graph) -> str:
    lines = ["vertices: " + " ".join(graph.vertices.elements)]
    lines += [f"{u} {v}" for u, v in graph.sorted_edges()]
    return "\n".join(lines) + "\n"


# -- derived structures -----------------------------------------------------

def intersection_graph(family: SetFamily) -> Graph:
    """One vertex per named set; two sets are adjacent iff they meet."""
    names, masks = family.names, family.masks
    edges = [
        (names[i], names[j])
        for i in range(len(names))
        for j in range(i + 1, len(names))
        if masks[i] & masks[j]
    ]
    return Graph(names, edges)


def induced_component_count(tree: Tree, subset: Iterable[str]) -> int:
    g = tree.underlying
    try:
        mask = g.vertices.mask(subset)
    except ValueError as exc:
        raise ValueError(f"{exc} (not a tree vertex)") from None
    return len(g.components(mask))


def validate_subtree_representation(tree: Tree, family: SetFamily) -> ValidationReport:
    if tree.vertices.elements != family.ground.elements:
        raise ValueError("tree vertex set differs from the family's ground set")
    failures = []
    for name, members in family.items():
        if not members:
            continue
        count = induced_component_count(tree, members)
        if count != 1:
            failures.append((name, count))
    return ValidationReport(tuple(failures))


def family_from_lists(ground: Sequence[str], sets: Sequence[Iterable[str]], prefix: str = "s") -> SetFamily:
    """Convenience constructor naming sets ``s1, s2, ...`` (zero-padded past 9)."""
    width = len(str(len(sets)))
    return SetFamily(ground, {f"{prefix}{i + 1:0{width}d}": list(s) for i, s in enumerate(sets)})
