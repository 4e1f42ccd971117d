"""Brute-force oracles and seeded instance generators.

Randomness comes from numpy's Philox generator, a counter-based bit
generator.  Instance ``k`` of a stream is drawn from its own generator keyed
by ``SeedSequence([seed, k])``, so any instance can be regenerated without
replaying the ones before it.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterable, Iterator

import numpy as np

from .model import Graph, GroundSet, SetFamily, Tree, validate_subtree_representation

TREE_ORACLE_LIMIT = 8
GENERATOR_KINDS = ("counterexample-truncation", "random-family", "random-chordal", "random-interval")


def labels_for(n: int) -> list[str]:
    """``n`` numeric labels, zero-padded so string order matches numeric order."""
    width = len(str(max(n - 1, 0)))
    return [str(i).zfill(width) for i in range(n)]


# -- Pruefer codes ------------------------------------------------------------

def _decode(code: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for x in code:
        degree[x] += 1
    edges = []
    for x in code:
        leaf = degree.index(1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = (i for i in range(n) if degree[i] == 1)
    edges.append((u, w))
    return edges


@dataclass(frozen=True)
class PrueferCode:
    ground: GroundSet
    code: tuple[str, ...]

    def __post_init__(self):
        if len(self.code) != len(self.ground) - 2:
            raise ValueError(f"code length must be {len(self.ground) - 2}")
        if any(x not in self.ground for x in self.code):
            raise ValueError("code uses a label outside the ground set")

    def decode(self) -> Tree:
        g = self.ground
        idx = tuple(g.index(x) for x in self.code)
        edges = _decode(idx, len(g))
        return Tree.from_edges(g, [(g.elements[a], g.elements[b]) for a, b in edges])

    @classmethod
    def encode(cls, tree: Tree) -> PrueferCode:
        g = tree.vertices
        if len(g) < 2:
            raise ValueError("Pruefer codes need at least two vertices")
        adj = {v: set(tree.underlying.neighbors(v)) for v in g}
        code = []
        for _ in range(len(g) - 2):
            leaf = min(v for v, nb in adj.items() if len(nb) == 1)
            (parent,) = adj.pop(leaf)
            adj[parent].discard(leaf)
            code.append(parent)
        return cls(g, tuple(code))


def enumerate_labeled_trees(ground: GroundSet) -> Iterator[Tree]:
    """Every labeled tree on ``ground``, in lexicographic Pruefer-code order."""
    n = len(ground)
    if not 2 <= n <= TREE_ORACLE_LIMIT:
        raise ValueError(f"tree enumeration takes 2..{TREE_ORACLE_LIMIT} labels, got {n}")
    for code in product(ground.elements, repeat=n - 2):
        yield PrueferCode(ground, code).decode()


def _pair_bit(i: int, j: int, n: int) -> int:
    if i > j:
        i, j = j, i
    return i * n - i * (i + 1) // 2 + (j - i - 1)


@lru_cache(maxsize=None)
def _tree_table(n: int) -> np.ndarray:
    """Edge sets of all Pruefer-ordered trees on ``range(n)`` as pair bitmasks."""
    out = np.empty(n ** (n - 2), dtype=np.int64)
    for k, code in enumerate(product(range(n), repeat=n - 2)):
        m = 0
        for a, b in _decode(code, n):
            m |= 1 << _pair_bit(a, b, n)
        out[k] = m
    return out


def realize_tree_bruteforce(family: SetFamily) -> Tree | None:
    """First tree in Pruefer order on which every member induces a subtree.

    The scan keeps, for each candidate tree, a running verdict: a nonempty
    set S induces a subtree exactly when |S| - 1 tree edges lie inside S.
    All trees are tested at once per set; the winner is then re-checked
    with the component-counting validator.
    """
    g = family.ground
    n = len(g)
    if n > TREE_ORACLE_LIMIT:
        raise ValueError(f"ground set has {n} elements; the exhaustive oracle takes at most {TREE_ORACLE_LIMIT}")
    if n == 0:
        return None
    if n == 1:
        return Tree.from_edges(g, [])
    table = _tree_table(n)
    alive = np.ones(len(table), dtype=bool)
    for m in set(family.masks):
        size = m.bit_count()
        if size <= 1:
            continue
        members = [i for i in range(n) if m >> i & 1]
        pm = 0
        for i, j in combinations(members, 2):
            pm |= 1 << _pair_bit(i, j, n)
        alive &= np.bitwise_count(table & pm) == size - 1
        if not alive.any():
            return None
    first = int(np.argmax(alive))
    code = np.unravel_index(first, (n,) * (n - 2)) if n > 2 else ()
    tree = PrueferCode(g, tuple(g.elements[int(i)] for i in code)).decode()
    assert validate_subtree_representation(tree, family).ok
    return tree


# -- generators ---------------------------------------------------------------

def counterexample_truncation(n: int) -> SetFamily:
    """Finite piece of the Helly, chordal family with no tree on the integers.

    Ground set ``0..n``; sets ``{i, i+1}`` and ``{0, i, ..., n}`` for
    ``1 <= i <= n-1``.
    """
    if n < 3:
        raise ValueError("truncation needs n >= 3")
    w = labels_for(n + 1)
    width = len(str(n - 1))
    sets = {}
    for i in range(1, n):
        sets[f"edge{i:0{width}d}"] = [w[i], w[i + 1]]
        sets[f"tail{i:0{width}d}"] = [w[0]] + w[i:]
    return SetFamily(w, sets)


@dataclass(frozen=True)
class GeneratorSpec:
    """What to generate.

    ``n`` and ``sets`` accept an int or an inclusive ``(lo, hi)`` range drawn
    per instance.  ``density=None`` draws a fresh density per instance.
    """

    kind: str
    n: int | tuple[int, int] = 6
    sets: int | tuple[int, int] = 4
    density: float | None = None
    max_clique: int = 4
    allow_empty: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        lo, hi = _span(self.n)
        if lo < 1 or hi < lo:
            raise ValueError(f"bad size {self.n!r}")
        slo, shi = _span(self.sets)
        if slo < 0 or shi < slo:
            raise ValueError(f"bad set count {self.sets!r}")
        if self.density is not None and not 0.0 <= self.density <= 1.0:
            raise ValueError("density must lie in [0, 1]")
        if self.max_clique < 1:
            raise ValueError("max_clique must be positive")
        if self.kind == "counterexample-truncation" and lo < 3:
            raise ValueError("truncation needs n >= 3")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


def _span(v) -> tuple[int, int]:
    return (v, v) if isinstance(v, int) else (int(v[0]), int(v[1]))


def instance_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


def _draw(rng: np.random.Generator, v) -> int:
    lo, hi = _span(v)
    return int(rng.integers(lo, hi + 1))


def random_family(rng: np.random.Generator, n: int, k: int, density: float | None, allow_empty: bool = False) -> SetFamily:
    w = labels_for(n)
    p = float(rng.uniform(0.15, 0.85)) if density is None else density
    sets = []
    for _ in range(k):
        while True:
            row = rng.random(n) < p
            if allow_empty or row.any():
                break
        sets.append([w[i] for i in np.flatnonzero(row)])
    width = len(str(k))
    return SetFamily(w, {f"s{i + 1:0{width}d}": s for i, s in enumerate(sets)})


def random_chordal(rng: np.random.Generator, n: int, max_clique: int) -> Graph:
    """Glue cliques along random sub-cliques of earlier ones (a random clique tree)."""
    w = labels_for(n)
    first = min(n, int(rng.integers(1, max_clique + 1)))
    cliques = [list(range(first))]
    count = first
    while count < n:
        base = cliques[int(rng.integers(len(cliques)))]
        sep_size = int(rng.integers(0, min(len(base), max_clique - 1) + 1))
        sep = sorted(int(x) for x in rng.choice(base, size=sep_size, replace=False)) if sep_size else []
        fresh = min(n - count, int(rng.integers(1, max_clique - sep_size + 1)))
        clique = sep + list(range(count, count + fresh))
        count += fresh
        cliques.append(clique)
    edges = {(w[a], w[b]) for c in cliques for a, b in combinations(c, 2)}
    return Graph(w, edges)


def random_interval(rng: np.random.Generator, n: int) -> Graph:
    """Intersection graph of ``n`` random closed integer segments."""
    w = labels_for(n)
    left = rng.integers(0, 2 * n, size=n)
    right = left + rng.integers(0, n + 1, size=n)
    edges = [
        (w[i], w[j])
        for i, j in combinations(range(n), 2)
        if left[i] <= right[j] and left[j] <= right[i]
    ]
    return Graph(w, edges)


def random_instances(spec: GeneratorSpec) -> Iterator[SetFamily | Graph]:
    """Endless deterministic stream of instances described by ``spec``."""
    index = 0
    while True:
        rng = instance_rng(spec.seed, index)
        n = _draw(rng, spec.n)
        if spec.kind == "counterexample-truncation":
            yield counterexample_truncation(n)
        elif spec.kind == "random-family":
            yield random_family(rng, n, _draw(rng, spec.sets), spec.density, spec.allow_empty)
        elif spec.kind == "random-chordal":
            yield random_chordal(rng, n, spec.max_clique)
        else:
            yield random_interval(rng, n)
        index += 1


def all_families(ground: GroundSet, max_sets: int, nonempty: bool = True) -> Iterator[SetFamily]:
    """Every family of distinct subsets of ``ground`` with at most ``max_sets`` members."""
    n = len(ground)
    pool = list(range(1 if nonempty else 0, 1 << n))
    for k in range(max_sets + 1):
        width = len(str(k))
        for combo in combinations(pool, k):
            yield SetFamily.from_masks(ground, [(f"s{i + 1:0{width}d}", m) for i, m in enumerate(combo)])


@lru_cache(maxsize=None)
def _relabel_table(n: int) -> np.ndarray:
    """Row p maps every subset mask of ``range(n)`` to its image under permutation p."""
    perms = np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)
    masks = np.arange(1 << n, dtype=np.int64)
    out = np.zeros((len(perms), 1 << n), dtype=np.int64)
    for i in range(n):
        out |= ((masks >> i) & 1)[None, :] << perms[:, i : i + 1]
    return out


def _is_canonical(table: np.ndarray, family: tuple[int, ...]) -> bool:
    images = np.sort(table[:, list(family)], axis=1)
    diff = images != np.array(family)
    first = diff.argmax(axis=1)
    rows = np.flatnonzero(diff.any(axis=1))
    return not (images[rows, first[rows]] < np.array(family)[first[rows]]).any()


def families_up_to_isomorphism(
    ground: GroundSet, max_sets: int, pool: Iterable[int] | None = None
) -> Iterator[SetFamily]:
    """One family of distinct subsets per isomorphism class, by orderly generation.

    A family is kept only if its ascending mask tuple is the lexicographic
    minimum over all relabelings of the ground set.  Dropping the largest
    mask of such a tuple leaves another minimum, so extending canonical
    families by larger masks reaches every class exactly once.  ``pool``
    restricts the candidate masks; it must be closed under relabeling.
    """
    n = len(ground)
    table = _relabel_table(n)
    candidates = sorted(range(1, 1 << n) if pool is None else set(pool))
    width = len(str(max_sets))

    def grow(family: tuple[int, ...], start: int) -> Iterator[SetFamily]:
        yield SetFamily.from_masks(ground, [(f"s{i + 1:0{width}d}", m) for i, m in enumerate(family)])
        if len(family) == max_sets:
            return
        for k in range(start, len(candidates)):
            nxt = family + (candidates[k],)
            if _is_canonical(table, nxt):
                yield from grow(nxt, k + 1)

    yield from grow((), 0)
