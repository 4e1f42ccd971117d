"""A small PQ-tree for consecutive-ones ordering.

This is the quadratic textbook variant: each reduction walks down to the
pertinent root and rebuilds the pertinent subtree bottom-up with the usual
templates.  It is meant for desk-scale instances, not for linear time.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

EMPTY, PARTIAL, FULL = 0, 1, 2


class Infeasible(Exception):
    """No ordering keeps every reduced set consecutive."""


@dataclass
class Leaf:
    label: str

    def leaves(self) -> frozenset[str]:
        return frozenset((self.label,))


@dataclass
class PNode:
    children: list[Node] = field(default_factory=list)

    def leaves(self) -> frozenset[str]:
        return frozenset().union(*(c.leaves() for c in self.children))


@dataclass
class QNode:
    children: list[Node] = field(default_factory=list)

    def leaves(self) -> frozenset[str]:
        return frozenset().union(*(c.leaves() for c in self.children))


Node = Union[Leaf, PNode, QNode]


def _group(nodes: list[Node]) -> list[Node]:
    """Wrap two or more siblings into a P-node; pass zero or one through."""
    if len(nodes) >= 2:
        return [PNode(list(nodes))]
    return list(nodes)


def _status(node: Node, s: frozenset[str]) -> int:
    lv = node.leaves()
    if lv <= s:
        return FULL
    if lv.isdisjoint(s):
        return EMPTY
    return PARTIAL


def _reduce_below(node: Node, s: frozenset[str]) -> tuple[int, Node]:
    """Rebuild a non-root node so that its S-leaves sit at its right end."""
    st = _status(node, s)
    if st != PARTIAL:
        return st, node
    kids = [_reduce_below(c, s) for c in node.children]
    partial = [k for st_, k in kids if st_ == PARTIAL]
    if len(partial) > 1:
        raise Infeasible
    if isinstance(node, PNode):
        empty = [k for st_, k in kids if st_ == EMPTY]
        full = [k for st_, k in kids if st_ == FULL]
        middle = partial[0].children if partial else []
        return PARTIAL, QNode(_group(empty) + list(middle) + _group(full))
    tags = [st_ for st_, _ in kids]
    if not _ascending(tags):
        tags.reverse()
        kids.reverse()
        if not _ascending(tags):
            raise Infeasible
    out: list[Node] = []
    for st_, k in kids:
        out.extend(k.children if st_ == PARTIAL else [k])
    return PARTIAL, QNode(out)


def _ascending(tags: list[int]) -> bool:
    """EMPTY* PARTIAL? FULL*"""
    seen_partial = False
    prev = EMPTY
    for t in tags:
        if t < prev:
            return False
        if t == PARTIAL:
            if seen_partial:
                return False
            seen_partial = True
        prev = t
    return True


def _reduce_root(node: Node, s: frozenset[str]) -> Node:
    if isinstance(node, Leaf):
        return node
    kids = [_reduce_below(c, s) for c in node.children]
    if isinstance(node, PNode):
        empty = [k for st, k in kids if st == EMPTY]
        full = [k for st, k in kids if st == FULL]
        partial = [k for st, k in kids if st == PARTIAL]
        if len(partial) > 2:
            raise Infeasible
        if not partial:
            if not empty:
                return node
            return _collapse(PNode(empty + _group(full)))
        seq = list(partial[0].children) + _group(full)
        if len(partial) == 2:
            seq += list(reversed(partial[1].children))
        q = QNode(seq)
        return _collapse(PNode(empty + [q])) if empty else q
    # Q-node: EMPTY* [PARTIAL] FULL* [PARTIAL] EMPTY*, with the pertinent run contiguous.
    tags = [st for st, _ in kids]
    hot = [i for i, t in enumerate(tags) if t != EMPTY]
    lo, hi = hot[0], hot[-1]
    if any(tags[i] == EMPTY for i in range(lo, hi + 1)):
        raise Infeasible
    if any(tags[i] == PARTIAL for i in range(lo + 1, hi)):
        raise Infeasible
    out: list[Node] = []
    for i, (st, k) in enumerate(kids):
        if st != PARTIAL:
            out.append(k)
        elif i == lo and i != hi:
            out.extend(k.children)
        elif i == hi and i != lo:
            out.extend(reversed(k.children))
        else:
            raise Infeasible
    return QNode(out)


def _collapse(node: Node) -> Node:
    if isinstance(node, PNode) and len(node.children) == 1:
        return node.children[0]
    return node


class PQTree:
    """All orderings of ``labels`` that keep every reduced set consecutive."""

    def __init__(self, labels: Iterable[str]):
        labels = list(labels)
        if not labels:
            raise ValueError("a PQ-tree needs at least one leaf")
        leaves: list[Node] = [Leaf(x) for x in labels]
        self.root: Node = leaves[0] if len(leaves) == 1 else PNode(leaves)
        self._labels = frozenset(labels)

    def reduce(self, subset: Iterable[str]) -> None:
        """Restrict to orderings where ``subset`` is consecutive.

        Raises :class:`Infeasible` and leaves the tree untouched if none remain.
        """
        s = frozenset(subset)
        if not s <= self._labels:
            raise ValueError("subset has labels outside the tree")
        if len(s) <= 1 or s == self._labels:
            return
        self.root = self._reduce_at(self.root, s)

    def _reduce_at(self, node: Node, s: frozenset[str]) -> Node:
        for i, child in enumerate(getattr(node, "children", ())):
            if s <= child.leaves():
                new_child = self._reduce_at(child, s)
                children = list(node.children)
                children[i] = new_child
                return type(node)(children)
        return _reduce_root(node, s)

    def frontier(self) -> list[str]:
        """One admissible ordering; P-node children go in order of their smallest leaf."""
        out: list[str] = []
        self._walk(self.root, out)
        return out

    def _walk(self, node: Node, out: list[str]) -> None:
        if isinstance(node, Leaf):
            out.append(node.label)
        elif isinstance(node, PNode):
            for c in sorted(node.children, key=lambda c: min(c.leaves())):
                self._walk(c, out)
        else:
            for c in node.children:
                self._walk(c, out)
