"""Concrete cursor constructors for the iterated structures.

Sequences, finite sets, binary trees (element-by-element and level-by-level)
each get a cursor whose permitted/complete predicates encode the canonical
iteration contract for that structure. The native predicate closures used
here are semantically identical to the term-language formulas the surface
syntax uses; the test suite checks that equivalence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .cursor import Cursor, create_cursor
from .engine import ClientContract, checked_iter
from .values import FiniteSet, QueueRef, StackRef, Value, value_key


class BinaryTree:
    __slots__ = ()

    def flatten(self) -> tuple:
        """All values, left-to-right (node value between its subtrees)."""
        out: list = []
        _flatten_into(self, out)
        return tuple(out)

    def levels(self) -> tuple:
        """One sequence per depth, each left-to-right; root is level 0."""
        out: list = []
        layer = [self] if not isinstance(self, Leaf) else []
        while layer:
            out.append(tuple(node.value for node in layer))
            layer = [child
                     for node in layer
                     for child in (node.left, node.right)
                     if not isinstance(child, Leaf)]
        return tuple(out)

    def size(self) -> int:
        if isinstance(self, Leaf):
            return 0
        return 1 + self.left.size() + self.right.size()

    def height(self) -> int:
        """Number of levels; 0 for the empty tree."""
        return len(self.levels())


@dataclass(frozen=True)
class Leaf(BinaryTree):
    def _value_key_(self) -> tuple:
        return (4, ())


@dataclass(frozen=True)
class Node(BinaryTree):
    left: BinaryTree
    value: Value
    right: BinaryTree

    def _value_key_(self) -> tuple:
        return (4, (self.left._value_key_(), value_key(self.value),
                    self.right._value_key_()))


LEAF = Leaf()


def _flatten_into(t: BinaryTree, out: list) -> None:
    if isinstance(t, Leaf):
        return
    _flatten_into(t.left, out)
    out.append(t.value)
    _flatten_into(t.right, out)


def _prefix_cursor(source: tuple) -> Cursor:
    """Cursor whose permitted is prefix-of-source and complete is
    length equality."""
    return create_cursor(
        iter(source),
        permitted=lambda v: v == source[:len(v)],
        complete=lambda v: len(v) == len(source),
    )


def seq_cursor(s: tuple) -> Cursor:
    """Iterate a sequence in order; visited must remain a prefix of it."""
    return _prefix_cursor(tuple(s))


def set_cursor(s: FiniteSet, rng: Optional[random.Random] = None) -> Cursor:
    """Iterate a finite set; visited must stay a distinct subsequence of its
    members, and iteration completes when all members were produced.

    Enumeration order is canonical unless an ``rng`` is supplied to permute
    it; the predicates never depend on the order.
    """
    elems = list(s.elems)
    if rng is not None:
        rng.shuffle(elems)

    def permitted(v: tuple) -> bool:
        vs = FiniteSet(v)
        return len(vs) == len(v) and vs.subset(s)

    return create_cursor(iter(elems), permitted,
                         complete=lambda v: FiniteSet(v) == s)


def tree_cursor(t: BinaryTree) -> Cursor:
    """Iterate a binary tree's values; the tree is read as the sequence it
    flattens to, and visited must remain a prefix of that sequence."""
    return _prefix_cursor(t.flatten())


def level_cursor(t: BinaryTree) -> Cursor:
    """Iterate a binary tree level by level; each produced element is the
    whole sequence of values at one depth."""
    return _prefix_cursor(t.levels())


def stack_of_seq(s: tuple) -> StackRef:
    """Push every element of ``s`` onto a fresh stack, checking at each step
    that the reversed stack contents equal the visited prefix."""
    s = tuple(s)
    stack = StackRef()
    checked_iter(
        stack.push,
        seq_cursor(s),
        ClientContract(
            inv=lambda v: tuple(reversed(stack.contents())) == s[:len(v)],
            convergence=lambda c, v: len(c) - len(v),
            collection=s,
        ),
    )
    return stack


def queue_of_seq(s: tuple) -> QueueRef:
    """Push every element of ``s`` onto a fresh queue; the queue contents
    must equal the visited prefix at each step."""
    s = tuple(s)
    queue = QueueRef()
    checked_iter(
        queue.push,
        seq_cursor(s),
        ClientContract(
            inv=lambda v: queue.contents() == s[:len(v)],
            convergence=lambda c, v: len(c) - len(v),
            collection=s,
        ),
    )
    return queue
