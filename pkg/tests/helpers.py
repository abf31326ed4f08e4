"""Independent oracles and random-instance generators shared by the tests.

Everything here is deliberately written as directly as possible (recursion,
enumeration, dict/set arithmetic) so it stays independent of the library
code paths it is used to check.
"""

from __future__ import annotations

import random

from unfold import LEAF, BinaryTree, GraphModel, Leaf, Node, graph_of


def sum_recursive(s, lower, upper):
    """Sum of s[lower..upper) by recursion on the upper bound."""
    if upper <= lower:
        return 0
    return s[upper - 1] + sum_recursive(s, lower, upper - 1)


def is_prefix(v, s):
    return len(v) <= len(s) and all(v[i] == s[i] for i in range(len(v)))


# -- dict-based graph oracle ---------------------------------------------------

def as_dict_graph(g: GraphModel):
    verts = frozenset(g.dom.elems)
    suc = {v: frozenset(g.suc(v).elems) for v in verts}
    return verts, suc


def oracle_union(d1, d2):
    v1, s1 = d1
    v2, s2 = d2
    verts = v1 | v2
    return verts, {v: s1.get(v, frozenset()) | s2.get(v, frozenset())
                   for v in verts}


def oracle_intersect(d1, d2):
    v1, s1 = d1
    v2, s2 = d2
    verts = v1 & v2
    return verts, {v: s1.get(v, frozenset()) & s2.get(v, frozenset()) & verts
                   for v in verts}


def oracle_complement(d):
    verts, suc = d
    return verts, {v: verts - suc.get(v, frozenset()) for v in verts}


def oracle_mirror(d):
    verts, suc = d
    return verts, {v: frozenset(u for u in verts if v in suc.get(u, frozenset()))
                   for v in verts}


def oracle_copy_vertices(d):
    verts, _ = d
    return verts, {v: frozenset() for v in verts}


def oracle_check_path(d, path):
    verts, suc = d
    for i, v in enumerate(path):
        if v not in verts:
            return False
        if i > 0 and v not in suc.get(path[i - 1], frozenset()):
            return False
    return True


def graphs_equal(g: GraphModel, oracle) -> bool:
    verts, suc = oracle
    if frozenset(g.dom.elems) != verts:
        return False
    return all(frozenset(g.suc(v).elems) == suc[v] for v in verts)


# -- random instances ----------------------------------------------------------

def random_graph(rng: random.Random, max_vertices: int = 8) -> GraphModel:
    n = rng.randint(0, max_vertices)
    verts = rng.sample(range(max_vertices + 4), n)
    density = rng.random()
    edges = [(u, w) for u in verts for w in verts if rng.random() < density]
    return graph_of(verts, edges)


def random_tree(rng: random.Random, size: int) -> BinaryTree:
    if size <= 0:
        return LEAF
    left = rng.randint(0, size - 1)
    return Node(random_tree(rng, left), rng.randint(-100, 100),
                random_tree(rng, size - 1 - left))


def random_seq(rng: random.Random, max_len: int = 100,
               lo: int = -1000, hi: int = 1000) -> tuple:
    return tuple(rng.randint(lo, hi) for _ in range(rng.randint(0, max_len)))


def bfs_values(t: BinaryTree) -> tuple:
    """Breadth-first value order, computed with an explicit worklist."""
    out = []
    queue = [t] if isinstance(t, Node) else []
    while queue:
        node = queue.pop(0)
        out.append(node.value)
        for child in (node.left, node.right):
            if isinstance(child, Node):
                queue.append(child)
    return tuple(out)


def tree_height(t: BinaryTree) -> int:
    if isinstance(t, Leaf):
        return 0
    return 1 + max(tree_height(t.left), tree_height(t.right))
