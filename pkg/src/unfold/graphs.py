"""Finite directed graphs as a logical model, with checked iteration.

A graph is a finite vertex set ``dom`` plus a total successor map ``suc``
that is empty outside ``dom`` and closed inside it. All operations are
value-semantic: builders return new graphs.

The derived operations (union, intersect, complement, mirror, copy_vertices,
check_path) are deliberately implemented as checked folds/iterations whose
step invariants are term-language lambdas, so every intermediate state is
validated while the operation runs. Each operation needing edge insertion
first completes the result's vertex set with a plain fold (add_edge requires
both endpoints present), then runs the nested edge-completing fold.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping

from . import terms as T
from .containers import set_cursor
from .engine import EMPTY_CONTEXT, ClientContract, checked_fold, checked_iter
from .errors import PreconditionError
from .terms import Closure, apply_lambda
from .values import CellRef, EMPTY_SET, FiniteSet, Value, value_key


class GraphModel:
    """Immutable graph: vertex set ``dom`` and successor map ``suc``."""

    __slots__ = ("dom", "_suc", "_suc_by_key")

    def __init__(self, dom: Iterable[Value] = (),
                 suc: Mapping[Value, Iterable[Value]] | None = None):
        self.dom = dom if isinstance(dom, FiniteSet) else FiniteSet(dom)
        entries = []
        for v, targets in (suc or {}).items():
            targets = targets if isinstance(targets, FiniteSet) else FiniteSet(targets)
            if not targets:
                continue
            if v not in self.dom:
                raise ValueError(
                    f"graph invariant violated: {v!r} has successors but is "
                    f"outside the vertex set"
                )
            for t in targets:
                if t not in self.dom:
                    raise ValueError(
                        f"graph invariant violated: successor {t!r} of {v!r} "
                        f"is outside the vertex set"
                    )
            entries.append((v, targets))
        entries.sort(key=lambda e: value_key(e[0]))
        self._suc = tuple(entries)
        self._suc_by_key = {value_key(v): targets for v, targets in entries}

    def suc(self, v: Value) -> FiniteSet:
        return self._suc_by_key.get(value_key(v), EMPTY_SET)

    # accessors used by the term evaluator for ``g.dom`` / ``g.suc``
    def field_dom(self) -> FiniteSet:
        return self.dom

    def field_suc(self) -> Callable[[Value], FiniteSet]:
        return self.suc

    def copy(self) -> "GraphModel":
        return GraphModel(self.dom, dict(self._suc))

    def edges(self) -> tuple:
        return tuple((v, t) for v, targets in self._suc for t in targets)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, GraphModel)
                and self.dom == other.dom and self._suc == other._suc)

    def __hash__(self) -> int:
        return hash((self.dom, self._suc))

    def _value_key_(self) -> tuple:
        return (5, value_key(self.dom),
                tuple((value_key(v), value_key(t)) for v, t in self._suc))

    def __repr__(self) -> str:
        edges = ", ".join(f"{v!r}->{t!r}" for v, t in self.edges())
        return f"GraphModel(dom={self.dom!r}, edges=[{edges}])"


def empty_graph() -> GraphModel:
    return GraphModel()


def add_vertex(g: GraphModel, v: Value) -> GraphModel:
    """New graph with ``v`` in the vertex set; successors unchanged."""
    return GraphModel(g.dom.add(v), dict(g._suc))


def add_edge(g: GraphModel, v: Value, w: Value) -> GraphModel:
    """New graph with the edge v->w added. Both endpoints must already be
    vertices, otherwise the closure invariant would break."""
    if v not in g.dom:
        raise PreconditionError(f"add_edge: source {v!r} is not a vertex")
    if w not in g.dom:
        raise PreconditionError(f"add_edge: target {w!r} is not a vertex")
    suc = dict(g._suc)
    suc[v] = g.suc(v).add(w)
    return GraphModel(g.dom, suc)


def copy(g: GraphModel) -> GraphModel:
    return g.copy()


def graph_of(vertices: Iterable[Value],
             edges: Iterable[tuple] = ()) -> GraphModel:
    """Convenience builder going through add_vertex/add_edge."""
    g = empty_graph()
    for v in vertices:
        g = add_vertex(g, v)
    for v, w in edges:
        g = add_edge(g, v, w)
    return g


# -- checked iteration over graphs --------------------------------------------

def _remaining_vertices(c: GraphModel, v: tuple) -> int:
    return len(c.dom) - len(v)


def _remaining_successors(c: tuple, v: tuple) -> int:
    g, s = c
    return len(g.suc(s)) - len(v)


_TRUE_INV = lambda *args: True


def fold_vertex(consumer: Callable[[Value, Value], Value], g: GraphModel,
                init: Value, *, inv=None, convergence=None, ctx=None) -> Value:
    """Checked fold over the graph's vertices (as a set cursor over dom)."""
    return checked_fold(
        consumer, init, set_cursor(g.dom),
        ClientContract(
            inv=inv if inv is not None else _TRUE_INV,
            convergence=convergence if convergence is not None else _remaining_vertices,
            collection=g,
        ),
        ctx=ctx,
    )


def fold_succ(consumer: Callable[[Value, Value], Value], init: Value,
              g: GraphModel, s: Value, *, inv=None, convergence=None,
              ctx=None) -> Value:
    """Checked fold over the successors of ``s`` in ``g``; the collection
    being iterated is the pair (g, s)."""
    if s not in g.dom:
        raise PreconditionError(f"fold_succ: {s!r} is not a vertex")
    return checked_fold(
        consumer, init, set_cursor(g.suc(s)),
        ClientContract(
            inv=inv if inv is not None else _TRUE_INV,
            convergence=convergence if convergence is not None else _remaining_successors,
            collection=(g, s),
        ),
        ctx=ctx,
    )


# -- step invariants, as term-language lambdas ---------------------------------
#
# Parameter convention matches the engine: per level the visited sequence
# comes first, then the accumulator; enclosing levels follow, nearest first.
# Leading graph/vertex parameters are fixed by partial application.

def _v(name: str) -> T.Var:
    return T.Var(name)


def _dom(g: str) -> T.Term:
    return T.Field(_v(g), "dom")


def _suc(g: str, u: T.Term) -> T.Term:
    return T.App(T.Field(_v(g), "suc"), (u,))


def _eq(a: T.Term, b: T.Term) -> T.Term:
    return T.Cmp("=", a, b)


def _and(*conjuncts: T.Term) -> T.Term:
    out = conjuncts[0]
    for c in conjuncts[1:]:
        out = T.And(out, c)
    return out


def _forall_mem(var: str, coll: T.Term, body: T.Term) -> T.Term:
    return T.ForallMem(var, coll, body)


def _lam(params: str, body: T.Term) -> Closure:
    return T.lam(params, body)


_U = _v("u")
_W = _v("w")
_UNVISITED = lambda g: T.DiffOp(_dom(g), T.SetOf(_v("visited")))

# vertex-completion pass of union: dom grows with the visited vertices,
# successors still exactly those of g2
UNION_VERTICES = _lam(
    "g1 g2 visited acc",
    _and(
        _eq(_dom("acc"), T.UnionOp(T.SetOf(_v("visited")), _dom("g2"))),
        _forall_mem("u", _dom("acc"), _eq(_suc("acc", _U), _suc("g2", _U))),
    ),
)

# edge-completion pass of union, outer level
UNION_OUTER = _lam(
    "g1 g2 visited acc",
    _and(
        _eq(_dom("acc"), T.UnionOp(_dom("g1"), _dom("g2"))),
        _forall_mem("u", _v("visited"),
                    _eq(_suc("acc", _U),
                        T.UnionOp(_suc("g1", _U), _suc("g2", _U)))),
        _forall_mem("u", _UNVISITED("acc"),
                    _eq(_suc("acc", _U), _suc("g2", _U))),
    ),
)

# edge-completion pass of union, inner level: the current source vertex
# accumulates its successors one by one
UNION_INNER = _lam(
    "g1 g2 src visited' acc' visited acc",
    _and(
        _eq(_dom("acc'"), T.UnionOp(_dom("g1"), _dom("g2"))),
        _forall_mem("u", _UNVISITED("acc'"),
                    _eq(_suc("acc'", _U), _suc("g2", _U))),
        _forall_mem("u", _v("visited"),
                    T.Implies(T.Not(_eq(_U, _v("src"))),
                              _eq(_suc("acc'", _U),
                                  T.UnionOp(_suc("g1", _U), _suc("g2", _U))))),
        _eq(_suc("acc'", _v("src")),
            T.UnionOp(T.SetOf(_v("visited'")), _suc("g2", _v("src")))),
    ),
)

INTERSECT_VERTICES = _lam(
    "g1 g2 visited acc",
    _and(
        _eq(_dom("acc"), T.InterOp(T.SetOf(_v("visited")), _dom("g2"))),
        _forall_mem("u", _dom("acc"), _eq(_suc("acc", _U), T.EmptySetLit())),
    ),
)

INTERSECT_OUTER = _lam(
    "g1 g2 visited acc",
    _and(
        _eq(_dom("acc"), T.InterOp(_dom("g1"), _dom("g2"))),
        _forall_mem("u", T.InterOp(T.SetOf(_v("visited")), _dom("acc")),
                    _eq(_suc("acc", _U),
                        T.InterOp(_suc("g1", _U), _suc("g2", _U)))),
        _forall_mem("u", _UNVISITED("acc"),
                    _eq(_suc("acc", _U), T.EmptySetLit())),
    ),
)

INTERSECT_INNER = _lam(
    "g1 g2 src visited' acc' visited acc",
    _and(
        _eq(_dom("acc'"), T.InterOp(_dom("g1"), _dom("g2"))),
        _eq(_suc("acc'", _v("src")),
            T.InterOp(T.SetOf(_v("visited'")), _suc("g2", _v("src")))),
        _forall_mem("u", T.InterOp(T.SetOf(_v("visited")), _dom("acc'")),
                    T.Implies(T.Not(_eq(_U, _v("src"))),
                              _eq(_suc("acc'", _U),
                                  T.InterOp(_suc("g1", _U), _suc("g2", _U))))),
        _forall_mem("u", _UNVISITED("acc'"),
                    _eq(_suc("acc'", _U), T.EmptySetLit())),
    ),
)

# building an edgeless copy of the vertex set (used standalone by
# copy_vertices and as the seeding pass of complement and mirror)
VERTEX_COPY = _lam(
    "visited acc",
    _and(
        _eq(_dom("acc"), T.SetOf(_v("visited"))),
        _forall_mem("u", _dom("acc"), _eq(_suc("acc", _U), T.EmptySetLit())),
    ),
)

COMPLEMENT_OUTER = _lam(
    "g visited acc",
    _and(
        _eq(_dom("acc"), _dom("g")),
        _forall_mem("u", _v("visited"),
                    _eq(_suc("acc", _U), T.DiffOp(_dom("g"), _suc("g", _U)))),
        _forall_mem("u", _UNVISITED("g"),
                    _eq(_suc("acc", _U), T.EmptySetLit())),
    ),
)

COMPLEMENT_INNER = _lam(
    "g src visited' acc' visited acc",
    _and(
        _eq(_dom("acc'"), _dom("g")),
        _eq(_suc("acc'", _v("src")),
            T.DiffOp(T.SetOf(_v("visited'")), _suc("g", _v("src")))),
        _forall_mem("u", _v("visited"),
                    T.Implies(T.Not(_eq(_U, _v("src"))),
                              _eq(_suc("acc'", _U),
                                  T.DiffOp(_dom("g"), _suc("g", _U))))),
        _forall_mem("u", _UNVISITED("g"),
                    _eq(_suc("acc'", _U), T.EmptySetLit())),
    ),
)

MIRROR_OUTER = _lam(
    "g visited acc",
    _and(
        _eq(_dom("acc"), _dom("g")),
        _forall_mem(
            "u", _dom("g"),
            _forall_mem(
                "w", _dom("g"),
                _eq(T.Mem(_W, _suc("acc", _U)),
                    T.And(T.Mem(_W, T.SetOf(_v("visited"))),
                          T.Mem(_U, _suc("g", _W)))))),
    ),
)

MIRROR_INNER = _lam(
    "g src visited' acc' visited acc",
    _and(
        _eq(_dom("acc'"), _dom("g")),
        _forall_mem(
            "u", _dom("g"),
            _forall_mem(
                "w", _dom("g"),
                _eq(T.Mem(_W, _suc("acc'", _U)),
                    T.Or(
                        _and(T.Mem(_W, T.SetOf(_v("visited"))),
                             T.Not(_eq(_W, _v("src"))),
                             T.Mem(_U, _suc("g", _W))),
                        T.And(_eq(_W, _v("src")),
                              T.Mem(_U, T.SetOf(_v("visited'")))))))),
    ),
)

# flag mirrors whether the visited prefix is a valid path in g
CHECK_PATH_INV = _lam(
    "g flag visited",
    _eq(_v("flag"),
        T.And(
            T.ForallRange("i", T.IntLit(0), T.Len(_v("visited")),
                          T.Mem(T.Index(_v("visited"), _v("i")), _dom("g"))),
            T.ForallRange(
                "i", T.IntLit(1), T.Len(_v("visited")),
                T.Mem(T.Index(_v("visited"), _v("i")),
                      _suc("g", T.Index(_v("visited"),
                                        T.Arith("-", _v("i"), T.IntLit(1)))))))),
)

#: named step predicates, exposed to scenario environments
GRAPH_PREDICATES = {
    "union_vertices": UNION_VERTICES,
    "union_outer": UNION_OUTER,
    "union_inner": UNION_INNER,
    "intersect_vertices": INTERSECT_VERTICES,
    "intersect_outer": INTERSECT_OUTER,
    "intersect_inner": INTERSECT_INNER,
    "vertex_copy": VERTEX_COPY,
    "complement_outer": COMPLEMENT_OUTER,
    "complement_inner": COMPLEMENT_INNER,
    "mirror_outer": MIRROR_OUTER,
    "mirror_inner": MIRROR_INNER,
    "check_path_inv": CHECK_PATH_INV,
}


def union_outer(g1: GraphModel, g2: GraphModel) -> Closure:
    """Outer-level step invariant of union, awaiting (visited, acc)."""
    return apply_lambda(UNION_OUTER, [g1, g2])


def union_inner(g1: GraphModel, g2: GraphModel, src: Value) -> Closure:
    """Inner-level step invariant of union, awaiting
    (visited', acc', visited, acc)."""
    return apply_lambda(UNION_INNER, [g1, g2, src])


# -- derived operations --------------------------------------------------------

def union(g1: GraphModel, g2: GraphModel) -> GraphModel:
    """Graph with the union of both vertex sets and, per vertex, the union
    of both successor sets."""
    base = fold_vertex(add_vertex, g1, copy(g2),
                       inv=apply_lambda(UNION_VERTICES, [g1, g2]),
                       ctx=EMPTY_CONTEXT)

    def complete_edges(acc, v):
        return fold_succ(lambda a, e: add_edge(a, v, e),
                         add_vertex(acc, v), g1, v,
                         inv=apply_lambda(UNION_INNER, [g1, g2, v]))

    return fold_vertex(complete_edges, g1, base,
                       inv=apply_lambda(UNION_OUTER, [g1, g2]),
                       ctx=EMPTY_CONTEXT)


def intersect(g1: GraphModel, g2: GraphModel) -> GraphModel:
    """Graph with the intersection of both vertex sets and, per kept vertex,
    the intersection of both successor sets."""
    base = fold_vertex(
        lambda a, v: add_vertex(a, v) if v in g2.dom else a,
        g1, empty_graph(),
        inv=apply_lambda(INTERSECT_VERTICES, [g1, g2]),
        ctx=EMPTY_CONTEXT)

    def complete_edges(acc, v):
        if v not in acc.dom:
            return acc
        return fold_succ(
            lambda a, e: add_edge(a, v, e) if e in g2.suc(v) else a,
            add_vertex(acc, v), g1, v,
            inv=apply_lambda(INTERSECT_INNER, [g1, g2, v]))

    return fold_vertex(complete_edges, g1, base,
                       inv=apply_lambda(INTERSECT_OUTER, [g1, g2]),
                       ctx=EMPTY_CONTEXT)


def copy_vertices(g: GraphModel) -> GraphModel:
    """Edgeless graph on the same vertex set."""
    return fold_vertex(add_vertex, g, empty_graph(), inv=VERTEX_COPY,
                       ctx=EMPTY_CONTEXT)


def complement(g: GraphModel) -> GraphModel:
    """Graph on the same vertices whose successor sets are the set
    difference dom minus the original successors (plain difference, so a
    vertex without a self-loop gains one)."""
    base = copy_vertices(g)

    def complete_edges(acc, v):
        return fold_vertex(
            lambda a, u: a if u in g.suc(v) else add_edge(a, v, u),
            g, add_vertex(acc, v),
            inv=apply_lambda(COMPLEMENT_INNER, [g, v]))

    return fold_vertex(complete_edges, g, base,
                       inv=apply_lambda(COMPLEMENT_OUTER, [g]),
                       ctx=EMPTY_CONTEXT)


def mirror(g: GraphModel) -> GraphModel:
    """Graph with every edge reversed."""
    base = copy_vertices(g)

    def complete_edges(acc, v):
        return fold_succ(lambda a, e: add_edge(a, e, v),
                         add_vertex(acc, v), g, v,
                         inv=apply_lambda(MIRROR_INNER, [g, v]))

    return fold_vertex(complete_edges, g, base,
                       inv=apply_lambda(MIRROR_OUTER, [g]),
                       ctx=EMPTY_CONTEXT)


def check_path(g: GraphModel, path: tuple) -> bool:
    """True iff every element of ``path`` is a vertex and every consecutive
    pair is an edge. Empty and singleton-vertex paths are valid."""
    from .containers import seq_cursor  # local import, no cycle at module load

    path = tuple(path)
    flag = CellRef(True)
    prev = CellRef(None)
    started = CellRef(False)

    def step(x):
        ok = x in g.dom
        if started.value:
            ok = ok and x in g.suc(prev.value)
        flag.value = flag.value and ok
        prev.value = x
        started.value = True

    checked_iter(
        step, seq_cursor(path),
        ClientContract(
            inv=apply_lambda(CHECK_PATH_INV, [g, flag]),
            convergence=lambda c, v: len(c) - len(v),
            collection=path,
        ),
        ctx=EMPTY_CONTEXT,
    )
    return flag.value
