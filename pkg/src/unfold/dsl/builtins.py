"""Built-in consumer library for scenario files.

A builtin binds any mutable sinks it needs (stack, queue, counter, flag)
into the invocation environment before the invariant terms are closed, so
step invariants can observe the effects by name.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from ..errors import EvaluationError, SemanticError
from ..graphs import (
    COMPLEMENT_INNER,
    INTERSECT_INNER,
    MIRROR_INNER,
    UNION_INNER,
    add_edge,
    add_vertex,
    fold_succ,
    fold_vertex,
)
from ..terms import Closure, apply_lambda
from ..values import CellRef, QueueRef, StackRef, Value


@dataclass
class BoundConsumer:
    fn: Callable
    result: Optional[Callable[[], Value]] = None  # observable result override


def _expect_args(name, args, count):
    if len(args) != count:
        raise SemanticError(
            f"builtin {name!r} takes {count} argument(s), got {len(args)}")
    return args


def _add(env, args):
    _expect_args("add", args, 0)
    return BoundConsumer(fn=lambda a, x: a + x)


def _count(env, args):
    _expect_args("count", args, 0)
    return BoundConsumer(fn=lambda a, _x: a + 1)


def _push_stack(env, args):
    _expect_args("push-stack", args, 0)
    stack = StackRef()
    env["stack"] = stack
    return BoundConsumer(fn=stack.push, result=stack.contents)


def _push_queue(env, args):
    _expect_args("push-queue", args, 0)
    queue = QueueRef()
    env["queue"] = queue
    return BoundConsumer(fn=queue.push, result=queue.contents)


def _map_incr_count(env, args):
    _expect_args("map-incr-count", args, 0)
    counter = CellRef(0)
    env["counter"] = counter

    def fn(x):
        counter.value += 1
        return x + 1

    return BoundConsumer(fn=fn)


def _filter_pos_count(env, args):
    _expect_args("filter-pos-count", args, 0)
    counter = CellRef(0)
    env["counter"] = counter

    def fn(x):
        counter.value += 1
        return x > 0

    return BoundConsumer(fn=fn)


def _count_gt(env, args):
    (threshold,) = _expect_args("count-gt", args, 1)
    counter = CellRef(0)
    env["counter"] = counter

    def fn(x):
        if x > threshold:
            counter.value += 1

    return BoundConsumer(fn=fn, result=lambda: counter.value)


def _path_step(env, args):
    (g,) = _expect_args("path-step", args, 1)
    flag = CellRef(True)
    prev = CellRef(None)
    started = CellRef(False)
    env["flag"] = flag

    def fn(x):
        ok = x in g.dom
        if started.value:
            ok = ok and x in g.suc(prev.value)
        flag.value = flag.value and ok
        prev.value = x
        started.value = True

    return BoundConsumer(fn=fn, result=lambda: flag.value)


def _add_vertex(env, args):
    _expect_args("add-vertex", args, 0)
    return BoundConsumer(fn=add_vertex)


def _restrict_vertex(env, args):
    (keep,) = _expect_args("restrict-vertex", args, 1)
    return BoundConsumer(
        fn=lambda a, v: add_vertex(a, v) if v in keep.dom else a)


def _union_step(env, args):
    g1, g2 = _expect_args("union-step", args, 2)

    def fn(acc, v):
        return fold_succ(lambda a, e: add_edge(a, v, e),
                         add_vertex(acc, v), g1, v,
                         inv=apply_lambda(UNION_INNER, [g1, g2, v]))

    return BoundConsumer(fn=fn)


def _intersect_step(env, args):
    g1, g2 = _expect_args("intersect-step", args, 2)

    def fn(acc, v):
        if v not in acc.dom:
            return acc
        return fold_succ(
            lambda a, e: add_edge(a, v, e) if e in g2.suc(v) else a,
            add_vertex(acc, v), g1, v,
            inv=apply_lambda(INTERSECT_INNER, [g1, g2, v]))

    return BoundConsumer(fn=fn)


def _complement_step(env, args):
    (g,) = _expect_args("complement-step", args, 1)

    def fn(acc, v):
        return fold_vertex(
            lambda a, u: a if u in g.suc(v) else add_edge(a, v, u),
            g, add_vertex(acc, v),
            inv=apply_lambda(COMPLEMENT_INNER, [g, v]))

    return BoundConsumer(fn=fn)


def _mirror_step(env, args):
    (g,) = _expect_args("mirror-step", args, 1)

    def fn(acc, v):
        return fold_succ(lambda a, e: add_edge(a, e, v),
                         add_vertex(acc, v), g, v,
                         inv=apply_lambda(MIRROR_INNER, [g, v]))

    return BoundConsumer(fn=fn)


BUILTINS = {
    "add": _add,
    "count": _count,
    "push-stack": _push_stack,
    "push-queue": _push_queue,
    "map-incr-count": _map_incr_count,
    "filter-pos-count": _filter_pos_count,
    "count-gt": _count_gt,
    "path-step": _path_step,
    "add-vertex": _add_vertex,
    "restrict-vertex": _restrict_vertex,
    "union-step": _union_step,
    "intersect-step": _intersect_step,
    "complement-step": _complement_step,
    "mirror-step": _mirror_step,
}


def bind_lambda_consumer(closure: Closure, pattern: str) -> BoundConsumer:
    """Adapt a pure specification lambda to the engine's consumer shape."""
    if pattern == "folds":
        return BoundConsumer(fn=lambda a, x: apply_lambda(closure, [a, x]))
    if pattern == "filters":
        def predicate(x):
            keep = apply_lambda(closure, [x])
            if not isinstance(keep, bool):
                raise EvaluationError(
                    f"filter predicate returned non-boolean {keep!r}")
            return keep

        return BoundConsumer(fn=predicate)
    return BoundConsumer(fn=lambda x: apply_lambda(closure, [x]))
