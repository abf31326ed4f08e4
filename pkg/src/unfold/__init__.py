"""Runtime-checked cursors and higher-order iteration contracts.

The library realizes a two-layer discipline for iteration: cursors carry
permitted/complete predicates over their visited sequence, and the checked
engines (fold, iter, map, filter) enforce a client-supplied invariant and
convergence measure around every step, including argument propagation into
nested iterations. A small annotation language, a desugarer to first-order
cursor-loop skeletons, and a scenario runner live in :mod:`unfold.dsl`.
"""

from .cursor import Cursor, create_cursor, has_next, next_elem, visited_of
from .engine import (
    EMPTY_CONTEXT,
    NO_ACC,
    CheckStats,
    ClientContract,
    Frame,
    InvariantContext,
    checked_filter,
    checked_fold,
    checked_iter,
    checked_map,
    collect_stats,
    current_context,
    pop_frame,
    push_frame,
)
from .errors import (
    ContractViolation,
    EvaluationError,
    ParseError,
    PreconditionError,
    SemanticError,
    ViolationKind,
)
from .containers import (
    LEAF,
    BinaryTree,
    Leaf,
    Node,
    level_cursor,
    queue_of_seq,
    seq_cursor,
    set_cursor,
    stack_of_seq,
    tree_cursor,
)
from .graphs import (
    GraphModel,
    add_edge,
    add_vertex,
    check_path,
    complement,
    copy,
    copy_vertices,
    empty_graph,
    fold_succ,
    fold_vertex,
    graph_of,
    intersect,
    mirror,
    union,
    union_inner,
    union_outer,
)
from .terms import Closure, Lambda, apply_lambda, eval_term, sum_range
from .values import CellRef, EMPTY_SET, FiniteSet, QueueRef, StackRef

__all__ = [name for name in dir() if not name.startswith("_")]
