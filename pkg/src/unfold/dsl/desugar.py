"""Desugaring of higher-order iteration annotations into first-order
cursor-client skeletons.

Each declaration becomes a scope exposing a ``create`` function whose
postconditions carry the declared permitted/complete predicates; each call
site becomes an explicit while-loop with a variant line (the convergence
measure applied to the collection and the visited sequence) and an invariant
line (the client invariant applied to the visited sequence and accumulator
of its own level, then those of every enclosing level, nearest first).
Nested calls render inside the consumer position of their parent loop.
Output is deterministic, byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .. import terms as T
from ..errors import SemanticError
from .parser import CallSpec, DeclSpec, Invocation, SpecFile, parse_spec_file
from .render import render_term, render_type

_APP_LEVEL = 8
_ARG_LEVEL = 9

_SCOPE_BASE = {"folds": "Fold", "iters": "Iter", "maps": "Map",
               "filters": "Filter"}


@dataclass(frozen=True)
class CallPlan:
    """Which terms a call's skeleton evaluates, in evaluation order."""

    name: str
    inv_label: str
    variant_label: str


@dataclass
class _Node:
    name: str
    decl_name: str
    decl: DeclSpec
    call: CallSpec
    child: Optional["_Node"] = None


def _primes(depth: int) -> str:
    return "'" * depth


def _scope_names(decls: list[tuple[str, DeclSpec]]) -> dict[str, str]:
    names: dict[str, str] = {}
    used: dict[str, int] = {}
    for decl_name, decl in decls:
        base = _SCOPE_BASE[decl.pattern]
        seen = used.get(base, 0)
        used[base] = seen + 1
        names[decl_name] = base + "'" * seen
    return names


def _render_scope(scope: str, decl: DeclSpec) -> str:
    return "\n".join([
        f"scope {scope}",
        "  use seq.Seq",
        "  clone export cursor.CursorLib",
        f"  val create (collection: {render_type(decl.structure)}) : "
        f"cursor {render_type(decl.elt)}",
        "    ensures { result.visited = empty }",
        "    ensures { result.permitted = "
        f"{render_term(decl.permitted, _ARG_LEVEL)} }}",
        "    ensures { result.complete = "
        f"{render_term(decl.complete, _ARG_LEVEL)} }}",
        "end",
    ])


def _acc_name(decl: DeclSpec, depth: int) -> str:
    return (decl.accumulator or "acc") + _primes(depth)


def _level_args(decl: DeclSpec, depth: int) -> str:
    own = f"cursor{_primes(depth)}.visited"
    if decl.pattern != "iters":
        own += f" !{_acc_name(decl, depth)}"
    return own


class _Renderer:
    def __init__(self, scopes: dict[str, str]):
        self.scopes = scopes
        self.plans: list[CallPlan] = []

    def render(self, node: _Node, depth: int,
               enclosing: list[tuple[DeclSpec, int]]) -> list[str]:
        decl, call = node.decl, node.call
        p = _primes(depth)
        scope = self.scopes[node.decl_name]
        cursor = f"cursor{p}"
        acc = _acc_name(decl, depth)
        func = decl.args[0] + p
        x = f"x{p}"
        coll = render_term(call.collection, _ARG_LEVEL)
        inv_label = render_term(call.inv, _APP_LEVEL)
        variant_label = render_term(call.convergence, _APP_LEVEL)
        self.plans.append(CallPlan(name=node.name, inv_label=inv_label,
                                   variant_label=variant_label))

        inv_args = [_level_args(decl, depth)]
        inv_args += [_level_args(d, d_depth) for d, d_depth in enclosing]
        invariant = " ".join([inv_label] + inv_args)

        if isinstance(call.inv, T.Lambda):
            own = 1 if decl.pattern == "iters" else 2
            expected = own + sum(1 if d.pattern == "iters" else 2
                                 for d, _ in enclosing)
            if len(call.inv.params) != expected:
                raise SemanticError(
                    f"call {node.name!r}: invariant lambda takes "
                    f"{len(call.inv.params)} parameter(s) but its nesting "
                    f"depth requires {expected}")
        if (isinstance(call.convergence, T.Lambda)
                and len(call.convergence.params) != 2):
            raise SemanticError(
                f"call {node.name!r}: convergence lambda must take "
                f"(collection, visited)")

        lines = []
        if decl.pattern == "folds":
            lines.append(f"let {acc} = ref x0{p} in")
        elif decl.pattern in ("maps", "filters"):
            lines.append(f"let {acc} = ref empty in")
        lines.append(f"let {cursor} = {scope}.create {coll} in")
        lines.append(f"while {scope}.has_next {cursor} do")
        body = [
            f"variant {{ {variant_label} {coll} {cursor}.visited }}",
            f"invariant {{ {invariant} }}",
            f"let {x} = {scope}.next {cursor} in",
        ]
        if node.child is None:
            if decl.pattern == "folds":
                body.append(f"{acc} := {func} !{acc} {x};")
            elif decl.pattern == "iters":
                body.append(f"{func} {x};")
            elif decl.pattern == "maps":
                body.append(f"{acc} := snoc !{acc} ({func} {x});")
            else:
                body.append(f"{acc} := if {func} {x} then snoc !{acc} {x} "
                            f"else !{acc};")
        else:
            body.extend(self.render(node.child, depth + 1,
                                    [(decl, depth)] + enclosing))
            if decl.pattern in ("folds", "maps", "filters"):
                body.append(
                    f"{acc} := !{_acc_name(node.child.decl, depth + 1)};")
        lines.extend("  " + line for line in body)
        lines.append("done;")
        if depth == 0:
            lines.append(f"!{acc}" if decl.pattern != "iters" else "()")
        return lines


def desugar_file(spec: SpecFile) -> tuple[str, list[CallPlan]]:
    """Render a whole spec file; returns the skeleton text and, per call,
    the terms its variant/invariant lines evaluate (outermost first)."""
    scopes = _scope_names(spec.decls)
    decls = dict(spec.decls)

    nodes = {inv.name: _Node(name=inv.name, decl_name=inv.decl_name,
                             decl=decls[inv.decl_name], call=inv.call)
             for inv in spec.calls}
    roots = []
    for inv in spec.calls:
        if inv.within is None:
            roots.append(nodes[inv.name])
            continue
        parent = nodes[inv.within]
        if parent.child is not None:
            raise SemanticError(
                f"call {inv.within!r} already has a nested call; one nested "
                f"iteration per level is supported")
        parent.child = nodes[inv.name]

    renderer = _Renderer(scopes)
    chunks = [_render_scope(scopes[name], decl) for name, decl in spec.decls]
    for root in roots:
        chunks.append("\n".join(renderer.render(root, 0, [])))
    return "\n\n".join(chunks) + "\n", renderer.plans


def desugar(decl: DeclSpec, call: CallSpec,
            nesting: Optional[list[tuple[DeclSpec, CallSpec]]] = None) -> str:
    """Render the first-order skeleton for one declaration/call pair.

    ``nesting`` lists the enclosing declaration/call pairs, outermost first;
    the rendered invariant application then carries the propagated arguments
    of every enclosing level after this call's own.
    """
    pairs = list(nesting or []) + [(decl, call)]
    spec = SpecFile()
    seen: dict[int, str] = {}
    for i, (d, _c) in enumerate(pairs):
        if id(d) not in seen:
            name = f"d{len(seen)}"
            seen[id(d)] = name
            spec.decls.append((name, d))
    previous = None
    for i, (d, c) in enumerate(pairs):
        spec.calls.append(Invocation(name=f"c{i}", decl_name=seen[id(d)],
                                     call=c, within=previous))
        previous = f"c{i}"
    text, _plans = desugar_file(spec)
    return text


def desugar_text(text: str) -> tuple[str, list[CallPlan]]:
    return desugar_file(parse_spec_file(text))
