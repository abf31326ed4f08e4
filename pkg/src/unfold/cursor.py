"""Step-by-step iterators that carry their own admissibility contracts.

A cursor owns the sequence of elements produced so far (``visited``) plus
two predicates over it: ``permitted`` must hold at every observation point,
and ``complete`` must hold once the producer is exhausted. Violations raise
:class:`~unfold.errors.ContractViolation` with the step index at which they
were detected.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Union

from .errors import ContractViolation, EvaluationError, ViolationKind
from .terms import Closure, apply_lambda
from .values import Value

SeqPredicate = Union[Closure, Callable[[tuple], bool]]

_NO_LOOKAHEAD = object()


def _eval_predicate(pred: SeqPredicate, visited: tuple, what: str) -> bool:
    if isinstance(pred, Closure):
        result = apply_lambda(pred, [visited])
    else:
        result = pred(visited)
    if not isinstance(result, bool):
        raise EvaluationError(f"{what} predicate returned non-boolean {result!r}")
    return result


class Cursor:
    """External iterator with checked permitted/complete predicates.

    Single-owner: not safe to share during iteration. ``has_next`` keeps a
    one-element lookahead so that exhaustion (and with it the ``complete``
    predicate) is decided at the has_next boundary.
    """

    def __init__(self, producer: Iterator[Value],
                 permitted: SeqPredicate, complete: SeqPredicate):
        self._producer = producer
        self.permitted = permitted
        self.complete = complete
        self._visited: list = []
        self._lookahead: Value = _NO_LOOKAHEAD
        self._exhausted = False
        self._complete_checked = False
        self._check_permitted()

    @property
    def step(self) -> int:
        return len(self._visited)

    def _check_permitted(self) -> None:
        visited = tuple(self._visited)
        if not _eval_predicate(self.permitted, visited, "permitted"):
            raise ContractViolation(
                ViolationKind.PERMITTED_VIOLATED, len(visited),
                f"permitted rejected visited prefix {visited!r}",
            )

    def _check_complete(self) -> None:
        if self._complete_checked:
            return
        visited = tuple(self._visited)
        if not _eval_predicate(self.complete, visited, "complete"):
            raise ContractViolation(
                ViolationKind.COMPLETE_VIOLATED_AT_EXHAUSTION, len(visited),
                f"producer exhausted but complete rejected visited {visited!r}",
            )
        self._complete_checked = True

    def has_next(self) -> bool:
        """True iff the producer can yield another element.

        Does not modify ``visited``. A false answer implies the complete
        predicate held on the full visited sequence (checked once).
        """
        if self._lookahead is not _NO_LOOKAHEAD:
            return True
        if not self._exhausted:
            try:
                self._lookahead = next(self._producer)
                return True
            except StopIteration:
                self._exhausted = True
        self._check_complete()
        return False

    def next(self) -> Value:
        """Produce the next element, growing ``visited`` by exactly one."""
        if not self.has_next():
            raise ContractViolation(
                ViolationKind.NEXT_ON_EXHAUSTED, len(self._visited),
                f"next called on exhausted cursor with visited {self.visited!r}",
            )
        x = self._lookahead
        self._lookahead = _NO_LOOKAHEAD
        self._visited.append(x)
        self._check_permitted()
        return x

    @property
    def visited(self) -> tuple:
        """Snapshot copy of the visited sequence."""
        return tuple(self._visited)


def create_cursor(producer: Union[Iterator[Value], Iterable[Value]],
                  permitted: SeqPredicate, complete: SeqPredicate) -> Cursor:
    """Build a cursor over a step source; permitted([]) is checked immediately."""
    return Cursor(iter(producer), permitted, complete)


def has_next(c: Cursor) -> bool:
    return c.has_next()


def next_elem(c: Cursor) -> Value:
    return c.next()


def visited_of(c: Cursor) -> tuple:
    return c.visited
