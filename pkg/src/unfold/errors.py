"""Exception types shared across the package."""

from __future__ import annotations

import enum


class ViolationKind(enum.Enum):
    PERMITTED_VIOLATED = "PermittedViolated"
    COMPLETE_VIOLATED_AT_EXHAUSTION = "CompleteViolatedAtExhaustion"
    INVARIANT_VIOLATED = "InvariantViolated"
    CONVERGENCE_NOT_DECREASING = "ConvergenceNotDecreasing"
    CONVERGENCE_NEGATIVE = "ConvergenceNegative"
    NEXT_ON_EXHAUSTED = "NextOnExhausted"
    INVARIANT_VIOLATED_INITIALLY = "InvariantViolatedInitially"


class ContractViolation(Exception):
    """A runtime contract check failed.

    ``step`` is the length of the visited sequence at detection time;
    ``detail`` describes the offending state (visited prefix, accumulator).
    """

    def __init__(self, kind: ViolationKind, step: int, detail: str):
        self.kind = kind
        self.step = step
        self.detail = detail
        super().__init__(f"{kind.value} at step {step}: {detail}")


class EvaluationError(Exception):
    """A specification term failed to evaluate (unbound name, type
    mismatch, index out of range, ...). Distinct from a contract
    violation: the predicate itself is broken, not the program."""


class PreconditionError(Exception):
    """An operation was called outside its stated precondition."""


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class SemanticError(Exception):
    """The input parsed but is not a meaningful specification."""
