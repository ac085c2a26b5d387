"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class DegwildError(Exception):
    """Base class for all library errors."""


class StructuralError(DegwildError, ValueError):
    """Operands do not fit together (variable counts, tower levels, ...)."""


class ParseError(DegwildError, ValueError):
    """Malformed polynomial expression."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


class PreconditionError(DegwildError, ValueError):
    """A caller-side hypothesis of an evaluator does not hold."""


class ConstructionError(DegwildError, RuntimeError):
    """A step of the wild construction could not be carried out."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message if step is None else f"step {step}: {message}")
        self.step = step


class PrecisionExhausted(DegwildError, ArithmeticError):
    """Every known coefficient of a truncated series is zero.

    The caller has to retry at a larger precision; an order is never guessed.
    """
