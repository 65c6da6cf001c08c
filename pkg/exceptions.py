"""
Error hierarchy for the rough-set / matroid toolkit.

Every error carries the process exit code the CLI maps it to:
2 for bad input, 3 for a refused size, 1 for internal disagreement.
"""

from typing import Optional


class RoughMatroidError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


# ============ INPUT ERRORS (exit 2) ============


class InputError(RoughMatroidError, ValueError):
    exit_code = 2


class EmptyUniverseError(InputError):
    def __init__(self, message: str = "universe must contain at least one element"):
        super().__init__(message)


class OverlapError(InputError):
    """Two blocks share an element."""

    def __init__(self, element: str, first: int, second: int):
        self.element = element
        self.blocks = (first, second)
        super().__init__(f"element {element} in two blocks ({first} and {second})")


class CoverageError(InputError):
    """Some element of the universe lies in no block."""

    def __init__(self, missing: list):
        self.missing = list(missing)
        super().__init__(f"elements in no block: {' '.join(map(str, self.missing))}")


class EmptyBlockError(InputError):
    def __init__(self, position: int):
        self.position = position
        super().__init__(f"block {position} is empty")


class OutOfUniverseError(InputError):
    def __init__(self, element: int, size: int):
        self.element = element
        self.size = size
        super().__init__(f"element index {element} outside universe of size {size}")


class UniverseMismatchError(InputError):
    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"subset over a universe of size {actual}, expected size {expected}"
        )


class UnknownElementError(InputError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown element: {name}")


class InstanceSyntaxError(InputError):
    """Malformed instance document; positions are 1-based."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class ExportPathError(InputError):
    def __init__(self, path, reason: str):
        self.path = str(path)
        super().__init__(f"cannot write export {self.path}: {reason}")


class SemanticError(InputError):
    pass


class DuplicateNameError(SemanticError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"duplicate element name: {name}")


class InvalidParameterError(InputError):
    pass


class AxiomViolationError(InputError):
    """A set family handed to the engine is not a matroid."""

    def __init__(self, report, message: Optional[str] = None):
        self.report = report
        super().__init__(message or f"family violates {report.violated}")


class BaseAxiomError(AxiomViolationError):
    def __init__(self, report):
        super().__init__(report, f"candidate bases violate {report.violated}")


# ============ CAPS (exit 3) ============


class CapExceededError(RoughMatroidError):
    exit_code = 3

    def __init__(self, size: int, cap: int, what: str = "operation"):
        self.size = size
        self.cap = cap
        super().__init__(f"{what} refused: universe size {size} exceeds cap {cap}")


# ============ INTERNAL (exit 1) ============


class InternalMismatchError(RoughMatroidError):
    """Two independent computations of the same quantity disagree."""

    exit_code = 1
