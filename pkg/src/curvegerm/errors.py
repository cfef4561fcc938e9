"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: input problems exit 1, mathematical
inconsistencies exit 2.
"""

from __future__ import annotations


class GermError(Exception):
    """Base class for all errors raised by curvegerm."""

    exit_code = 1


class InvalidGermError(GermError):
    """A germ or branch violates the parameterization hypotheses."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class UndeterminedError(GermError):
    """A stabilizing computation ran into the precision or degree cap."""

    def __init__(self, operation: str, detail: str):
        self.operation = operation
        super().__init__(f"{operation}: {detail}")


class NonIsolatedError(UndeterminedError):
    """Colength still growing at the truncation cap."""


class RepeatedComponentError(InvalidGermError):
    def __init__(self, detail: str = "infinite intersection: repeated component"):
        super().__init__([detail])


class OracleUnsupportedError(GermError):
    """The implicit oracle refuses input it cannot handle exactly."""


class DegenerateResultantError(GermError, ValueError):
    pass


class InconsistentTableError(GermError):
    exit_code = 2


class NotRealizableError(GermError):
    exit_code = 2


class RouteMismatchError(GermError):
    """Two independent computations of the same quantity disagree."""

    exit_code = 2


class DocumentError(GermError):
    """An input document is malformed; ``where`` locates the problem."""

    def __init__(self, where: str, detail: str):
        self.where = where
        super().__init__(f"{where}: {detail}" if where else detail)
