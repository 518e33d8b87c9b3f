"""
Exception hierarchy shared by every scarcheck module.

Each error carries a machine-readable ``code`` that the CLI echoes in its
``{"error": {"code", "message"}}`` document, and the process exit code it maps to.

Usage:
    from errors import DomainError
    raise DomainError("ord_p of zero")
"""
from __future__ import annotations


class ScarcheckError(Exception):
    """Base class, caught at the CLI boundary."""

    code = "error"
    exit_code = 1

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message

    def to_dict(self) -> dict:
        return {"error": {"code": self.code, "message": self.message}}


class DomainError(ScarcheckError):
    """Input outside the mathematical domain of the operation."""

    code = "domain"


class UnsupportedError(ScarcheckError):
    """Operation exists but not for this input class (ramified p, a > 0, S⁰...)."""

    code = "unsupported"


class PreconditionError(ScarcheckError):
    code = "precondition"

    def __init__(self, precondition: str, message: str) -> None:
        super().__init__(f"{precondition}: {message}")
        self.precondition = precondition


class ExhaustionError(ScarcheckError):
    """A bounded search ran out before finding anything."""

    code = "exhausted"

    def __init__(self, message: str, bound: int) -> None:
        super().__init__(f"{message} (search bound {bound})")
        self.bound = bound


class ConstructionError(ScarcheckError):
    code = "construction"


class ValidationError(ScarcheckError):
    """A structure failed one of its axioms; ``axiom`` names which one."""

    code = "validation"

    def __init__(self, axiom: str, message: str) -> None:
        super().__init__(f"{axiom}: {message}")
        self.axiom = axiom


class ParameterMismatchError(ScarcheckError):
    code = "param_mismatch"


class UsageError(ScarcheckError):
    code = "usage"
    exit_code = 2
