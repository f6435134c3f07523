"""Exception hierarchy shared by every module.

Validators raise rather than return diagnostics; each error carries the
offending witness so callers (and the CLI) can report it verbatim.
"""

from __future__ import annotations

from typing import Any


class XmodError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": str(self), "witness": _jsonable(self.witness)}


class ValidationError(XmodError, ValueError):
    pass


class GroupAxiomError(ValidationError):
    pass


class HomomorphismError(ValidationError):
    pass


class ActionError(ValidationError):
    pass


class NotSubgroupError(ValidationError):
    pass


class NotNormalError(ValidationError):
    pass


class CrossedModuleAxiomError(ValidationError):
    pass


class MorphismError(ValidationError):
    pass


class BispaceError(ValidationError):
    pass


class NerveError(ValidationError):
    pass


class CocycleError(ValidationError):
    pass


class MismatchError(XmodError, ValueError):
    """Operands live over different crossed modules / nerves."""


class BudgetExceeded(XmodError, RuntimeError):
    pass


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if obj is None or isinstance(obj, (int, float, str, bool)):
        return obj
    return repr(obj)
