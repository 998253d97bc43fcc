"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class FrobtorusError(Exception):
    """Base class for library errors."""


class ValidationError(FrobtorusError):
    """A polynomial failed Weil validation; ``clause`` names the violated condition."""

    clause = "Invalid"

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness

    def to_dict(self) -> dict:
        return {"clause": self.clause, "message": str(self), "witness": self.witness}


class NotMonic(ValidationError):
    clause = "NotMonic"


class AbsValueViolation(ValidationError):
    clause = "AbsValueViolation"


class BadPrimePower(ValidationError):
    clause = "BadPrimePower"


class DegenerateInput(ValidationError):
    clause = "DegenerateInput"


class NotApplicable(FrobtorusError):
    """An operation's preconditions do not hold for this input."""


class PrecisionExhausted(FrobtorusError):
    """A lifting or approximation bound exceeded the configured ceiling."""


class SearchBudgetExceeded(FrobtorusError):
    """The relation search could not certify completeness within its budget."""


class Inconclusive(FrobtorusError):
    """A verdict depends on data that could not be computed completely."""


class IncompleteLattice(FrobtorusError):
    """Pole orders were requested from a budget-truncated relation lattice."""


class CombinatorialExplosion(FrobtorusError):
    """An enumeration would exceed the configured size bound."""


class CacheMiss(FrobtorusError):
    """An offline or failed fetch found no cached response."""


class SchemaError(FrobtorusError):
    """An external record lacks a required field."""

    def __init__(self, field: str, record=None):
        super().__init__(f"missing or malformed field {field!r}")
        self.field = field
        self.record = record
