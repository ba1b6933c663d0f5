"""
Exception hierarchy for symstab.

Every error carries a stable machine-readable ``code`` and the process
``exit_status`` the command-line front end reports for it.
"""

from typing import Any, Dict


class SymstabError(Exception):
    """Base class for all errors raised by the library."""

    code = "symstab_error"
    exit_status = 1

    def to_dict(self) -> Dict[str, Any]:
        return {"code": self.code, "message": str(self)}


class InvalidInput(SymstabError, ValueError):
    """An argument or input document violates a precondition (exit status 2)."""

    code = "invalid_input"
    exit_status = 2


class InvalidArgument(InvalidInput):
    code = "invalid_argument"


class ParseError(InvalidInput):
    code = "parse_error"


class UsageError(InvalidInput):
    """Command-line arguments rejected by the parser."""

    code = "usage_error"


class RankMismatch(InvalidInput):
    code = "rank_mismatch"


class NotTwoTorsion(InvalidInput):
    code = "not_two_torsion"


class OrderMismatch(InvalidInput):
    code = "order_mismatch"


class TrivialClass(InvalidInput):
    code = "trivial_class"


class NotDoubleCover(InvalidInput):
    code = "not_double_cover"


class UnsupportedDegree(InvalidInput):
    code = "unsupported_degree"


class DegreeNotZero(InvalidInput):
    code = "degree_not_zero"


class MultiplicityExceedsDegree(InvalidInput):
    code = "multiplicity_exceeds_degree"


class ConjugatePairViolation(InvalidInput):
    code = "conjugate_pair_violation"


class SameFiberConflict(InvalidInput):
    code = "same_fiber_conflict"


class InvalidPattern(InvalidInput):
    code = "invalid_pattern"


class InvalidDescriptor(InvalidInput):
    code = "invalid_descriptor"


class NotTorsion(InvalidInput):
    code = "not_torsion"


class MissingPresentation(InvalidInput):
    code = "missing_presentation"


class IncompleteInput(InvalidInput):
    code = "incomplete_input"


class BudgetExceeded(SymstabError):
    """An enumeration would visit more elements than the configured budget (exit status 3)."""

    code = "budget_exceeded"
    exit_status = 3

    def __init__(self, requested: int, budget: int, what: str = "enumeration"):
        super().__init__(f"{what} needs {requested} elements, budget is {budget}")
        self.requested = requested
        self.budget = budget
