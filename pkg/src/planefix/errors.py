"""Exception hierarchy shared by all modules.

Exit-code mapping used by the CLI: InputError -> 1, ScopeError -> 2,
VerificationError -> 3.
"""


class PlanefixError(Exception):
    """Base class for all library errors."""


class InputError(PlanefixError):
    """Malformed or inconsistent input (bad file, missing position, ...)."""


class ScopeError(PlanefixError):
    """Structurally valid input that the implemented algorithms do not cover.

    Carries optional machine-readable evidence (e.g. an outerplanarity
    rejection witness) in ``evidence``.
    """

    def __init__(self, message, evidence=None):
        super().__init__(message)
        self.evidence = evidence


class VerificationError(PlanefixError):
    """An internal exact check failed; indicates a bug, not bad input."""


class BudgetError(PlanefixError):
    """A configured resource cap would be exceeded."""
