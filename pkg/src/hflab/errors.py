"""Exception hierarchy for hflab.

Every error raised by the library derives from HflabError so the CLI can map
library failures to exit code 2 (malformed input) uniformly.
"""


class HflabError(Exception):
    """Base class for all hflab errors."""


class MalformedTableError(HflabError):
    """A table is structurally broken: partial mapping, unknown label,
    empty addition set, duplicate element.  Raised before any axiom is
    evaluated."""


class InvalidHyperfieldError(HflabError):
    """A constructor produced (or was given) a table that fails the axiom
    battery.  Carries the offending AxiomReport in ``report``."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidSubgroupError(HflabError):
    """The given element set is not a subgroup of the multiplicative group."""


class InvalidValueSetTableError(HflabError):
    """A value-set table violates its invariants or does not generate a
    valid hyperfield."""


class PreconditionError(HflabError):
    """An operation's documented precondition does not hold."""


class DyadicResidueError(PreconditionError):
    """Residue characteristic 2 passed to a construction that models the
    non-dyadic case only."""


class UnsupportedFieldError(HflabError):
    """Finite field size exceeds the configured bound."""


class PrecisionTooLowError(HflabError):
    """The p-adic oracle cannot certify a decision at the configured
    precision."""


class OracleDisagreementError(HflabError):
    """The two independent computation paths produced different tables.
    Signals an implementation bug; never expected."""


class AmbientMismatchError(HflabError):
    """Operands live over different hyperfields."""


class SizeBoundExceededError(HflabError):
    """Input exceeds the enumeration size bound of the operation."""


class NotAnIsomorphismError(HflabError):
    """A morphism argument was required to be an isomorphism but is not."""


class InequalityViolationError(HflabError):
    """Numeric inputs contradict the Abhyankar inequality."""
