"""Exception hierarchy shared by all cayleysaw modules."""

from __future__ import annotations


class CayleySawError(Exception):
    """Base class for all package errors."""


class MalformedElementError(CayleySawError):
    """An element's coordinates do not match the group descriptor."""


class TermSyntaxError(CayleySawError):
    """A group descriptor term could not be parsed."""


class EmptyGeneratingSetError(CayleySawError):
    """A generating set was empty (or collapsed to the identity)."""


class MaskError(CayleySawError):
    """A moduli mask is invalid for the target group."""


class TrivialSubgroupError(CayleySawError):
    """An operation requires a nontrivial central subgroup."""


class FiniteGraphError(CayleySawError):
    """The graph is finite, so the connective constant is undefined."""


class ResourceBudgetError(CayleySawError):
    """A memory budget was exceeded (e.g. a ball grew too large)."""


class TimeBudgetError(CayleySawError):
    """A wall-clock budget was exceeded before any usable result."""


class StabilizationHorizonError(CayleySawError):
    """Subgroup intersections did not stabilize within the horizon.

    Diagnostic only: failing to stabilize within a finite window does not
    prove that the sequence never stabilizes.
    """

    def __init__(self, message: str, horizon: int, mismatches: tuple = ()):
        super().__init__(message)
        self.horizon = horizon
        self.mismatches = mismatches


class ConvergenceHorizonError(CayleySawError):
    """Rooted balls did not become isomorphic within the horizon."""

    def __init__(self, message: str, horizon: int):
        super().__init__(message)
        self.horizon = horizon


class PreconditionError(CayleySawError):
    """A documented operation precondition was violated."""


class LevelConstructionError(CayleySawError):
    """No admissible modulus was found when extending the quotient tree."""

    def __init__(self, message: str, level: int, diagnostics: dict):
        super().__init__(message)
        self.level = level
        self.diagnostics = diagnostics


class InternalInvariantError(CayleySawError):
    """An exact internal invariant failed; this signals an engine bug."""
