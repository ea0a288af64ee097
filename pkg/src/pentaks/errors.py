"""Exception types shared across the toolkit."""


class PentaksError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(PentaksError):
    """Input violates a documented invariant (bad norm, bad JSON, ...)."""


class DegeneracyError(PentaksError):
    """A construction is undefined because inputs are (near-)parallel."""


class DomainError(PentaksError):
    """A quantity left its mathematical domain (e.g. complex cubic roots)."""


class SingularFamilyError(PentaksError):
    """Family parameters hit the singular corner sin^2(a) sin^2(b) = 1."""


class NoViolationError(PentaksError):
    """Requested a violation cone for an operator that never exceeds 2."""


class CollapseError(PentaksError):
    """Hardy construction collapsed (apex orthogonal to the outlier)."""


class SearchFailedError(PentaksError):
    """A multi-start constrained search exhausted its restart budget."""


class NotApplicableError(PentaksError):
    """Operation has nothing to act on (e.g. graph without pentagons)."""
