"""Exception types shared across the package."""


class QueryBeyondPrefix(Exception):
    """A membership or count query reaches beyond the stored prefix."""


class EnumerationCapExceeded(Exception):
    """Requested exhaustive enumeration is larger than the hard cap."""


class InvalidSeed(Exception):
    """Initial segment fails the count identity on its window."""


class DomainError(Exception):
    """Argument outside the mathematical domain of the operation."""


class PreconditionError(Exception):
    """Argument violates a documented precondition."""


class NoWitness(Exception):
    """No representation pair exists where the construction guarantees one.

    This is a loud failure: it contradicts the interval containment the
    witness extractor is built on, so callers must not swallow it.
    """
