"""Exception and warning types."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class ContractError(ValueError):
    """Input violates a documented precondition (missing data, wrong flag)."""


class CoverageWarning(UserWarning):
    """An alias sum was truncated before covering the whole finite spectrum."""


class UnderflowWarning(UserWarning):
    """A bound underflowed double precision and was returned as zero."""
