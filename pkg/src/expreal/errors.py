"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class ResourceLimitError(RuntimeError):
    """The requested evaluation would exceed the configured term limit."""
