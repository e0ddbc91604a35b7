class DomainError(ValueError):
    """An argument lies outside the domain of the requested computation."""
