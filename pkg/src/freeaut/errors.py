"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-range input (bad index, rank mismatch, bad syntax)."""


class SizeGuardError(RuntimeError):
    """A computation was refused because it exceeds the configured size limits."""


class NotInFiltrationError(ValueError):
    """An element does not lie in the required term of a filtration."""
