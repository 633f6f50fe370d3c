class InvalidFormError(Exception):
    """Raise on a Gram matrix that is not a symmetric, non-degenerate, signature (2,1) form."""


class NotAnIsometryError(Exception):
    """Raise on a matrix g with g^T F g != F."""


class OrbitSpecError(Exception):
    """Raise on an orbit whose base vector or generators break its invariants."""


class ResourceCapError(Exception):
    """Raise when an enumeration grows past the configured visited-set cap."""


class InsufficientDataError(Exception):
    """Raise on too few usable samples for a fit."""


class InvalidModulusError(Exception):
    """Raise on a modulus that is not a squarefree integer >= 1."""


class BadModulusError(Exception):
    """Raise on a modulus sharing a prime with the excluded (bad) set."""


class OutOfRangeError(Exception):
    """Raise on a prime below the range where a reference formula applies."""


class InvalidGapError(Exception):
    """Raise on a spectral gap theta outside [1/2, delta)."""


class DomainError(Exception):
    """Raise on an argument outside the domain of a numerical routine."""


class GridError(Exception):
    """Raise on inconsistent u-grids between sieve function tables."""


class ConstraintError(Exception):
    """Raise when (u, v) violate the constraints of the weighted sieve bound."""


class StrongPrimitivityError(Exception):
    """Raise when a normalised coordinate function is not integral on an orbit point."""


class ConfigurationError(Exception):
    """Raise on inputs computed for different presets or functions being combined."""


class ConfigValidationError(Exception):
    """Raise on a run document that fails validation. The message names the field."""


class InvariantError(Exception):
    """Raise when a computed object breaks a structural invariant."""
