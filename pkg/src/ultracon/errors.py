"""Exception types shared across the package."""


class UltraconError(Exception):
    """Base class for every error this package raises on purpose."""


class ValidationError(UltraconError, ValueError):
    """An input failed a structural invariant.

    The message names the invariant that broke (table length, partition
    cover, ultrafilter axiom number, ...) and, where cheap, a witness.
    """


class SizeGuardError(ValidationError):
    """A construction would exceed the configured size guard."""
