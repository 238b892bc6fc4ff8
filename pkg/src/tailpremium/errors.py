"""Exception types shared across the package.

All errors raised by this package derive from :class:`TailPremiumError` so
callers can catch everything with one clause.  The split below mirrors how
the command line interface maps failures to exit codes: malformed input
files, invalid parameters, and mathematical domain violations are distinct
situations and deserve distinct types.
"""


class TailPremiumError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(TailPremiumError, ValueError):
    """A constructor argument or estimation setting violates its contract."""


class DomainError(TailPremiumError, ValueError):
    """A quantity is mathematically undefined for the given data or parameters.

    Examples: evaluating the product-limit survival at or above the largest
    observation, a premium whose defining integral diverges, or a tail index
    estimate too heavy for a finite premium.
    """


class FileFormatError(TailPremiumError, ValueError):
    """A claims file or study configuration file cannot be parsed."""
