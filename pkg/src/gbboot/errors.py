"""Exception types shared across the package."""


class GbbootError(Exception):
    """Base class for all library-specific errors."""


class InsufficientDataError(GbbootError, ValueError):
    """Raised when a sample is too short for the requested operation."""


class RankDeficiencyError(GbbootError, ValueError):
    """Raised when a regression design is singular (e.g. constant series)."""


class StationarityError(GbbootError, ValueError):
    """Raised when an operation requires a stationary model but the
    companion spectral radius is at or above one."""


class PanelFormatError(GbbootError, ValueError):
    """Raised on malformed panel input: parse failures, calendar gaps,
    all-missing stations."""


class MissingDataError(GbbootError, ValueError):
    """Raised when missing values survive into a stage that requires a
    complete panel."""
