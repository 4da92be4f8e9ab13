"""Exception taxonomy shared across the library."""


class DimgridError(Exception):
    """Base class for all library errors."""


class ZeroRange(DimgridError):
    """Every feature of the cloud is constant; normalization is undefined."""


class InvalidRange(DimgridError):
    """A numeric interval argument is empty or out of bounds."""


class DomainError(DimgridError):
    """An integer argument lies outside the combinatorial domain."""


class TooFewPoints(DimgridError):
    """The cloud is too small for the requested neighbor order."""


class DegenerateDistances(DimgridError):
    """Nearest-neighbor distances collapsed; an estimator cannot proceed."""


class DegenerateFit(DimgridError):
    """A regression has no spread to fit (all box counts equal)."""


class SingleClass(DimgridError):
    """A label raster contains only one class; there is no boundary."""


class UnknownGenerator(DimgridError):
    """The requested dataset generator id is not registered."""


class CacheWriteError(DimgridError):
    """The reference-anchor cache could not be persisted."""


class NoiseEstimateUnavailable(DimgridError):
    """The noise level could not be estimated from the data."""
