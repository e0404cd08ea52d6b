"""Exception and warning types shared across the package."""


class VortexmechError(Exception):
    """Base class for all package errors."""


class ValidationError(VortexmechError):
    """Invalid input data: bad config file, bad units, broken invariant."""


class DimensionMismatchError(VortexmechError):
    """Operators or states living on incompatible Hilbert spaces."""


class IntegrationError(VortexmechError):
    """A numerical invariant was violated during time integration."""


class GeometryWarning(UserWarning):
    """Geometry outside the validity range of an analytic formula.

    The computation still runs; the result may be quantitatively off.
    """
