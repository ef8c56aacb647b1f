"""Exception types shared across the package."""


class DivFrontierError(Exception):
    """Base class for all package errors."""


class DimensionError(DivFrontierError):
    """Operands have incompatible lengths or dimensions."""


class ParameterError(DivFrontierError):
    """An argument is outside its valid domain."""


class DivergenceUndefinedError(DivFrontierError):
    """The closed form does not exist for these inputs.

    Distinct from an infinite divergence: +inf is a meaningful value
    (support violation), while e.g. a non-PD interpolated covariance means
    the defining integral itself diverges for the wrong reason.
    """


class InsufficientDataError(DivFrontierError):
    """Not enough samples for the requested estimate."""


class ParseError(DivFrontierError):
    """Malformed input file."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        loc = ""
        if path is not None:
            loc += f"{path}"
        if line is not None:
            loc += f":{line}"
        super().__init__(f"{loc}: {message}" if loc else message)
