"""Exception hierarchy. Every error is a ``ValueError`` so callers can catch broadly."""


class MajlatError(ValueError):
    """Base class for all majlat errors."""


class EmptyInput(MajlatError):
    pass


class NegativeMass(MajlatError):
    pass


class NotNormalized(MajlatError):
    pass


class OutOfDomain(MajlatError):
    pass


class InvalidPartition(MajlatError):
    pass


class EmptyList(MajlatError):
    pass


class NotComonotone(MajlatError):
    pass


class UnsupportedOrder(MajlatError):
    """The entropy order is outside the domain of the requested quantity."""


class NotRational(MajlatError):
    pass


class ParseError(MajlatError):
    """Malformed input file or command-line token."""
