"""Exception hierarchy.

Everything raised on purpose by the library derives from :class:`SGError`,
which is a ``ValueError`` so that callers treating bad input generically keep
working.
"""


class SGError(ValueError):
    """Base class for library errors."""


class InvalidParameter(SGError):
    pass


class InvalidSubset(SGError):
    pass


class UnsupportedStructure(SGError):
    pass


class MalformedMatrix(SGError):
    """Non-square, asymmetric, mis-sized or otherwise unusable matrix input."""


class SingularMatrix(MalformedMatrix):
    """Raised by the elimination routines when no pivot can be found."""


class NotProportional(SGError):
    """The boundary trace of a network is not a scalar multiple of ``D``.

    The offending trace is kept on ``schur`` for inspection.
    """

    def __init__(self, message, schur=None):
        super().__init__(message)
        self.schur = schur


class InvalidAddress(SGError):
    pass


class NoChain(SGError):
    pass


class NoPath(SGError):
    pass


class PreconditionViolated(SGError):
    pass
