class InterlaceCheckerError(Exception):
    """Base class for every error raised by the checker."""


class ConfigError(InterlaceCheckerError, ValueError):
    pass


class InputFormatError(InterlaceCheckerError, ValueError):
    def __init__(self, message, source=None, field=None):
        self.source = source
        self.field = field
        where = ', '.join(filter(None, [
            f'file {source}' if source else None,
            f'field {field}' if field else None,
        ]))
        super().__init__(f'{message} ({where})' if where else message)


class ZeroPolynomialError(InterlaceCheckerError, ValueError):
    pass


class EndpointRootError(InterlaceCheckerError, ValueError):
    def __init__(self, endpoint):
        self.endpoint = endpoint
        super().__init__(
            f'Interval endpoint {endpoint} is a root; nudge it with nudge_endpoints() and retry'
        )


class DegreeMismatchError(InterlaceCheckerError, ValueError):
    pass


class NonSquareMatrixError(InterlaceCheckerError, ValueError):
    pass


class NotHermitianError(InterlaceCheckerError, ValueError):
    def __init__(self, i, j):
        self.position = (i, j)
        super().__init__(f'Matrix is not Hermitian: entry ({i}, {j}) is not the conjugate of ({j}, {i})')


class InternalInconsistencyError(InterlaceCheckerError, AssertionError):
    """A proven identity or theorem failed: this is a bug, not bad input."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)
