"""Exception types shared across the package."""


class RelHypError(Exception):
    pass


class SearchBoundExceeded(RelHypError):
    pass


class UnsupportedQuotient(RelHypError):
    pass


class IncompleteOracle(RelHypError):
    pass


class ResourceLimit(RelHypError):
    pass


class SelfLoop(RelHypError):
    pass


class NotALoop(RelHypError):
    pass


class DepthOverflow(RelHypError):
    pass


class Disconnected(RelHypError):
    pass


class BoundaryNotInT(RelHypError):
    pass


class TruncationUnsound(RelHypError):
    pass


class CornerAtL2(RelHypError):
    pass


class ParseError(RelHypError):
    pass
