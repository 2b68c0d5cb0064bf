"""Exception types raised by the library."""


class TMeshError(Exception):
    """Base class for all library errors."""


class InvalidMesh(TMeshError):
    pass


class InvalidKnots(TMeshError):
    pass


class NoSuchCell(TMeshError):
    pass


class AlreadySubdivided(TMeshError):
    pass


class LevelGap(TMeshError):
    pass


class Infeasible(TMeshError):
    pass


class DuplicateNodes(TMeshError):
    pass


class InconsistentStats(TMeshError):
    pass


class PreconditionViolated(TMeshError):
    pass


class NonRectangularCVR(TMeshError):
    pass


class CannotCover(TMeshError):
    pass


class ParseError(TMeshError):
    pass


class ValidationError(TMeshError):
    pass
