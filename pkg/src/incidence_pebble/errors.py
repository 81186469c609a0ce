"""Exception hierarchy for the incidence pebble game library."""


class IncidenceError(Exception):
    """Base class for all library errors."""


# parameters

class ParameterError(IncidenceError, ValueError):
    """The (lambda, k1, k2, l) tuple is unusable for the requested operation."""


class NonPositiveLambda(ParameterError):
    pass


class ParameterConditionViolated(ParameterError):
    pass


class LambdaNotOne(ParameterError):
    pass


class NoFeasibleLambda(IncidenceError):
    pass


# geometry documents

class GeometryFormatError(IncidenceError, ValueError):
    """A geometry or hypergraph document is malformed or inconsistent."""


class ParseError(GeometryFormatError):
    pass


class DanglingReference(GeometryFormatError):
    pass


class DuplicateIncidence(GeometryFormatError):
    pass


# game moves

class MoveError(IncidenceError):
    """A pebble game move was requested whose precondition does not hold."""


class InsufficientPebbles(MoveError):
    pass


class SourceHasNoPebble(MoveError):
    pass


class AlreadyAccepted(MoveError):
    pass


class EmptyTargetPebbles(MoveError):
    pass


class PathNotInD(MoveError):
    pass


class NotAFailureState(MoveError):
    pass


class InvariantViolation(IncidenceError, AssertionError):
    """Raised in debug mode when a game invariant breaks after a move."""


# oracles and generators

class InstanceTooLarge(IncidenceError):
    pass


class NotSparseInput(IncidenceError):
    pass


class InfeasibleSize(IncidenceError):
    pass


class PostCheckFailed(IncidenceError):
    pass
