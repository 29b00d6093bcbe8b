"""Error types shared across the engine."""


class EngineError(Exception):
    """Base class for all engine errors."""


# graph
class DuplicateId(EngineError):
    pass


class InvalidKind(EngineError):
    pass


class UnknownThing(EngineError):
    pass


class UnknownContext(EngineError):
    pass


class WeightOutOfRange(EngineError):
    pass


class SelfLoop(EngineError):
    pass


class EmptyContext(EngineError):
    pass


class NucleusNotMember(EngineError):
    pass


# decay / buoyancy
class InvalidParams(EngineError):
    pass


class TimeTravel(EngineError):
    pass


class InvalidKappa(EngineError):
    pass


class InvalidConfig(EngineError):
    pass


# retrieval
class EmptyQuery(EngineError):
    pass


class InvalidRankingConfig(EngineError):
    pass


# trace files
class TraceError(EngineError):
    """Base for trace-file problems; carries the offending line number."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class ParseError(TraceError):
    pass


class NonMonotoneTime(TraceError):
    pass


class UnknownId(TraceError):
    pass


class ReplayError(EngineError):
    """Wraps a module error with the sequence number of the failing event."""

    def __init__(self, seq, cause):
        super().__init__(f"event seq {seq}: {cause}")
        self.seq = seq
        self.cause = cause
