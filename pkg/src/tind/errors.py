class TindError(Exception):
    """Base class for errors raised by this package."""


class FormatError(TindError, ValueError):
    """Malformed graph, weight, subgraph or decomposition text."""


class PreconditionError(TindError, ValueError):
    """An operation was called on input outside its contract."""


class OracleLimitError(PreconditionError):
    """Input too large for an exponential-time oracle."""
