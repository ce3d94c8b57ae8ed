class QHammingError(Exception):
    pass


class InputError(QHammingError, ValueError):
    """Malformed functions, bad arities or qubit indices."""


class ExpressionSyntaxError(InputError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class ResourceError(QHammingError):
    """Requested register exceeds the configured qubit cap."""


class PreconditionError(QHammingError):
    pass


class ProtocolError(QHammingError):
    """A decision was requested without the data it needs (e.g. delta in the C=0 branch)."""


class InconsistencyError(QHammingError):
    """A concurrence reading does not invert to an integer solution count."""
