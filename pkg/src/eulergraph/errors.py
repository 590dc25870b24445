"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: input errors exit 1, domain errors
exit 2, capacity errors exit 3.
"""


class EulerGraphError(Exception):
    exit_code = 1


class InputError(EulerGraphError, ValueError):
    """Malformed or out-of-range arguments."""

    exit_code = 1


class ParseError(InputError):
    def __init__(self, message, line=None, position=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"position {position}")
        text = f"{message} ({', '.join(where)})" if where else message
        super().__init__(text)
        self.line = line
        self.position = position


class DomainError(EulerGraphError):
    """The input is well formed but outside the mathematical domain of the operation."""

    exit_code = 2


class CapacityError(EulerGraphError):
    """The request exceeds a configured size cap.

    ``progress`` carries whatever partial diagnostics were collected before
    giving up.
    """

    exit_code = 3

    def __init__(self, message, progress=None):
        super().__init__(message)
        self.progress = progress


class ConsistencyError(EulerGraphError, AssertionError):
    """An identity that must hold by theory failed; indicates a bug."""

    exit_code = 2
