"""Exception hierarchy shared by every stage of the pipeline."""


class BraidwireError(Exception):
    """Base class for all errors raised by braidwire."""


class ParseError(BraidwireError, ValueError):
    """Input file could not be parsed. ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MissingDataError(ParseError):
    pass


class DuplicateDateError(ParseError):
    pass


class AdmissibilityError(BraidwireError):
    """Portfolio violates an admissibility rule (odd ticker count, ...)."""

    def __init__(self, errors):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class DimensionError(BraidwireError, ValueError):
    pass


class UnknownGateError(BraidwireError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown gate"


class EmitError(BraidwireError):
    pass
