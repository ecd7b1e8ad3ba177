"""Exception types shared across the package."""


class SizeError(ValueError):
    """Problem size exceeds what dense simulation or exhaustive enumeration supports."""


class GraphParseError(ValueError):
    """A graph text file is malformed.

    The message names the offending line so files can be fixed by hand.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ConfigError(ValueError):
    """An experiment configuration field is missing, unknown, or invalid."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
