"""Exception types shared across the package."""


class UsageError(ValueError):
    """Bad arguments: mixed fields, out-of-range indices, malformed input."""


class PreconditionError(ValueError):
    """An operation's mathematical precondition does not hold."""


class CapacityError(ValueError):
    """The requested search is larger than the configured limit."""


class PatternSyntaxError(ValueError):
    def __init__(self, message, text, pos):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos
