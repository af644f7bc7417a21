"""Exception types shared across the package."""


class TreeParseError(ValueError):
    """A tree description could not be parsed; the message names the offending line."""


class PreconditionError(ValueError):
    """An operation's size or shape precondition is not met (e.g. too few vertices)."""


class ConfigError(ValueError):
    """A solver or CLI configuration value is out of range or inconsistent."""
