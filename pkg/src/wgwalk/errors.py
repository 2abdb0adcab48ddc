"""Exception types raised by wgwalk."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class ConfigError(ValueError):
    """An experiment configuration is malformed or violates an invariant.

    ``key`` names the offending field and ``line`` the 1-based line of the
    config text it came from, when known.
    """

    def __init__(self, message, key=None, line=None):
        self.reason = message
        self.key = key
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key '{key}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
