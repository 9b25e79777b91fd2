class DomainError(ValueError):
    """Raised when an argument lies outside an operation's domain."""


class ConfigError(ValueError):
    """Raised for malformed or inconsistent scenario configuration."""
