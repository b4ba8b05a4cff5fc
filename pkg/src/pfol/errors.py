"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid experiment, learner, or adversary configuration."""


class ProtocolError(RuntimeError):
    """Online game protocol violated: wrong act/observe order or horizon overrun."""
