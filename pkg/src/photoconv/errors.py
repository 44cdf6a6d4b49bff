"""Exception types shared across the solvers."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ConvergenceError(RuntimeError):
    """An iterative solver exhausted its iteration budget."""


class BracketError(RuntimeError):
    """A root bracket could not be established (inconsistent parameters)."""


class SingularOperatorError(RuntimeError):
    """A discretized operator is numerically singular."""


class ConfigError(ValueError):
    """A harness configuration file failed validation."""
