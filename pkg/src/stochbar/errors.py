"""Exception types shared across the package."""


class StochbarError(Exception):
    """Base class for package errors."""


class ConfigError(StochbarError):
    """Bad configuration: unknown keys, wrong types, inconsistent values."""


class DataError(StochbarError):
    """Unreadable or malformed data files (IDX images, weight archives)."""


class NumericError(StochbarError):
    """Numerical failure, e.g. a diverged training run."""
