"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Bad configuration: unparseable file, unknown key, or invalid field value."""


class ModelDomainError(ValueError):
    """A model quantity left its valid domain (e.g. non-positive population)."""


class EngineError(RuntimeError):
    """The evolutionary engine could not complete (e.g. evaluator failure)."""
