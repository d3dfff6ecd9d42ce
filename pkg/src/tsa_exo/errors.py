"""Exception types shared across the package.

Every error raised on a bad input derives from :class:`TsaExoError` and
carries a short ``category`` string. The CLI prints errors as
``error[<category>]: <message>`` so scripts can match on the category
without parsing prose.
"""


class TsaExoError(Exception):
    """Base class for all package errors."""

    category = "error"


class DomainError(TsaExoError, ValueError):
    """A numeric input is outside the physically meaningful domain."""

    category = "domain"


class MissingParameterError(TsaExoError, ValueError):
    """A required parameter has no value and no default exists for it."""

    category = "missing-parameter"


class NoFeasibleMotorError(TsaExoError, LookupError):
    """No motor in the catalog meets the torque requirement."""

    category = "no-feasible-motor"


class UnknownCommandError(TsaExoError, ValueError):
    """A line on the command channel is not a recognized command."""

    category = "unknown-command"


class NoActivationError(TsaExoError, ValueError):
    """A simulation was requested but the event list never activates it."""

    category = "no-activation"


class EventScriptError(TsaExoError, ValueError):
    """An event script line could not be parsed; message carries the line number."""

    category = "script-parse"


class ConfigError(TsaExoError, ValueError):
    """A configuration file or override is malformed or has unknown keys."""

    category = "config"
