"""Exception taxonomy shared across the package.

Every failure mode raised on purpose derives from :class:`TautradeError`
so callers can catch framework errors without swallowing programming
mistakes (TypeError, KeyError, ...).
"""


class TautradeError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(TautradeError):
    """An input file does not declare the required columns/fields."""


class DataError(TautradeError):
    """Input values violate a data invariant (bad price, duplicate date, gap)."""


class AlignmentError(TautradeError):
    """Timestamp alignment produced an empty or inconsistent result."""


class WindowError(TautradeError):
    """Not enough history for a rolling computation; names the indicator."""


class HorizonError(TautradeError):
    """Not enough future data for a hindsight computation."""


class ArgumentError(TautradeError, ValueError):
    """A scalar argument is outside its documented domain."""


class ValidationError(TautradeError):
    """A parsed payload (strategy, news factors) fails schema validation."""


class TemplateError(TautradeError):
    """A prompt template has unknown or unfilled placeholders."""


class GatewayError(TautradeError):
    """Base class for completion-backend failures."""


class AuthError(GatewayError):
    """The provider rejected the configured credential."""


class RateLimitError(GatewayError):
    """Retries exhausted against provider rate limiting."""


class ProviderError(GatewayError):
    """Malformed or unexpected provider response; carries the raw body."""

    def __init__(self, message: str, body: str = ""):
        super().__init__(message)
        self.body = body


class ScheduleError(TautradeError):
    """A guidance-signal schedule does not line up with episode blocks."""


class EnvProtocolError(TautradeError):
    """Episode API misuse, e.g. step() after the episode is done."""


class TrainingError(TautradeError):
    """Non-finite loss or parameters during agent training."""


class SamplingError(TautradeError):
    """Dataset too short to sample the requested tuning windows."""


class DegenerateSeriesError(TautradeError):
    """A statistic is undefined for the series (e.g. zero variance)."""


class ReportError(TautradeError):
    """Report assembly failed (mismatched run counts, empty condition)."""
