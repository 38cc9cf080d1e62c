"""Exception hierarchy shared by every module."""


class ThresholdingError(ValueError):
    """Base class for all errors raised by this package."""


class MalformedHeader(ThresholdingError):
    pass


class UnsupportedMaxval(ThresholdingError):
    pass


class TruncatedData(ThresholdingError):
    pass


class ImageTooSmall(ThresholdingError):
    pass


class InvalidQ(ThresholdingError):
    pass


class DegenerateHistogram(ThresholdingError):
    """No candidate threshold splits the histogram into two non-empty classes."""


class InvalidParams(ThresholdingError):
    pass


def check_q(q) -> float:
    """Return ``q`` as a float, raising :class:`InvalidQ` unless it is a finite positive real."""
    try:
        qf = float(q)
    except (TypeError, ValueError):
        raise InvalidQ(f"q must be a positive real, got {q!r}") from None
    if not qf > 0 or qf == float("inf"):
        raise InvalidQ(f"q must be a positive real, got {q!r}")
    return qf
