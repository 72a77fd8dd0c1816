"""Exceptions shared across the package."""


class CapabilityError(Exception):
    """Raised when an input exceeds a configured resource or scale limit.

    The message names the limit that was exceeded so callers can either
    raise the cap or shrink the request. The CLI maps this to exit code 2.
    """
