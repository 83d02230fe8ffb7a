"""Shared exception types."""


class MorphkitError(Exception):
    """Base class for all errors raised by this package."""


class DataError(MorphkitError, ValueError):
    """Invalid or inconsistent input data (bad file, bad record, bad shape)."""
