"""Shared error types."""


class CapacityError(Exception):
    """A requested computation exceeds the documented size guards."""
