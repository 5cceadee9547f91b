"""Shared exception types."""


class DiskpackError(Exception):
    """Base class for all library errors."""


class DomainError(DiskpackError):
    """A numeric operation was applied outside its mathematical domain."""


class InputError(DiskpackError):
    """Caller-supplied data is malformed (bad sides, bad generator parameters)."""


class ContractError(DiskpackError):
    """A documented precondition of a bound function was violated on the real path."""


class ParseError(DiskpackError):
    """A packing document or instance file could not be parsed."""
