"""
Exception hierarchy
InputError subclasses map to exit code 1, InternalInconsistencyError to exit code 2
"""


class BlockCalcError(Exception):
    """Base class for every error raised by the calculator"""


class InputError(BlockCalcError):
    """Bad user input: exit code 1"""


class InvalidTypeError(InputError):
    """Unsupported (type letter, rank) pair"""


class PreconditionError(InputError):
    """An operation was called outside its domain"""


class GroupTooLargeError(InputError):
    """Weyl group enumeration exceeded the configured cap"""


class InternalInconsistencyError(BlockCalcError):
    """A computed quantity broke an identity that must hold: exit code 2"""


class UnderdeterminedSystemError(BlockCalcError):
    """The sum-formula oracle could not pin down a unique answer"""
