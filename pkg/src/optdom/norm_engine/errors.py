"""
Exceptions raised by the norm engine.

Every error derives from `OptdomError` so callers (the CLI in particular) can
map failures to exit codes without knowing each module.
"""

from typing import Optional


class OptdomError(Exception):
    """Base class of all optdom errors."""


class InvalidSpaceError(OptdomError, ValueError):
    """Ill-formed SpaceSpec (q <= 0, p <= 0, non-positive weight...)."""


class InvalidArgumentError(OptdomError, ValueError):
    """An operation received an argument of the wrong kind or size."""


class NormRangeError(OptdomError, ArithmeticError):
    """Overflow or underflow while raising entries to a power."""

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class UnsupportedDualError(OptdomError, ValueError):
    """No closed-form Köthe dual for the requested space."""


class UnsupportedSpaceError(OptdomError, ValueError):
    """The requested (co)domain norm is not computable for this operation."""


class InvalidTailModelError(OptdomError, ValueError):
    """Decay model is malformed or declared for another space."""


class ContractError(OptdomError, RuntimeError):
    """Declared matrix metadata is contradicted by the data."""


class ZeroColumnError(OptdomError, ValueError):
    """A probed column vanishes identically on the truncation."""

    def __init__(self, message: str, column: int):
        super().__init__(message)
        self.column = column


class PreconditionError(OptdomError, ValueError):
    """A hypothesis of the requested analysis is not met."""


class SupportTooLargeError(OptdomError, ValueError):
    """A brute-force routine was called beyond its size cap."""


class ConfigError(OptdomError, ValueError):
    """Malformed configuration; `path` points at the failing schema node."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class OracleDisagreementError(OptdomError, RuntimeError):
    """A brute-force oracle did not confirm an optimizer result."""
