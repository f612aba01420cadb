"""Exception types raised by qlcm."""

from __future__ import annotations


class QlcmError(Exception):
    """Base class for all qlcm errors."""


class DomainError(QlcmError, ValueError):
    """An argument lies outside the domain of the operation."""


class UnsupportedBase(DomainError):
    """The operation needs q >= 2 but was given q = 1."""


class CoprimalityError(DomainError):
    """A progression violates one of its two gcd hypotheses.

    ``which`` is ``"u0,r"`` or ``"u1,q"``.
    """

    def __init__(self, which: str, a: int, b: int):
        self.which = which
        self.a = a
        self.b = b
        super().__init__(f"gcd({which}) = gcd({a}, {b}) != 1")


class DegenerateDifference(DomainError):
    """Two equal values make a product of differences vanish."""
