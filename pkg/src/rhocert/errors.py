"""Exception types shared across the package."""

from __future__ import annotations


class RhoCertError(Exception):
    """Base class for all errors raised by rhocert."""


class ZeroFunctional(RhoCertError, ValueError):
    """A zero covector was passed where a nonzero functional is required."""


class InvalidInput(RhoCertError, ValueError):
    """Dimension mismatch or malformed numeric input."""


class NotASubmodule(RhoCertError, ValueError):
    """The subalgebra weights are not contained in the ambient weights."""


class InvalidSpec(RhoCertError, ValueError):
    """A pair specification violates its schema or family constraints."""

    def __init__(self, message: str, path: str = "$") -> None:
        super().__init__(f"{path}: {message}")
        self.path = path
        self.reason = message


class ResourceLimit(RhoCertError):
    """Ray enumeration exceeded its candidate budget."""

    def __init__(self, count: int, cap: int) -> None:
        super().__init__(f"ray enumeration examined {count} candidates, exceeding cap {cap}")
        self.count = count
        self.cap = cap
