# lossyboson/errors.py
from __future__ import annotations


class LossyBosonError(Exception):
    """Base class for every error raised by the package."""


class ConfigError(LossyBosonError, ValueError):
    """Invalid experiment configuration or malformed input file."""


class ShapeError(LossyBosonError, ValueError):
    """Matrix / occupation state has the wrong shape for the operation."""


class NumericError(LossyBosonError, ArithmeticError):
    pass


class CapExceededError(NumericError):
    """An enumeration or permanent size cap would be exceeded."""

    def __init__(self, what: str, count: int, cap: int):
        self.what = what
        self.count = count
        self.cap = cap
        super().__init__(f"{what}: {count} exceeds cap {cap}")


class IllConditionedError(NumericError):
    pass


class NormalizationError(NumericError):
    pass
