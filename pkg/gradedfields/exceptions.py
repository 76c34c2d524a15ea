# -*- coding: utf-8 -*-
"""Exceptions raised by gradedfields.

Every error derives from :class:`GradedFieldsError` and from the builtin it
refines, so ``except ValueError`` keeps catching malformed input.
"""

__all__ = [
    "ConfigError",
    "DimensionCapError",
    "ExpressionSyntaxError",
    "GradedFieldsError",
    "JetOrderError",
    "LatticeMismatchError",
    "MasslessError",
    "MissingSlotError",
    "MixedParityError",
    "NonClosureError",
    "NonIntegrablePhaseError",
    "NotASymmetryError",
    "UnboundIndexError",
    "UnboundSymbolError",
    "UnknownCoordinateError",
    "UnknownIdentifierError",
    "UnknownSectorError",
    "UnknownSuiteError",
]

from typing import Any


class GradedFieldsError(Exception):
    """Base class of all gradedfields errors."""


class MixedParityError(GradedFieldsError, ValueError):
    """An operand without definite parity was passed where one is required."""


class UnboundIndexError(GradedFieldsError, ValueError):
    """A mode-index variable cannot be summed away."""


class UnboundSymbolError(GradedFieldsError, KeyError):
    """A formal symbol or coordinate has no numeric binding."""


class NonIntegrablePhaseError(GradedFieldsError, ValueError):
    """A density carries a phase the spatial integral cannot consume."""


class LatticeMismatchError(GradedFieldsError, ValueError):
    """Two objects were built on different mode lattices."""


class UnknownSectorError(GradedFieldsError, KeyError):
    """Unknown field sector or component."""


class MasslessError(GradedFieldsError, ValueError):
    """A massive-only construction was asked for at zero mass."""


class NonClosureError(GradedFieldsError, ValueError):
    """Generators do not close under the commutator."""


class JetOrderError(GradedFieldsError, ValueError):
    """A total derivative would exceed the jet order cap."""


class UnknownCoordinateError(GradedFieldsError, KeyError):
    """A fiber coordinate does not belong to the theory."""


class NotASymmetryError(GradedFieldsError, ValueError):
    """The vector field does not leave the Lagrangian invariant up to d_H."""

    def __init__(self, message: str, residual: Any) -> None:
        super().__init__(message)
        self.residual = residual


class MissingSlotError(GradedFieldsError, KeyError):
    """A generator has no slot in the oracle space."""


class DimensionCapError(GradedFieldsError, ValueError):
    """The truncated Fock space would exceed the configured dimension cap."""


class ConfigError(GradedFieldsError, ValueError):
    """Malformed run configuration."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ExpressionSyntaxError(GradedFieldsError, ValueError):
    """The expression text does not parse."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownIdentifierError(GradedFieldsError, KeyError):
    """An expression refers to a name the evaluator does not know."""


class UnknownSuiteError(GradedFieldsError, KeyError):
    """A requested verification suite does not exist."""
