# -*- coding: utf-8 -*-

"""Marker interfaces for algebra elements, configuration and suites."""

__all__ = [
    "IGradedElement",
    "IRunConfig",
    "IScalar",
    "IVerificationSuite",
]

from zope.interface import Interface


class IScalar(Interface):
    """Provided by exact scalar coefficients."""


class IGradedElement(Interface):
    """Provided by elements of a Z2-graded algebra (operator words, fiber polynomials)."""


class IRunConfig(Interface):
    """Provided by a validated run configuration."""


class IVerificationSuite(Interface):
    """Provided by named groups of identity checks."""
