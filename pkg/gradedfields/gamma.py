# -*- coding: utf-8 -*-
"""Dirac matrices in the standard representation.

Exact matrices are sympy ``ImmutableMatrix`` objects whose entries are
Gaussian rationals times square roots of rationals. The numeric twins (numpy
arrays) serve momenta whose energy is irrational and the tolerance checks.
The metric is ``diag(+1, -1, -1, -1)``; momenta are covariant, so
``p_lambda gamma^lambda = E gamma^0 + p_j gamma^j``.
"""

__all__ = [
    "METRIC",
    "OnShellMomentum",
    "boost_K",
    "boost_K_array",
    "boost_K_inverse",
    "boost_K_rows",
    "dirac_frame",
    "gamma",
    "gamma_array",
    "shell_projectors",
    "slash",
    "to_scalar_rows",
]

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cache
from typing import Any

import numpy as np
from sympy import I, QQ, ImmutableMatrix, Rational, eye, sqrt, zeros

from gradedfields.exceptions import MasslessError
from gradedfields.scalar import ScalarExpr, radical_power, radsum, radsum_add

logger = logging.getLogger(__name__)

#: Minkowski metric, diagonal entries.
METRIC = (1, -1, -1, -1)

_PAULI = (
    ImmutableMatrix([[0, 1], [1, 0]]),
    ImmutableMatrix([[0, -I], [I, 0]]),
    ImmutableMatrix([[1, 0], [0, -1]]),
)


@cache
def gamma(index: int) -> ImmutableMatrix:
    """Return ``gamma^index`` in the Dirac representation."""
    if index not in (0, 1, 2, 3):
        raise IndexError(f"Spacetime index out of range: {index}")
    if index == 0:
        return ImmutableMatrix.diag(1, 1, -1, -1)
    sigma = _PAULI[index - 1]
    block = zeros(4, 4)
    block[0:2, 2:4] = sigma
    block[2:4, 0:2] = -sigma
    return ImmutableMatrix(block)


@cache
def gamma_array(index: int) -> np.ndarray:
    """Numeric ``gamma^index``."""
    return np.array(gamma(index).evalf(), dtype=complex)


@dataclass(frozen=True)
class OnShellMomentum:
    """Covariant spatial momentum on the mass shell of ``mass``."""

    spatial: tuple[Any, Any, Any]
    mass: Any

    @property
    def energy(self) -> Any:
        """``E = sqrt(m**2 + |p|**2)``, exact."""
        return sqrt(Rational(self.mass) ** 2 + sum(Rational(p) ** 2 for p in self.spatial))

    @property
    def exact(self) -> bool:
        """Whether all components are rationals."""
        return all(isinstance(Rational(v), Rational) for v in (*self.spatial, self.mass))

    def covariant(self) -> tuple[Any, Any, Any, Any]:
        """``(p_0, p_1, p_2, p_3)``."""
        return (self.energy, *(Rational(p) for p in self.spatial))  # type: ignore[return-value]

    def require_massive(self) -> None:
        """Raise :class:`MasslessError` when the mass vanishes."""
        if not Rational(self.mass) > 0:
            raise MasslessError(f"Dirac quantities need a positive mass, got {self.mass}")


def slash(p: OnShellMomentum) -> ImmutableMatrix:
    """Return ``p_lambda gamma^lambda``."""
    total = zeros(4, 4)
    for index, component in enumerate(p.covariant()):
        total += component * gamma(index)
    return ImmutableMatrix(total.applyfunc(lambda entry: entry.expand()))


def _spatial_boost(p: OnShellMomentum) -> ImmutableMatrix:
    total = zeros(4, 4)
    for j, component in enumerate(p.spatial, start=1):
        total += Rational(component) * gamma(j) * gamma(0)
    return ImmutableMatrix(total)


def boost_K(p: OnShellMomentum) -> ImmutableMatrix:
    """Boost ``sqrt(m / (2 (E + m))) (1 + p_lambda gamma^lambda gamma_0 / m)``."""
    p.require_massive()
    m, energy = Rational(p.mass), p.energy
    prefactor = sqrt(m / (2 * (energy + m)))
    matrix = prefactor * ((1 + energy / m) * eye(4) + _spatial_boost(p) / m)
    return ImmutableMatrix(matrix.applyfunc(lambda entry: entry.expand()))


def boost_K_inverse(p: OnShellMomentum) -> ImmutableMatrix:
    """Inverse boost; it equals the boost of the opposite momentum."""
    return boost_K(OnShellMomentum(tuple(-Rational(c) for c in p.spatial), p.mass))  # type: ignore[arg-type]


def shell_projectors(p: OnShellMomentum) -> tuple[ImmutableMatrix, ImmutableMatrix]:
    """Return ``((m + pslash) / 2m, (m - pslash) / 2m)``."""
    p.require_massive()
    m = Rational(p.mass)
    pslash = slash(p)
    plus = (m * eye(4) + pslash) / (2 * m)
    minus = (m * eye(4) - pslash) / (2 * m)
    return ImmutableMatrix(plus), ImmutableMatrix(minus)


def dirac_frame(p: OnShellMomentum) -> tuple[list[ImmutableMatrix], list[ImmutableMatrix]]:
    """Columns ``u_A = K e_A`` and ``v_B = K e_(B+2)`` of the boosted rest frame."""
    boost = boost_K(p)
    return [boost[:, a] for a in (0, 1)], [boost[:, b] for b in (2, 3)]


def boost_K_array(spatial: Sequence[float], mass: float) -> np.ndarray:
    """Numeric boost for arbitrary real momenta."""
    if mass <= 0:
        raise MasslessError(f"Dirac quantities need a positive mass, got {mass}")
    energy = float(np.sqrt(mass**2 + sum(c * c for c in spatial)))
    boost = sum(c * gamma_array(j) @ gamma_array(0) for j, c in enumerate(spatial, start=1))
    return np.sqrt(mass / (2 * (energy + mass))) * ((1 + energy / mass) * np.eye(4) + boost / mass)


def _boost_prefactor(p: OnShellMomentum) -> ScalarExpr:
    """``sqrt(m / (2 (E + m)))`` as an exact scalar.

    For irrational ``E`` this is ``sqrt(m / 2) (E - m) sqrt(E + m) / |p|**2``, one surd per energy.
    """
    m = Rational(p.mass)
    squared_norm = sum(Rational(c) ** 2 for c in p.spatial)
    prefactor, radical = radical_power(m**2 + squared_norm, 2)
    if not radical:
        return ScalarExpr.radical(m / (2 * (QQ.to_sympy(prefactor) + m)), 2)
    energy = ScalarExpr.from_radsum(radsum(prefactor, radical))
    shifted = radsum_add(radsum(prefactor, radical), radsum(m))
    return ScalarExpr.radical(m / 2, 2) * (energy - m) * ScalarExpr.surd(shifted) * (1 / squared_norm)


def boost_K_rows(p: OnShellMomentum) -> tuple[tuple[ScalarExpr, ...], ...]:
    """Exact rows of :func:`boost_K`, also for momenta with an irrational energy."""
    p.require_massive()
    m = Rational(p.mass)
    prefactor = _boost_prefactor(p)
    energy = ScalarExpr.from_sympy(p.energy)
    diagonal = (energy * (1 / m) + 1) * prefactor
    spatial = to_scalar_rows(_spatial_boost(p) / m)
    return tuple(
        tuple(spatial[r][c] * prefactor + (diagonal if r == c else ScalarExpr.zero()) for c in range(4))
        for r in range(4)
    )


def to_scalar_rows(matrix: ImmutableMatrix) -> tuple[tuple[ScalarExpr, ...], ...]:
    """Convert an exact matrix to rows of :class:`ScalarExpr`."""
    return tuple(tuple(ScalarExpr.from_sympy(matrix[r, c]) for c in range(matrix.cols)) for r in range(matrix.rows))
