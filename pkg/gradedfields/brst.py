# -*- coding: utf-8 -*-
"""BRST symmetry of the gauge theory with matter, ghosts and the auxiliary field.

The theory has the coordinates ``psi^{alpha i}``, ``psibar_{alpha i}`` (odd),
``A^I_lambda`` (even), the ghost ``omega^I`` and anti-ghost ``omegabar_I``
(odd) and the auxiliary field ``n_I`` (even), with first and second jets.
Algebra indices are contracted with the Kronecker delta. The trace metric of
every built-in algebra is a multiple of it (``delta / 2`` for su2 with the
usual normalisation), so this only rescales the gauge and auxiliary terms;
:func:`gradedfields.lie.lower_index` applies the trace metric itself. The
spacetime metric is ``diag(+1, -1, -1, -1)``.
"""

__all__ = [
    "COORDINATE_NAMES",
    "DecompositionReport",
    "TheorySpec",
    "brst_S",
    "brst_components",
    "brst_current_equality",
    "brst_variation",
    "fp_current",
    "free_ghost_lagrangian",
    "ghost_lagrangian",
    "ghost_lagrangian_decompose",
    "matter_gauge_lagrangian",
    "noether_current",
    "on_shell",
    "variation",
]

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from sympy import QQ, eye

from gradedfields.exceptions import NotASymmetryError, UnknownCoordinateError
from gradedfields.fiber import FiberCoord, FiberPoly, horizontal_diff, left_deriv, substitute
from gradedfields.gamma import METRIC, gamma, to_scalar_rows
from gradedfields.lie import LieData
from gradedfields.scalar import ScalarExpr

logger = logging.getLogger(__name__)

#: Coordinate families with their parities.
COORDINATE_NAMES = {"psi": 1, "psibar": 1, "A": 0, "omega": 1, "omegabar": 1, "n": 0}

_HALF = ScalarExpr.number(QQ(1, 2))


@dataclass(frozen=True)
class TheorySpec:
    """Field content of the gauge theory over a Lie algebra.

    :param xi: gauge parameter, a formal symbol by default
    :param mass: Dirac mass, a formal symbol by default
    """

    lie: LieData
    xi: ScalarExpr = field(default_factory=lambda: ScalarExpr.symbol("xi"))
    mass: ScalarExpr = field(default_factory=lambda: ScalarExpr.symbol("m"))

    @property
    def dim(self) -> int:
        """Number of gauge generators."""
        return self.lie.dim

    @property
    def fiber_dim(self) -> int:
        """Dimension of the internal space of the matter field."""
        return self.lie.fiber_dim

    def coord(self, name: str, *index: int, jet: Sequence[int] = (), antifield: bool = False) -> FiberCoord:
        """Coordinate of the theory.

        :raises UnknownCoordinateError: for unknown names or out-of-range indices
        """
        if name not in COORDINATE_NAMES:
            raise UnknownCoordinateError(f"Unknown coordinate {name}")
        if not self._valid(name, index) or any(j not in (0, 1, 2, 3) for j in jet):
            raise UnknownCoordinateError(f"Index {index} jet {tuple(jet)} out of range for {name}")
        return FiberCoord(name, tuple(index), tuple(jet), antifield, COORDINATE_NAMES[name])

    def poly(self, name: str, *index: int, jet: Sequence[int] = ()) -> FiberPoly:
        """Coordinate as a polynomial."""
        return FiberPoly.coord(self.coord(name, *index, jet=jet))

    def _valid(self, name: str, index: Sequence[int]) -> bool:
        if name in ("psi", "psibar"):
            return len(index) == 2 and 0 <= index[0] < 4 and 0 <= index[1] < self.fiber_dim
        if name == "A":
            return len(index) == 2 and 0 <= index[0] < self.dim and 0 <= index[1] < 4
        return len(index) == 1 and 0 <= index[0] < self.dim

    def contains(self, c: FiberCoord) -> bool:
        """Whether ``c`` is a coordinate of this theory."""
        return (
            c.name in COORDINATE_NAMES
            and c.parity == COORDINATE_NAMES[c.name]
            and self._valid(c.name, c.index)
        )

    def base_coords(self) -> list[FiberCoord]:
        """All coordinates without jet indices."""
        coords = []
        for alpha in range(4):
            for i in range(self.fiber_dim):
                coords += [self.coord("psi", alpha, i), self.coord("psibar", alpha, i)]
        for big in range(self.dim):
            coords += [self.coord("A", big, lam) for lam in range(4)]
            coords += [self.coord(name, big) for name in ("omega", "omegabar", "n")]
        return coords

    @cached_property
    def _structure(self) -> dict[tuple[int, int, int], ScalarExpr]:
        return {
            (i, j, h): self.lie.constant(i, j, h)
            for i in range(self.dim)
            for j in range(self.dim)
            for h in range(self.dim)
            if self.lie.constants[i][j][h]
        }

    def structure(self) -> dict[tuple[int, int, int], ScalarExpr]:
        """Nonzero structure constants ``(I, J, H) -> c^I_JH``."""
        return self._structure

    def covariant_ghost(self, big: int, lam: int) -> FiberPoly:
        """``omega^I_{;lambda} = omega^I_{,lambda} + c^I_JH omega^J A^H_lambda``."""
        total = self.poly("omega", big, jet=(lam,))
        for (i, j, h), constant in self.structure().items():
            if i == big:
                total = total + self.poly("omega", j) * self.poly("A", h, lam) * constant
        return total

    def gauge_fixing(self, big: int) -> FiberPoly:
        """``f^I = g^{ll} A^I_{l,l}``."""
        total = FiberPoly.zero()
        for lam in range(4):
            total = total + self.poly("A", big, lam, jet=(lam,)) * METRIC[lam]
        return total

    def component(self, c: FiberCoord) -> FiberPoly:
        """BRST component ``S y`` of a coordinate without jet indices."""
        if c.antifield:
            return FiberPoly.zero()
        if c.name == "psi":
            alpha, i = c.index
            total = FiberPoly.zero()
            for big in range(self.dim):
                for j in range(self.fiber_dim):
                    entry = self.lie.generator_entry(big, i, j)
                    if entry:
                        total = total + self.poly("omega", big) * self.poly("psi", alpha, j) * entry
            return total
        if c.name == "psibar":
            alpha, i = c.index
            total = FiberPoly.zero()
            for big in range(self.dim):
                for j in range(self.fiber_dim):
                    entry = self.lie.generator_entry(big, j, i)
                    if entry:
                        total = total + self.poly("psibar", alpha, j) * self.poly("omega", big) * entry
            return total
        if c.name == "A":
            big, lam = c.index
            return self.covariant_ghost(big, lam)
        if c.name == "omega":
            (big,) = c.index
            total = FiberPoly.zero()
            for (i, j, h), constant in self.structure().items():
                if i == big:
                    total = total + self.poly("omega", j) * self.poly("omega", h) * (constant * _HALF)
            return total
        if c.name == "omegabar":
            return self.poly("n", *c.index)
        return FiberPoly.zero()


def variation(f: FiberPoly, components: Mapping[FiberCoord, FiberPoly]) -> FiberPoly:
    """Prolonged vertical derivation ``sum_c (v_c) d>_c f``.

    Jet coordinates transform with the total derivatives of the component of
    their base coordinate; coordinates missing from ``components`` are invariant.
    """
    total = FiberPoly.zero()
    for c in sorted(f.coords(), key=lambda item: item.key):
        base = c.base
        if base not in components:
            continue
        value = components[base]
        for index in c.jet:
            value = horizontal_diff(value, index)
        derivative = left_deriv(f, c)
        if value and derivative:
            total = total + value * derivative
    return total


def brst_components(theory: TheorySpec, coords: Sequence[FiberCoord]) -> dict[FiberCoord, FiberPoly]:
    """BRST components of the base coordinates of ``coords``."""
    components = {}
    for c in coords:
        if not theory.contains(c):
            raise UnknownCoordinateError(f"Coordinate {c} is not part of the theory")
        if c.antifield:
            continue
        components[c.base] = theory.component(c.base)
    return components


def brst_S(f: FiberPoly, theory: TheorySpec) -> FiberPoly:
    """BRST derivation ``S``; antifields are invariant.

    :raises UnknownCoordinateError: when ``f`` mentions a coordinate outside the theory
    """
    return variation(f, brst_components(theory, list(f.coords())))


brst_variation = brst_S


def ghost_lagrangian(theory: TheorySpec) -> FiberPoly:
    """``L_ghost = g^{ll} omegabar_{I,l} omega^I_{;l} + n_I (f^I + xi n^I / 2)``."""
    total = FiberPoly.zero()
    for big in range(theory.dim):
        for lam in range(4):
            total = total + theory.poly("omegabar", big, jet=(lam,)) * theory.covariant_ghost(big, lam) * METRIC[lam]
        total = total + theory.poly("n", big) * (
            theory.gauge_fixing(big) + theory.poly("n", big) * (theory.xi * _HALF)
        )
    return total


def free_ghost_lagrangian(theory: TheorySpec) -> FiberPoly:
    """``g^{ll} omegabar_{I,l} omega^I_{,l}``."""
    total = FiberPoly.zero()
    for big in range(theory.dim):
        for lam in range(4):
            total = total + theory.poly("omegabar", big, jet=(lam,)) * theory.poly("omega", big, jet=(lam,)) * (
                METRIC[lam]
            )
    return total


def _potential(theory: TheorySpec) -> FiberPoly:
    """``K = omegabar_I (f^I + xi n^I / 2)``."""
    total = FiberPoly.zero()
    for big in range(theory.dim):
        total = total + theory.poly("omegabar", big) * (
            theory.gauge_fixing(big) + theory.poly("n", big) * (theory.xi * _HALF)
        )
    return total


def _boundary(theory: TheorySpec) -> list[FiberPoly]:
    """Components ``M^l = g^{ll} omegabar_I omega^I_{;l}``."""
    components = []
    for lam in range(4):
        total = FiberPoly.zero()
        for big in range(theory.dim):
            total = total + theory.poly("omegabar", big) * theory.covariant_ghost(big, lam) * METRIC[lam]
        components.append(total)
    return components


def _total_divergence(components: Sequence[FiberPoly]) -> FiberPoly:
    total = FiberPoly.zero()
    for lam, component in enumerate(components):
        total = total + horizontal_diff(component, lam)
    return total


@dataclass(frozen=True)
class DecompositionReport:
    """``L_ghost`` next to ``S K + d_H M`` and their difference."""

    lagrangian: FiberPoly
    exact_part: FiberPoly
    divergence: FiberPoly
    residual: FiberPoly

    @property
    def xi_residual(self) -> FiberPoly:
        """Derivative of the residual with respect to ``xi``."""
        return self.residual.map_coefficients(lambda c: c.diff_symbol("xi"))

    @property
    def holds(self) -> bool:
        """Whether the decomposition is exact."""
        return self.residual.is_zero()


def ghost_lagrangian_decompose(theory: TheorySpec) -> DecompositionReport:
    """Split the ghost Lagrangian as ``S K + d_H M``."""
    lagrangian = ghost_lagrangian(theory)
    exact_part = brst_S(_potential(theory), theory)
    divergence = _total_divergence(_boundary(theory))
    residual = lagrangian - exact_part - divergence
    logger.debug("Ghost Lagrangian decomposition residual has %d terms", len(residual.terms))
    return DecompositionReport(lagrangian, exact_part, divergence, residual)


def _spinor_bilinear(theory: TheorySpec, matrix: Any, left: Any, right: Any) -> FiberPoly:
    """``sum left_{alpha i} matrix^alpha_beta right^{beta i}`` for polynomial-valued factories."""
    rows = to_scalar_rows(matrix)
    total = FiberPoly.zero()
    for alpha in range(4):
        for beta in range(4):
            entry = rows[alpha][beta]
            if not entry:
                continue
            for i in range(theory.fiber_dim):
                total = total + left(alpha, i) * right(beta, i) * entry
    return total


def _covariant_psi(theory: TheorySpec, lam: int) -> Any:
    def build(alpha: int, i: int) -> FiberPoly:
        total = theory.poly("psi", alpha, i, jet=(lam,))
        for big in range(theory.dim):
            for j in range(theory.fiber_dim):
                entry = theory.lie.generator_entry(big, i, j)
                if entry:
                    total = total - theory.poly("A", big, lam) * theory.poly("psi", alpha, j) * entry
        return total

    return build


def _covariant_psibar(theory: TheorySpec, lam: int) -> Any:
    def build(alpha: int, i: int) -> FiberPoly:
        total = theory.poly("psibar", alpha, i, jet=(lam,))
        for big in range(theory.dim):
            for j in range(theory.fiber_dim):
                entry = theory.lie.generator_entry(big, j, i)
                if entry:
                    total = total + theory.poly("A", big, lam) * theory.poly("psibar", alpha, j) * entry
        return total

    return build


def _field_strength(theory: TheorySpec, big: int, lam: int, nu: int) -> FiberPoly:
    """``F^I_{l n} = A^I_{n,l} - A^I_{l,n} - c^I_JH A^J_l A^H_n``."""
    total = theory.poly("A", big, nu, jet=(lam,)) - theory.poly("A", big, lam, jet=(nu,))
    for (i, j, h), constant in theory.structure().items():
        if i == big:
            total = total - theory.poly("A", j, lam) * theory.poly("A", h, nu) * constant
    return total


def matter_gauge_lagrangian(theory: TheorySpec) -> FiberPoly:
    """``L_0 = (i/2)(psibar gamma^l D_l psi - D_l psibar gamma^l psi) - m psibar psi - F F / 4``."""

    def psi(alpha: int, i: int) -> FiberPoly:
        return theory.poly("psi", alpha, i)

    def psibar(alpha: int, i: int) -> FiberPoly:
        return theory.poly("psibar", alpha, i)

    half_i = ScalarExpr.imaginary_unit() * _HALF
    total = FiberPoly.zero()
    for lam in range(4):
        kinetic = _spinor_bilinear(theory, gamma(lam), psibar, _covariant_psi(theory, lam)) - _spinor_bilinear(
            theory, gamma(lam), _covariant_psibar(theory, lam), psi
        )
        total = total + kinetic * half_i
    total = total - _spinor_bilinear(theory, eye(4), psibar, psi) * theory.mass
    quarter = ScalarExpr.number(QQ(-1, 4))
    for big in range(theory.dim):
        for lam in range(4):
            for nu in range(4):
                if lam == nu:
                    continue
                strength = _field_strength(theory, big, lam, nu)
                total = total + strength * strength * (quarter * METRIC[lam] * METRIC[nu])
    return total


def _current_terms(
    components: Mapping[FiberCoord, FiberPoly], lagrangian: FiberPoly, lam: int, order: int
) -> FiberPoly:
    total = FiberPoly.zero()
    for c, value in sorted(components.items(), key=lambda item: item[0].key):
        if not value:
            continue
        total = total + value * left_deriv(lagrangian, c.prolonged(lam))
        if order < 2:
            continue
        for mu in range(4):
            second = left_deriv(lagrangian, c.prolonged(lam).prolonged(mu))
            if not second:
                continue
            if lam != mu:
                second = second * _HALF
            total = total - value * horizontal_diff(second, mu) + horizontal_diff(value, mu) * second
    return total


def noether_current(
    components: Mapping[FiberCoord, FiberPoly],
    lagrangian: FiberPoly,
    order: int = 1,
    correction: Sequence[FiberPoly] | None = None,
) -> list[FiberPoly]:
    """Noether current of a vertical symmetry.

    For ``order=1`` the current is ``J^l = v^i d>^l_i L - N^l``; ``order=2`` adds
    ``-v^i d_m d>^{lm}_i L + d_m v^i d>^{lm}_i L`` (off-diagonal second jets are
    counted once, hence the factor one half).

    :param components: ``v`` on coordinates without jets
    :param correction: the components ``N^l`` with ``v L = d_l N^l``; zero when omitted
    :raises NotASymmetryError: when ``v L - d_l N^l`` does not vanish
    """
    if order not in (1, 2):
        raise ValueError(f"Only first- and second-order Lagrangians are supported, got order {order}")
    correction = list(correction) if correction is not None else [FiberPoly.zero()] * 4
    residual = variation(lagrangian, components) - _total_divergence(correction)
    if residual:
        raise NotASymmetryError("The variation is not a symmetry of the Lagrangian", residual)
    return [_current_terms(components, lagrangian, lam, order) - correction[lam] for lam in range(4)]


def fp_current(theory: TheorySpec, lagrangian: FiberPoly | None = None) -> list[FiberPoly]:
    """Current of the ghost-number symmetry ``omega -> omega``, ``omegabar -> -omegabar``."""
    components = {}
    for big in range(theory.dim):
        components[theory.coord("omega", big)] = theory.poly("omega", big)
        components[theory.coord("omegabar", big)] = -theory.poly("omegabar", big)
    return noether_current(components, lagrangian if lagrangian is not None else ghost_lagrangian(theory))


def on_shell(f: FiberPoly, coords: Sequence[FiberCoord]) -> FiberPoly:
    """Impose the wave equation ``y_{00} = sum_j y_{jj}`` on the given coordinates."""
    replacements = {}
    for c in coords:
        replacement = FiberPoly.zero()
        for j in (1, 2, 3):
            replacement = replacement + FiberPoly.coord(c.base.prolonged(j).prolonged(j))
        replacements[c.base.prolonged(0).prolonged(0)] = replacement
    return substitute(f, replacements)


def brst_current_equality(theory: TheorySpec) -> list[FiberPoly]:
    """Difference of the BRST currents of ``L_ghost`` and of ``S K``.

    ``L_ghost`` is first order with ``N = S M``; ``S K`` is second order and
    strictly invariant. The two currents agree, so every entry is zero.
    """
    lagrangian = ghost_lagrangian(theory)
    exact_part = brst_S(_potential(theory), theory)
    coords = [c for c in theory.base_coords() if c.name != "psi" and c.name != "psibar"]
    components = brst_components(theory, coords)
    first = noether_current(
        components, lagrangian, order=1, correction=[brst_S(m, theory) for m in _boundary(theory)]
    )
    second = noether_current(components, exact_part, order=2)
    return [a - b for a, b in zip(first, second, strict=True)]
