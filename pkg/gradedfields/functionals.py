# -*- coding: utf-8 -*-
"""Normal-ordered quadratic functionals of the free fields.

Densities are products of free fields at the symbolic point ``x`` taken with
the modified rule. Integrating over space keeps the terms whose spatial phase
vanishes (lattice orthogonality), which leaves a combination of number
operators.
"""

__all__ = [
    "FunctionalResult",
    "dirac_charge",
    "fp_current_integral",
    "free_hamiltonian",
    "four_momentum",
    "ghost_hamiltonian_density",
    "normal_product",
    "number_operator",
    "spatial_integral",
    "split_stationary",
]

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from sympy import QQ, eye

from gradedfields.exceptions import NonIntegrablePhaseError, UnknownSectorError
from gradedfields.fields import conjugate_field, field, ghost_momentum, sector_lattice
from gradedfields.gamma import METRIC, gamma, to_scalar_rows
from gradedfields.graded import MODIFIED, GradedExpr, OpGen, koszul_product
from gradedfields.lattice import FieldPoint, ModeLattice
from gradedfields.scalar import ScalarExpr

logger = logging.getLogger(__name__)

_X = FieldPoint.symbolic("x")


@dataclass(frozen=True)
class FunctionalResult:
    """Reduced functional compared with its closed form.

    ``density`` is the integrand before the spatial integral. ``oscillating``
    holds the terms whose phase still depends on time; they count towards the
    residual unless ``oscillation_allowed``.
    """

    name: str
    density: GradedExpr
    reduced: GradedExpr
    target: GradedExpr
    oscillating: GradedExpr
    oscillation_allowed: bool = False

    @property
    def stationary(self) -> GradedExpr:
        """Time-independent part of the reduced form."""
        return self.reduced - self.oscillating

    @property
    def residual(self) -> GradedExpr:
        """Difference between the reduced form and the target."""
        if self.oscillation_allowed:
            return self.stationary - self.target
        return self.reduced - self.target

    @property
    def match(self) -> bool:
        """Whether the residual vanishes."""
        return self.residual.is_zero()


def normal_product(*factors: GradedExpr) -> GradedExpr:
    """Product of the factors under the modified rule."""
    result = GradedExpr.scalar(1)
    for factor in factors:
        result = koszul_product(result, factor, MODIFIED)
    return result


def spatial_integral(density: GradedExpr, x: FieldPoint = _X) -> GradedExpr:
    """Integrate a density over the spatial coordinates of ``x``.

    A term survives when its spatial phase vanishes and is dropped when the
    phase has a nonzero rational frequency.

    :raises NonIntegrablePhaseError: for irrational frequencies or plane waves
        over an unbound mode index
    """
    spatial = x.spatial_variables()

    def integrate(coefficient: ScalarExpr) -> ScalarExpr:
        kept = {}
        for monomial, value in coefficient.terms.items():
            if any(set(coords) & spatial for _, coords, _ in monomial.waves):
                raise NonIntegrablePhaseError(f"Plane wave over an unbound mode in {coefficient}")
            frequencies = [c for variable, c in monomial.phase if variable in spatial]
            if not frequencies:
                kept[monomial] = value
                continue
            if any(radical for c in frequencies for radical, _ in c):
                raise NonIntegrablePhaseError(f"Irrational spatial frequency in {coefficient}")
        return ScalarExpr(kept)

    return density.map_coefficients(integrate)


def split_stationary(e: GradedExpr, time_variables: Sequence[str] = ("x0",)) -> tuple[GradedExpr, GradedExpr]:
    """Return ``(stationary, oscillating)`` parts with respect to the given time variables."""
    times = set(time_variables)

    def select(coefficient: ScalarExpr, *, moving: bool) -> ScalarExpr:
        return ScalarExpr(
            {
                m: v
                for m, v in coefficient.terms.items()
                if any(variable in times for variable, _ in m.phase) == moving
            }
        )

    return (
        e.map_coefficients(lambda c: select(c, moving=False)),
        e.map_coefficients(lambda c: select(c, moving=True)),
    )


def number_operator(sector: str, mode: int, internal: int = 0, *, particle: bool = True) -> GradedExpr:
    """Return ``adag_i a^i`` for particles or ``adag^i a_i`` for antiparticles."""
    emits, absorbs = ("lower", "upper") if particle else ("upper", "lower")
    return GradedExpr.word(
        OpGen(sector, "emit", emits, mode, internal), OpGen(sector, "absorb", absorbs, mode, internal)
    )


def _result(
    name: str, density: GradedExpr, target: GradedExpr, *, oscillation_allowed: bool = False
) -> FunctionalResult:
    reduced = spatial_integral(density)
    _, oscillating = split_stationary(reduced)
    result = FunctionalResult(name, density, reduced, target, oscillating, oscillation_allowed)
    logger.debug("%s: %d terms, match=%s", name, len(reduced.terms), result.match)
    return result


def _dirac_bilinear(matrix: Any, left: Sequence[GradedExpr], right: Sequence[GradedExpr]) -> GradedExpr:
    """``left_alpha matrix^alpha_beta right^beta`` with the modified rule."""
    rows = to_scalar_rows(matrix)
    total = GradedExpr.zero()
    for alpha in range(4):
        for beta in range(4):
            entry = rows[alpha][beta]
            if entry:
                total = total + normal_product(left[alpha], right[beta]) * entry
    return total


def _psi(lattice: ModeLattice, deriv: Sequence[int] = ()) -> list[GradedExpr]:
    return [field("dirac", alpha, _X, lattice, deriv).operator for alpha in range(4)]


def _psibar(lattice: ModeLattice, deriv: Sequence[int] = ()) -> list[GradedExpr]:
    return [conjugate_field("dirac", alpha, _X, lattice, deriv).operator for alpha in range(4)]


def _dirac_target(lattice: ModeLattice, weight: Any, *, charge: bool) -> GradedExpr:
    inverse_two_m = ScalarExpr.number(QQ(1) / (2 * lattice.mass("dirac")))
    total = GradedExpr.zero()
    for mode in lattice.modes:
        for spin in (0, 1):
            particles = number_operator("dirac", mode.id, spin)
            antiparticles = number_operator("dirac", mode.id, spin, particle=False)
            pair = particles - antiparticles if charge else particles + antiparticles
            total = total + pair * (inverse_two_m * weight(mode.id))
    return total


def dirac_charge(lattice: ModeLattice) -> FunctionalResult:
    """Integrated ``psibar gamma^0 psi`` against ``sum_p (1/2m)(adag_A a^A - cdag^A c_A)``."""
    density = _dirac_bilinear(gamma(0), _psibar(lattice), _psi(lattice))
    target = _dirac_target(lattice, lambda _mode: ScalarExpr.one(), charge=True)
    return _result("dirac charge", density, target)


def _ghost_pair_density(lattice: ModeLattice, internal_dim: int, left: int, right: int) -> GradedExpr:
    """``sum_I omegabar_{I,left} omega^I_{,right}``."""
    total = GradedExpr.zero()
    for i in range(internal_dim):
        total = total + normal_product(
            conjugate_field("ghost", i, _X, lattice, (left,)).operator,
            field("ghost", i, _X, lattice, (right,)).operator,
        )
    return total


def _ghost_target(lattice: ModeLattice, internal_dim: int, weight: Any, *, antiparticle_sign: int = 1) -> GradedExpr:
    modes = sector_lattice(lattice, "ghost")
    total = GradedExpr.zero()
    for mode in modes.modes:
        for i in range(internal_dim):
            pair = number_operator("ghost", mode.id, i) + number_operator("ghost", mode.id, i, particle=False) * (
                antiparticle_sign
            )
            total = total + pair * weight(modes, mode.id)
    return total


def _ghost_p0(lattice: ModeLattice, internal_dim: int) -> GradedExpr:
    return _ghost_target(lattice, internal_dim, lambda modes, mode: modes.covariant(mode, "ghost", 0))


def ghost_hamiltonian_density(lattice: ModeLattice, internal_dim: int = 1) -> GradedExpr:
    """Legendre transform ``Pi^I omegabar_{I,0} + omegabar_{I,0} omega^I_{,0} - l`` of the free ghosts.

    ``l = g^{ll} omegabar_{I,l} omega^I_{,l}``; the momentum of ``omega^I`` is ``omegabar_{I,0}``
    and that of ``omegabar_I`` is :func:`~gradedfields.fields.ghost_momentum` without gauge coupling.
    """
    lagrangian = GradedExpr.zero()
    for lam in range(4):
        lagrangian = lagrangian + _ghost_pair_density(lattice, internal_dim, lam, lam) * METRIC[lam]
    density = -lagrangian
    for i in range(internal_dim):
        antighost_velocity = conjugate_field("ghost", i, _X, lattice, (0,)).operator
        density = density + normal_product(antighost_velocity, field("ghost", i, _X, lattice, (0,)).operator)
        density = density + normal_product(ghost_momentum(None, i, _X, lattice), antighost_velocity)
    return density


def four_momentum(sector: str, index: int, lattice: ModeLattice, internal_dim: int = 1) -> FunctionalResult:
    """Integrated canonical 4-momentum ``P_index`` of the Dirac or ghost sector.

    Dirac: ``(i/2)(-psibar_{,l} gamma^0 psi + psibar gamma^0 psi_{,l})`` against
    ``sum_p (p_l/2m)(adag_A a^A + cdag^A c_A)``. Ghost: ``T^0_l`` against
    ``sum_p p_l (gdag_I g^I + kdag^I k_I)``.

    :raises UnknownSectorError: for other sectors
    """
    if index not in (0, 1, 2, 3):
        raise IndexError(f"Spacetime index out of range: {index}")
    if sector == "dirac":
        half_i = ScalarExpr.imaginary_unit() * ScalarExpr.number(QQ(1, 2))
        density = (
            _dirac_bilinear(gamma(0), _psibar(lattice), _psi(lattice, (index,)))
            - _dirac_bilinear(gamma(0), _psibar(lattice, (index,)), _psi(lattice))
        ) * half_i
        target = _dirac_target(lattice, lambda mode: lattice.covariant(mode, "dirac", index), charge=False)
        return _result(f"dirac P_{index}", density, target)
    if sector == "ghost":
        if index == 0:
            density = _ghost_pair_density(lattice, internal_dim, 0, 0)
            for j in (1, 2, 3):
                density = density + _ghost_pair_density(lattice, internal_dim, j, j)
        else:
            density = _ghost_pair_density(lattice, internal_dim, 0, index) + _ghost_pair_density(
                lattice, internal_dim, index, 0
            )
        target = (
            _ghost_p0(lattice, internal_dim)
            if index == 0
            else _ghost_target(lattice, internal_dim, lambda modes, mode: modes.covariant(mode, "ghost", index))
        )
        return _result(f"ghost P_{index}", density, target)
    raise UnknownSectorError(f"No 4-momentum for sector {sector}")


def free_hamiltonian(sector: str, lattice: ModeLattice, internal_dim: int = 1) -> FunctionalResult:
    """Integrated free Hamiltonian density of a sector.

    The scalar sectors reduce to ``(1/2) sum_p p0 (adag^b a_b + adag_b a^b)`` for
    bosons and fermions alike; the Dirac and ghost Hamiltonians coincide with
    ``P_0``.
    """
    if sector in ("scalar", "fermion"):
        mass_squared = ScalarExpr.number(lattice.mass(sector) ** 2)
        density = GradedExpr.zero()
        for b in range(internal_dim):
            for index in range(4):
                density = density + normal_product(
                    conjugate_field(sector, b, _X, lattice, (index,)).operator,
                    field(sector, b, _X, lattice, (index,)).operator,
                )
            density = density + normal_product(
                conjugate_field(sector, b, _X, lattice).operator, field(sector, b, _X, lattice).operator
            ) * mass_squared
        density = density * ScalarExpr.number(QQ(1, 2))
        target = GradedExpr.zero()
        for mode in lattice.modes:
            energy = lattice.energy_scalar(mode.id, sector) * ScalarExpr.number(QQ(1, 2))
            for b in range(internal_dim):
                pair = number_operator(sector, mode.id, b) + number_operator(sector, mode.id, b, particle=False)
                target = target + pair * energy
        return _result(f"{sector} hamiltonian", density, target)
    if sector == "dirac":
        half_i = ScalarExpr.imaginary_unit() * ScalarExpr.number(QQ(1, 2))
        psi, psibar = _psi(lattice), _psibar(lattice)
        density = _dirac_bilinear(eye(4), psibar, psi) * ScalarExpr.number(lattice.mass("dirac"))
        for j in (1, 2, 3):
            density = density + (
                _dirac_bilinear(gamma(j), _psibar(lattice, (j,)), psi)
                - _dirac_bilinear(gamma(j), psibar, _psi(lattice, (j,)))
            ) * half_i
        target = _dirac_target(lattice, lambda mode: lattice.covariant(mode, "dirac", 0), charge=False)
        return _result("dirac hamiltonian", density, target)
    if sector == "ghost":
        density = ghost_hamiltonian_density(lattice, internal_dim)
        return _result("ghost hamiltonian", density, _ghost_p0(lattice, internal_dim))
    raise UnknownSectorError(f"No free Hamiltonian for sector {sector}")


def fp_current_integral(index: int, lattice: ModeLattice, internal_dim: int = 1) -> FunctionalResult:
    """Integrated Faddeev-Popov current ``g^{ll}(omegabar_{,l} omega - omegabar omega_{,l})``.

    The closed form is ``i g^{ll} sum_p (p_l / p0)(gdag_I g^I - kdag^I k_I)``.
    Spatial components on lattices closed under ``p -> -p`` keep pair terms
    oscillating as ``exp(2 i p0 t)``; they are reported separately.
    """
    if index not in (0, 1, 2, 3):
        raise IndexError(f"Spacetime index out of range: {index}")
    density = GradedExpr.zero()
    for i in range(internal_dim):
        omega = field("ghost", i, _X, lattice).operator
        omegabar = conjugate_field("ghost", i, _X, lattice).operator
        density = density + normal_product(conjugate_field("ghost", i, _X, lattice, (index,)).operator, omega)
        density = density - normal_product(omegabar, field("ghost", i, _X, lattice, (index,)).operator)
    density = density * METRIC[index]
    target = _ghost_target(
        lattice,
        internal_dim,
        lambda modes, mode: modes.covariant(mode, "ghost", index)
        * modes.inverse_energy(mode, "ghost")
        * ScalarExpr.imaginary_unit()
        * METRIC[index],
        antiparticle_sign=-1,
    )
    return _result(f"FP current J^{index}", density, target, oscillation_allowed=index != 0)
