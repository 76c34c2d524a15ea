# -*- coding: utf-8 -*-
"""Free quantum fields on a mode lattice.

A field is the lattice sum ``sum_p w(p) (exp(-i<p,x>) absorb + exp(+i<p,x>) emit)``
with ``w(p) = 1 / sqrt(2 p0)``. Conjugate fields carry ``+`` (bosons) or ``-``
(fermions) on the absorption term. Dirac fields are dressed with the boost
``K(p)`` and conjugate Dirac fields with its inverse. Massless sectors skip the
zero mode.
"""

__all__ = [
    "FIELD_SECTORS",
    "FieldExpr",
    "charge_conjugate_complex_field",
    "charge_conjugate_field",
    "complex_field",
    "conjugate_field",
    "d_basis",
    "dressed_dirac_operators",
    "equal_time_report",
    "field",
    "field_supercommutator",
    "gauge_momentum",
    "ghost_momentum",
    "pauli_jordan",
    "propagator_D",
    "sector_lattice",
    "supercommutator_matrix",
]

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Literal

from sympy import QQ, QQ_I

from gradedfields.exceptions import UnknownSectorError
from gradedfields.gamma import METRIC, OnShellMomentum, boost_K_rows, gamma
from gradedfields.graded import GradedExpr, OpGen, super_bracket
from gradedfields.lattice import MASSLESS_SECTORS, FieldPoint, ModeLattice
from gradedfields.lie import LieData
from gradedfields.report import IdentityResult
from gradedfields.scalar import Monomial, ScalarExpr, radsum_float

logger = logging.getLogger(__name__)

#: Sectors with a quantized free field.
FIELD_SECTORS = ("scalar", "fermion", "dirac", "gauge", "ghost")
#: Statistics sign: +1 for bosons, -1 for fermions.
_STATISTICS = {"scalar": 1, "fermion": -1, "dirac": -1, "gauge": 1, "ghost": -1}

Kind = Literal["field", "conjugate", "complex", "charge", "charge_complex"]


@dataclass(frozen=True)
class FieldExpr:
    """Field operator at a point, with the data it was built from."""

    sector: str
    component: int
    kind: Kind
    point: FieldPoint
    deriv: tuple[int, ...]
    lattice: ModeLattice
    operator: GradedExpr

    @property
    def odd(self) -> bool:
        """Whether the field is fermionic."""
        return _STATISTICS[self.sector] < 0

    def label(self) -> str:
        """Short printable name, e.g. ``conj(ghost,1,x),0``."""
        deriv = "".join(f",{d}" for d in self.deriv)
        return f"{self.kind}({self.sector},{self.component}){deriv}"

    def phases_match_species(self) -> bool:
        """Emission terms oscillate as ``exp(+i p0 t)``, absorption terms as ``exp(-i p0 t)``."""
        times = {variable for variable, _ in self.point.t if variable}
        if not times:
            return True
        for word, coefficient in self.operator.terms.items():
            (gen,) = word
            for monomial in coefficient.terms:
                frequency = sum(radsum_float(c) for v, c in monomial.phase if v in times)
                if (frequency > 0) != gen.emits:
                    return False
        return True


def sector_lattice(lattice: ModeLattice, sector: str) -> ModeLattice:
    """Modes a sector is expanded over; massless sectors drop the zero mode."""
    if sector in MASSLESS_SECTORS:
        return lattice.without_zero_mode()
    return lattice


def _check_sector(sector: str) -> None:
    if sector not in FIELD_SECTORS:
        raise UnknownSectorError(f"Unknown field sector {sector}")


def _plane_wave(
    lattice: ModeLattice, mode_id: int, sector: str, x: FieldPoint, sign: int, deriv: Sequence[int]
) -> ScalarExpr:
    """``w(p) exp(sign i <p,x>)`` differentiated along ``deriv``."""
    energy = lattice.energy(mode_id, sector)
    phase = x.pairing(energy, lattice.mode(mode_id).momentum, sign)
    value = lattice.weight(mode_id, sector) * ScalarExpr.exp_i(dict(phase))
    for index in deriv:
        if index not in (0, 1, 2, 3):
            raise IndexError(f"Spacetime index out of range: {index}")
        value = value * ScalarExpr.imaginary_unit() * sign * lattice.covariant(mode_id, sector, index)
    return value


@lru_cache(maxsize=256)
def _dirac_dressing(momentum: tuple[Any, Any, Any], mass: Any) -> tuple[Any, Any]:
    p = OnShellMomentum(tuple(QQ.to_sympy(c) for c in momentum), QQ.to_sympy(mass))  # type: ignore[arg-type]
    opposite = OnShellMomentum(tuple(-c for c in p.spatial), p.mass)  # type: ignore[arg-type]
    return boost_K_rows(p), boost_K_rows(opposite)


def _gauge_component(component: Any) -> int:
    if isinstance(component, tuple):
        internal, index = component
        return 4 * internal + index
    return int(component)


def _build(
    sector: str,
    component: Any,
    x: FieldPoint,
    lattice: ModeLattice,
    deriv: Sequence[int],
    kind: Kind,
) -> FieldExpr:
    _check_sector(sector)
    deriv = tuple(deriv)
    modes = sector_lattice(lattice, sector)
    statistics = _STATISTICS[sector]
    total = GradedExpr.zero()
    if sector == "gauge":
        component = _gauge_component(component)
        if kind != "field":
            raise UnknownSectorError("The gauge field is real and has no independent conjugate")
    if sector == "dirac":
        if component not in (0, 1, 2, 3):
            raise IndexError(f"Spinor index out of range: {component}")
    elif kind in ("complex", "charge", "charge_complex") and sector not in ("scalar", "fermion"):
        raise UnknownSectorError(f"{kind} fields are defined for the scalar sectors only, not {sector}")
    for mode in modes.modes:
        minus = _plane_wave(modes, mode.id, sector, x, -1, deriv)
        plus = _plane_wave(modes, mode.id, sector, x, 1, deriv)
        if sector == "dirac":
            boost, inverse = _dirac_dressing(mode.momentum, modes.mass("dirac"))
            for spin in (0, 1):
                if kind == "field":
                    total = total + GradedExpr.generator(
                        OpGen("dirac", "absorb", "upper", mode.id, spin), minus * boost[component][spin]
                    )
                    total = total + GradedExpr.generator(
                        OpGen("dirac", "emit", "upper", mode.id, spin), plus * boost[component][spin + 2]
                    )
                else:
                    total = total + GradedExpr.generator(
                        OpGen("dirac", "absorb", "lower", mode.id, spin), -minus * inverse[spin + 2][component]
                    )
                    total = total + GradedExpr.generator(
                        OpGen("dirac", "emit", "lower", mode.id, spin), plus * inverse[spin][component]
                    )
            continue
        if kind == "field":
            pairs = [
                (minus, OpGen(sector, "absorb", "upper", mode.id, component)),
                (plus, OpGen(sector, "emit", "lower" if sector == "gauge" else "upper", mode.id, component)),
            ]
        elif kind == "conjugate":
            pairs = [
                (minus * statistics, OpGen(sector, "absorb", "lower", mode.id, component)),
                (plus, OpGen(sector, "emit", "lower", mode.id, component)),
            ]
        elif kind == "complex":
            pairs = [
                (minus, OpGen(sector, "emit", "upper", mode.id, component)),
                (plus, OpGen(sector, "absorb", "upper", mode.id, component)),
            ]
        elif kind == "charge":
            pairs = [
                (plus, OpGen(sector, "absorb", "lower", mode.id, component)),
                (minus, OpGen(sector, "emit", "lower", mode.id, component)),
            ]
        else:
            pairs = [
                (plus, OpGen(sector, "emit", "lower", mode.id, component)),
                (minus, OpGen(sector, "absorb", "lower", mode.id, component)),
            ]
        for coefficient, gen in pairs:
            total = total + GradedExpr.generator(gen, coefficient)
    return FieldExpr(sector, component, kind, x, deriv, lattice, total)


def field(sector: str, component: Any, x: FieldPoint, lattice: ModeLattice, deriv: Sequence[int] = ()) -> FieldExpr:
    """Free field ``phi^component(x)``, optionally differentiated.

    :param component: internal index; spinor index for ``dirac``; ``(I, lambda)``
        or ``4 I + lambda`` for ``gauge``
    :param deriv: spacetime indices of the partial derivatives
    """
    return _build(sector, component, x, lattice, deriv, "field")


def conjugate_field(
    sector: str, component: Any, x: FieldPoint, lattice: ModeLattice, deriv: Sequence[int] = ()
) -> FieldExpr:
    """Conjugate field ``phibar_component(x)``; the gauge field is real and refused."""
    return _build(sector, component, x, lattice, deriv, "conjugate")


def complex_field(
    sector: str, component: Any, x: FieldPoint, lattice: ModeLattice, deriv: Sequence[int] = ()
) -> FieldExpr:
    """Complex-conjugate field ``phi^component*(x)`` of a scalar sector."""
    return _build(sector, component, x, lattice, deriv, "complex")


def charge_conjugate_field(
    sector: str, component: Any, x: FieldPoint, lattice: ModeLattice, deriv: Sequence[int] = ()
) -> FieldExpr:
    """Charge-conjugate field ``Cphi_component(x)`` of a scalar sector."""
    return _build(sector, component, x, lattice, deriv, "charge")


def charge_conjugate_complex_field(
    sector: str, component: Any, x: FieldPoint, lattice: ModeLattice, deriv: Sequence[int] = ()
) -> FieldExpr:
    """Field ``Cphi*_component(x)``; for bosons it coincides with the conjugate field."""
    return _build(sector, component, x, lattice, deriv, "charge_complex")


def field_supercommutator(f: FieldExpr, g: FieldExpr) -> ScalarExpr:
    """Scalar value of the super-bracket of two free fields.

    :raises LatticeMismatchError: when the fields live on different lattices
    """
    f.lattice.ensure_same(g.lattice)
    bracket = super_bracket(f.operator, g.operator)
    if not bracket.is_scalar():
        raise ValueError(f"Bracket of {f.label()} and {g.label()} is not a multiple of the unit")
    return bracket.scalar_part()


def supercommutator_matrix(fs: Sequence[FieldExpr], gs: Sequence[FieldExpr]) -> list[list[ScalarExpr]]:
    """Brackets of every pair, rows indexed by ``fs``."""
    return [[field_supercommutator(f, g) for g in gs] for f in fs]


def propagator_D(
    sign: int | str, x: FieldPoint, lattice: ModeLattice, sector: str = "scalar", deriv: Sequence[int] = ()
) -> ScalarExpr:
    """Return ``D+-(x) = +-sum_p exp(-+i<p,x>) / (2 p0)``, optionally differentiated.

    :param sign: ``+1``/``"+"`` or ``-1``/``"-"``
    """
    sign = 1 if sign in (1, "+") else -1
    modes = sector_lattice(lattice, sector)
    total = ScalarExpr.zero()
    for mode in modes.modes:
        wave = _plane_wave(modes, mode.id, sector, x, -sign, deriv)
        total = total + wave * modes.weight(mode.id, sector) * sign
    return total


def pauli_jordan(x: FieldPoint, lattice: ModeLattice, sector: str = "scalar", deriv: Sequence[int] = ()) -> ScalarExpr:
    """``D(x) = D+(x) + D-(x)``."""
    return propagator_D(1, x, lattice, sector, deriv) + propagator_D(-1, x, lattice, sector, deriv)


def _solve(value: ScalarExpr, basis: Sequence[tuple[str, ScalarExpr]]) -> dict[str, Any] | None:
    """Exact coefficients of ``value`` in the span of ``basis``, or ``None``."""
    rows: list[tuple[Monomial, dict[Monomial, Any], dict[str, Any]]] = []

    def reduce(vector: dict[Monomial, Any], combo: dict[str, Any], sign: int) -> None:
        for pivot, row, row_combo in rows:
            if pivot not in vector:
                continue
            factor = vector[pivot] / row[pivot]
            for key, entry in row.items():
                vector[key] = vector.get(key, QQ_I.zero) - factor * entry
                if not vector[key]:
                    del vector[key]
            for label, entry in row_combo.items():
                combo[label] = combo.get(label, QQ_I.zero) + sign * factor * entry

    for label, element in basis:
        vector = dict(element.terms)
        combo: dict[str, Any] = {label: QQ_I.one}
        reduce(vector, combo, -1)
        if vector:
            rows.append((min(vector, key=repr), vector, combo))
    vector = dict(value.terms)
    result: dict[str, Any] = {}
    reduce(vector, result, 1)
    if vector:
        return None
    return {label: c for label, c in result.items() if c}


def d_basis(value: ScalarExpr, x: FieldPoint, lattice: ModeLattice, sector: str = "scalar") -> str | None:
    """Render ``value`` as a combination of ``D+-`` and ``D+-_,lambda`` at ``x``; ``None`` if impossible."""
    basis = []
    for sign, mark in ((1, "+"), (-1, "-")):
        basis.append((f"D{mark}{x}", propagator_D(sign, x, lattice, sector)))
        for index in range(4):
            basis.append((f"D{mark}_,{index}{x}", propagator_D(sign, x, lattice, sector, (index,))))
    coefficients = _solve(value, basis)
    if coefficients is None:
        return None
    if not coefficients:
        return "0"
    order = [label for label, _ in basis]
    parts = []
    for label in sorted(coefficients, key=order.index):
        coefficient = coefficients[label]
        text = str(QQ_I.to_sympy(coefficient))
        parts.append(label if text == "1" else f"({text})*{label}")
    return " + ".join(parts)


def dressed_dirac_operators(lattice: ModeLattice, mode_id: int) -> tuple[list[GradedExpr], list[GradedExpr]]:
    """Spinor-frame particle operators ``a^alpha = K^alpha_A a^A`` and ``adag_alpha = Kinv^A_alpha adag_A``."""
    boost, inverse = _dirac_dressing(lattice.mode(mode_id).momentum, lattice.mass("dirac"))
    absorbers = []
    emitters = []
    for alpha in range(4):
        a = GradedExpr.zero()
        a_dag = GradedExpr.zero()
        for spin in (0, 1):
            a = a + GradedExpr.generator(OpGen("dirac", "absorb", "upper", mode_id, spin), boost[alpha][spin])
            a_dag = a_dag + GradedExpr.generator(OpGen("dirac", "emit", "lower", mode_id, spin), inverse[spin][alpha])
        absorbers.append(a)
        emitters.append(a_dag)
    return absorbers, emitters


def _normalized_metric(lie: LieData) -> Any:
    _, h = lie.metrics
    return h / h[0, 0]


def gauge_momentum(lie: LieData, mu: int, internal: int, x: FieldPoint, lattice: ModeLattice) -> GradedExpr:
    """Conjugate momentum of the gauge field in the Feynman gauge.

    ``Pi^mu_J = g^{mu nu} (-A_{J nu,0} + A_{J 0,nu} - c_{JKH} A^K_nu A^H_0) - g^{mu 0} g^{nu rho} A_{J rho,nu}``
    with indices of the algebra lowered by the normalized trace metric.
    """
    metric = _normalized_metric(lie)
    total = GradedExpr.zero()

    def lowered(index: int, deriv: Sequence[int]) -> GradedExpr:
        out = GradedExpr.zero()
        for k in range(lie.dim):
            if metric[internal, k]:
                entry = ScalarExpr.from_sympy(metric[internal, k])
                out = out + field("gauge", (k, index), x, lattice, deriv).operator * entry
        return out

    nu = mu
    total = total + (lowered(nu, (0,)) * -1 + lowered(0, (nu,))) * METRIC[mu]
    for k in range(lie.dim):
        for h in range(lie.dim):
            value = sum(metric[internal, l] * lie.constants[l][k][h] for l in range(lie.dim))
            if not value:
                continue
            product = field("gauge", (k, nu), x, lattice).operator * field("gauge", (h, 0), x, lattice).operator
            total = total - product * ScalarExpr.from_sympy(value) * METRIC[mu]
    if mu == 0:
        for rho in range(4):
            total = total - lowered(rho, (rho,)) * METRIC[rho]
    return total


def ghost_momentum(lie: LieData | None, internal: int, x: FieldPoint, lattice: ModeLattice) -> GradedExpr:
    """Momentum of the anti-ghost, ``Pi^I = -omega^I_{;0} = -(omega^I_{,0} + c^I_JH omega^J A^H_0)``.

    Without ``lie`` the gauge coupling is dropped and ``Pi^I = -omega^I_{,0}``.
    """
    total = -field("ghost", internal, x, lattice, (0,)).operator
    if lie is None:
        return total
    for j in range(lie.dim):
        for h in range(lie.dim):
            if not lie.constants[internal][j][h]:
                continue
            product = field("ghost", j, x, lattice).operator * field("gauge", (h, 0), x, lattice).operator
            total = total - product * lie.constant(internal, j, h)
    return total


def _check(identity: str, anchor: str, difference: GradedExpr) -> IdentityResult:
    return IdentityResult.symbolic(identity, anchor, difference)


def equal_time_report(lattice: ModeLattice, lie: LieData, internal_dim: int = 2) -> list[IdentityResult]:
    """Check the canonical equal-time super-commutation rules of every sector.

    The lattice is closed under ``p -> -p`` first; the spatial delta is the mode
    sum ``sum_p exp(i p . (x - y))`` over the modes of the sector.
    """
    if not lattice.is_symmetric():
        logger.info("Symmetrizing the lattice for equal-time checks")
        lattice = lattice.symmetrized()
    x = FieldPoint.symbolic("x")
    y = FieldPoint.symbolic("y", time_of=x)
    results: list[IdentityResult] = []
    unit = GradedExpr.scalar

    for sector in ("scalar", "fermion") if "scalar" in lattice.masses else ():
        delta = lattice.delta(x - y)
        for a in range(internal_dim):
            for b in range(internal_dim):
                same = a == b
                phi = field(sector, a, x, lattice).operator
                results.append(
                    _check(
                        f"{sector}: [phi^{a}(x), phibar_{b}(y)] = 0 at equal times",
                        "free fields / equal-time relations",
                        super_bracket(phi, conjugate_field(sector, b, y, lattice).operator),
                    )
                )
                expected = unit(delta * ScalarExpr.imaginary_unit()) if same else GradedExpr.zero()
                results.append(
                    _check(
                        f"{sector}: [phi^{a}(x), phibar_{b},0(y)] = i delta",
                        "conjugate momenta / canonical rules",
                        super_bracket(phi, conjugate_field(sector, b, y, lattice, (0,)).operator) - expected,
                    )
                )
                results.append(
                    _check(
                        f"{sector}: [phi^{a},0(x), phibar_{b}(y)] = -i delta",
                        "conjugate momenta / canonical rules",
                        super_bracket(
                            field(sector, a, x, lattice, (0,)).operator, conjugate_field(sector, b, y, lattice).operator
                        )
                        + expected,
                    )
                )

    if "dirac" in lattice.masses:
        delta = lattice.delta(x - y)
        mass = ScalarExpr.number(lattice.mass("dirac"))
        inverse_two_m = ScalarExpr.number(QQ(1) / (2 * lattice.mass("dirac")))
        psibar = [conjugate_field("dirac", alpha, x, lattice).operator for alpha in range(4)]
        psi = [field("dirac", beta, y, lattice).operator for beta in range(4)]
        gamma0 = gamma(0)
        for alpha in range(4):
            psibar_gamma0 = psibar[alpha] * int(gamma0[alpha, alpha])
            momentum = psibar_gamma0 * (mass * ScalarExpr.imaginary_unit() * 2)
            for beta in range(4):
                expected = delta * inverse_two_m if alpha == beta else ScalarExpr.zero()
                results.append(
                    _check(
                        f"dirac: {{(psibar gamma0)_{alpha}(x), psi^{beta}(y)}} = delta / 2m",
                        "canonical rules / dirac field",
                        super_bracket(psibar_gamma0, psi[beta]) - unit(expected),
                    )
                )
                expected = delta * ScalarExpr.imaginary_unit() if alpha == beta else ScalarExpr.zero()
                results.append(
                    _check(
                        f"dirac: {{Pi_{alpha}(x), psi^{beta}(y)}} = i delta",
                        "canonical rules / dirac field",
                        super_bracket(momentum, psi[beta]) - unit(expected),
                    )
                )

    massless = sector_lattice(lattice, "gauge")
    delta = massless.delta(x - y)
    i_delta = delta * ScalarExpr.imaginary_unit()
    for internal in range(lie.dim):
        for lam in range(4):
            a_field = field("gauge", (internal, lam), x, lattice).operator
            for other in range(lie.dim):
                for nu in range(4):
                    value = METRIC[lam] if (internal, lam) == (other, nu) else 0
                    results.append(
                        _check(
                            f"gauge: [A^{internal}_{lam}(x), A^{other}_{nu},0(y)] = i g delta",
                            "canonical rules / gauge field",
                            super_bracket(a_field, field("gauge", (other, nu), y, lattice, (0,)).operator)
                            - unit(i_delta * value),
                        )
                    )
                    results.append(
                        _check(
                            f"gauge: [A^{internal}_{lam}(x), A^{other}_{nu}(y)] = 0 at equal times",
                            "canonical rules / gauge field",
                            super_bracket(a_field, field("gauge", (other, nu), y, lattice).operator),
                        )
                    )
    momenta = {
        (mu, j): gauge_momentum(lie, mu, j, y, lattice) for mu in range(4) for j in range(lie.dim)
    }
    for internal in range(lie.dim):
        for lam in range(4):
            a_field = field("gauge", (internal, lam), x, lattice).operator
            for (mu, j), momentum in momenta.items():
                expected = -i_delta if (mu, j) == (lam, internal) else ScalarExpr.zero()
                results.append(
                    _check(
                        f"gauge: [A^{internal}_{lam}(x), Pi^{mu}_{j}(y)] = -i delta",
                        "canonical rules / gauge field",
                        super_bracket(a_field, momentum) - unit(expected),
                    )
                )

    for j in range(lie.dim):
        antighost = conjugate_field("ghost", j, x, lattice).operator
        antighost_0 = conjugate_field("ghost", j, x, lattice, (0,)).operator
        for i in range(lie.dim):
            expected = i_delta if i == j else ScalarExpr.zero()
            ghost = field("ghost", i, y, lattice).operator
            results.append(
                _check(
                    f"ghost: {{omegabar_{j},0(x), omega^{i}(y)}} = i delta",
                    "canonical rules / ghost fields",
                    super_bracket(antighost_0, ghost) - unit(expected),
                )
            )
            results.append(
                _check(
                    f"ghost: {{omegabar_{j}(x), Pi^{i}(y)}} = i delta",
                    "canonical rules / ghost fields",
                    super_bracket(antighost, ghost_momentum(lie, i, y, lattice)) - unit(expected),
                )
            )
            results.append(
                _check(
                    f"ghost: {{omegabar_{j}(x), omega^{i}(y)}} = 0 at equal times",
                    "canonical rules / ghost fields",
                    super_bracket(antighost, ghost),
                )
            )
            for lam in range(4):
                results.append(
                    _check(
                        f"ghost: [omegabar_{j}(x), A^{i}_{lam}(y)] = 0",
                        "canonical rules / ghost fields",
                        super_bracket(antighost, field("gauge", (i, lam), y, lattice).operator),
                    )
                )
    return results
