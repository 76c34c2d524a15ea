# -*- coding: utf-8 -*-
"""Finite momentum lattices and spacetime points.

Lattice momenta are stored as covariant spatial components ``p_j``, so that
``<p, x> = p0 * t + p_j * x^j``. The on-shell energy of a mode in a sector of
mass ``m`` is ``sqrt(m**2 + |p|**2)``.
"""

__all__ = [
    "FieldPoint",
    "ModeIndex",
    "ModeLattice",
    "SECTOR_MASS_KEYS",
]

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from sympy import QQ

from gradedfields.exceptions import LatticeMismatchError, MasslessError, UnknownSectorError
from gradedfields.scalar import Phase, RadicalSum, ScalarExpr, radical_power, radsum, radsum_add, radsum_scale, rational

logger = logging.getLogger(__name__)

#: Sectors whose quanta are massless by construction.
MASSLESS_SECTORS = frozenset({"gauge", "ghost"})
#: Sectors with a configurable mass.
SECTOR_MASS_KEYS = ("scalar", "dirac")
#: Sectors that share the mass of another sector.
MASS_ALIASES = {"fermion": "scalar"}

#: Rational linear form ``((variable, coefficient), ...)``; ``""`` is the constant 1.
Linear = tuple[tuple[str, Any], ...]


def _linear(mapping: Mapping[str, Any]) -> Linear:
    return tuple(sorted((k, rational(v)) for k, v in mapping.items() if rational(v)))


def _linear_add(left: Linear, right: Linear, scale: int = 1) -> Linear:
    merged = dict(left)
    for variable, value in right:
        merged[variable] = merged.get(variable, QQ(0)) + value * scale
    return tuple(sorted((k, v) for k, v in merged.items() if v))


@dataclass(frozen=True)
class ModeIndex:
    """One lattice mode: an id and its covariant spatial momentum."""

    id: int
    momentum: tuple[Any, Any, Any]

    @property
    def squared_norm(self) -> Any:
        """Return ``|p|**2``."""
        return sum((p * p for p in self.momentum), QQ(0))


@dataclass(frozen=True)
class FieldPoint:
    """Spacetime point whose coordinates are rational linear forms in symbolic variables."""

    t: Linear = ()
    x: tuple[Linear, Linear, Linear] = ((), (), ())

    @classmethod
    def symbolic(cls, name: str, *, time_of: "FieldPoint | None" = None) -> "FieldPoint":
        """Return the point with variables ``name0 .. name3``.

        :param time_of: share the time coordinate of another point (equal times)
        """
        t = time_of.t if time_of is not None else ((f"{name}0", QQ(1)),)
        return cls(t, tuple(((f"{name}{j}", QQ(1)),) for j in (1, 2, 3)))  # type: ignore[arg-type]

    @classmethod
    def origin(cls) -> "FieldPoint":
        """Return the origin."""
        return cls()

    @classmethod
    def at(cls, t: Any, x: Sequence[Any]) -> "FieldPoint":
        """Point with rational coordinates."""
        return cls(_linear({"": t}), tuple(_linear({"": c}) for c in x))  # type: ignore[arg-type]

    def __add__(self, other: "FieldPoint") -> "FieldPoint":
        return FieldPoint(
            _linear_add(self.t, other.t),
            tuple(_linear_add(a, b) for a, b in zip(self.x, other.x, strict=True)),  # type: ignore[arg-type]
        )

    def __sub__(self, other: "FieldPoint") -> "FieldPoint":
        return FieldPoint(
            _linear_add(self.t, other.t, -1),
            tuple(_linear_add(a, b, -1) for a, b in zip(self.x, other.x, strict=True)),  # type: ignore[arg-type]
        )

    def __neg__(self) -> "FieldPoint":
        return FieldPoint.origin() - self

    def at_time(self, t: Linear) -> "FieldPoint":
        """Same spatial position at another time."""
        return FieldPoint(t, self.x)

    def spatial(self) -> "FieldPoint":
        """Projection to the ``t = 0`` slice."""
        return FieldPoint((), self.x)

    def variables(self) -> set[str]:
        """Symbolic variables the point depends on."""
        return {v for form in (self.t, *self.x) for v, _ in form if v}

    def spatial_variables(self) -> set[str]:
        """Symbolic variables of the spatial coordinates."""
        return {v for form in self.x for v, _ in form if v}

    def pairing(self, energy: RadicalSum, momentum: Sequence[Any], sign: int = 1) -> Phase:
        """Return ``sign * (p0 * t + p_j * x^j)`` as a phase exponent."""
        merged: dict[str, RadicalSum] = {}
        for variable, weight in self.t:
            merged[variable] = radsum_add(merged.get(variable, ()), radsum_scale(energy, weight * sign))
        for component, form in zip(momentum, self.x, strict=True):
            for variable, weight in form:
                merged[variable] = radsum_add(merged.get(variable, ()), radsum(component * weight * sign))
        return tuple(sorted((k, v) for k, v in merged.items() if v))

    def spatial_pairing(self, momentum: Sequence[Any], sign: int = 1) -> Phase:
        """Return ``sign * p_j * x^j`` as a phase exponent."""
        return self.spatial().pairing((), momentum, sign)

    def __str__(self) -> str:
        def render(form: Linear) -> str:
            if not form:
                return "0"
            return " + ".join(f"{QQ.to_sympy(v)}*{k}" if k else str(QQ.to_sympy(v)) for k, v in form)

        return f"({render(self.t)}; {', '.join(render(c) for c in self.x)})"


@dataclass(frozen=True)
class ModeLattice:
    """Finite set of spatial momenta together with the sector masses."""

    modes: tuple[ModeIndex, ...]
    masses: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        seen_ids = set()
        seen_momenta = set()
        for mode in self.modes:
            if mode.id in seen_ids:
                raise ValueError(f"Duplicate mode id {mode.id}")
            if mode.momentum in seen_momenta:
                raise ValueError(f"Duplicate lattice momentum {mode.momentum}")
            seen_ids.add(mode.id)
            seen_momenta.add(mode.momentum)
        for sector, mass in self.masses.items():
            if sector in MASSLESS_SECTORS and rational(mass):
                raise ValueError(f"Sector {sector} is massless, got mass {mass}")

    @classmethod
    def build(cls, momenta: Iterable[Sequence[Any]], **masses: Any) -> "ModeLattice":
        """Build a lattice from momentum triples; ids follow the input order.

        :param masses: sector masses, e.g. ``scalar=1, dirac=4``
        """
        modes = []
        for n, momentum in enumerate(momenta):
            triple = tuple(rational(c) for c in momentum)
            if len(triple) != 3:
                raise ValueError(f"Momentum {momentum} is not a spatial triple")
            modes.append(ModeIndex(n, triple))  # type: ignore[arg-type]
        return cls(tuple(modes), {k: rational(v) for k, v in masses.items()})

    @classmethod
    def grid(cls, radius: int = 1, step: Any = 1, **masses: Any) -> "ModeLattice":
        """Cubic grid of ``(2 radius + 1)**3`` modes with spacing ``step``."""
        step = rational(step)
        span = range(-radius, radius + 1)
        return cls.build(((a * step, b * step, c * step) for a in span for b in span for c in span), **masses)

    def mode(self, mode_id: int) -> ModeIndex:
        """Look a mode up by id."""
        for mode in self.modes:
            if mode.id == mode_id:
                return mode
        raise KeyError(f"No mode with id {mode_id}")

    def mass(self, sector: str) -> Any:
        """Mass of a sector; massless sectors report 0."""
        if sector in MASSLESS_SECTORS:
            return QQ(0)
        sector = MASS_ALIASES.get(sector, sector)
        if sector not in self.masses:
            raise UnknownSectorError(f"No mass configured for sector {sector}")
        return self.masses[sector]

    def energy(self, mode_id: int, sector: str) -> RadicalSum:
        """On-shell energy ``p0`` of a mode in a sector."""
        mass = self.mass(sector)
        norm = mass * mass + self.mode(mode_id).squared_norm
        if not norm:
            raise MasslessError(f"Mode {mode_id} has zero energy in the massless sector {sector}")
        prefactor, radical = radical_power(norm, 2)
        return radsum(prefactor, radical)

    def energy_scalar(self, mode_id: int, sector: str) -> ScalarExpr:
        """On-shell energy as a scalar."""
        return ScalarExpr.from_radsum(self.energy(mode_id, sector))

    def inverse_energy(self, mode_id: int, sector: str) -> ScalarExpr:
        """Return ``1 / p0``."""
        return self.weight(mode_id, sector) ** 2 * 2

    def weight(self, mode_id: int, sector: str) -> ScalarExpr:
        """Field weight ``1 / sqrt(2 p0)``."""
        mass = self.mass(sector)
        norm = mass * mass + self.mode(mode_id).squared_norm
        if not norm:
            raise MasslessError(f"Mode {mode_id} has zero energy in the massless sector {sector}")
        return ScalarExpr.radical(2, -2) * ScalarExpr.radical(norm, -1)

    def covariant(self, mode_id: int, sector: str, index: int) -> ScalarExpr:
        """Covariant momentum component ``p_index`` (``p_0 = p0``)."""
        if index == 0:
            return self.energy_scalar(mode_id, sector)
        return ScalarExpr.number(self.mode(mode_id).momentum[index - 1])

    def mode_symbol(self, name: str, mode_id: int) -> ScalarExpr:
        """Value of a mode-indexed momentum symbol: ``p1``..``p3`` or ``p0:<sector>``."""
        if name in ("p1", "p2", "p3"):
            return ScalarExpr.number(self.mode(mode_id).momentum[int(name[1]) - 1])
        if name.startswith("p0:"):
            return self.energy_scalar(mode_id, name[3:])
        raise UnknownSectorError(f"Unknown momentum symbol {name}")

    def without_zero_mode(self) -> "ModeLattice":
        """Drop the zero momentum, as needed by massless sectors."""
        return ModeLattice(tuple(m for m in self.modes if any(m.momentum)), self.masses)

    def is_symmetric(self) -> bool:
        """Whether ``p`` in the lattice implies ``-p`` in the lattice."""
        momenta = {m.momentum for m in self.modes}
        return all(tuple(-c for c in m.momentum) in momenta for m in self.modes)

    def symmetrized(self) -> "ModeLattice":
        """Close the lattice under ``p -> -p``; new modes get fresh ids."""
        momenta = [m.momentum for m in self.modes]
        known = set(momenta)
        for momentum in list(momenta):
            mirrored = tuple(-c for c in momentum)
            if mirrored not in known:
                known.add(mirrored)
                momenta.append(mirrored)  # type: ignore[arg-type]
        return ModeLattice.build(momenta, **dict(self.masses))

    def ensure_same(self, other: "ModeLattice") -> None:
        """Raise :class:`LatticeMismatchError` unless both lattices coincide."""
        if self.modes != other.modes or dict(self.masses) != dict(other.masses):
            raise LatticeMismatchError("Objects were built on different mode lattices")

    def delta(self, difference: FieldPoint) -> ScalarExpr:
        """Lattice delta ``sum_p exp(i p . x)`` of a spatial difference."""
        total = ScalarExpr.zero()
        for mode in self.modes:
            total = total + ScalarExpr.exp_i(dict(difference.spatial_pairing(mode.momentum)))
        return total

    def describe(self) -> list[dict[str, Any]]:
        """Plain-data description of modes and energies per configured sector."""
        rows = []
        for mode in self.modes:
            row: dict[str, Any] = {"id": mode.id, "momentum": [str(QQ.to_sympy(c)) for c in mode.momentum]}
            for sector in sorted(self.masses):
                row[f"energy.{sector}"] = str(self.energy_scalar(mode.id, sector))
            rows.append(row)
        return rows
