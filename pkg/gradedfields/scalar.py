# -*- coding: utf-8 -*-
"""Exact scalar coefficients.

A :class:`ScalarExpr` is a finite sum of monomials with Gaussian-rational
coefficients (sympy's ``QQ_I``). A monomial collects

* a canonical radical ``prod p**(k/4)`` (``p`` prime, ``k`` in 1..3), which is
  how on-shell energies ``sqrt(m**2 + |p|**2)`` and the field weights
  ``1/sqrt(2 p0)`` stay exact,
* formal symbols with integer exponents (masses, the gauge parameter ``xi``,
  mode-indexed momentum components),
* Kronecker deltas over mode-index variables,
* a phase ``exp(i * sum_v c_v * v)`` that is linear in coordinate variables,
  with radical-valued coefficients,
* symbolic plane waves ``exp(i * n * <p_q, x>)`` whose momentum is a mode-index
  variable ``q`` not yet bound to a lattice mode,
* surds ``sqrt(r)`` of positive radical sums that do not denest, such as the
  ``sqrt(p0 + m)`` of a Dirac boost when ``p0`` is irrational. A surd occurs at
  most once per monomial; its square is multiplied back in as ``r``.

Radicals of distinct square-free parts are linearly independent over Q(i), so
equal canonical forms and equal values coincide.
"""

__all__ = [
    "Monomial",
    "ScalarExpr",
    "delta_contract",
    "gaussian",
    "radical_power",
    "rational",
    "scalar_add",
]

import cmath
import math
from collections.abc import Iterable, Iterator, Mapping
from fractions import Fraction
from typing import TYPE_CHECKING, Any, NamedTuple, Union

import sympy
from sympy import QQ, QQ_I, factorint
from zope.interface import implementer

from gradedfields.exceptions import UnboundIndexError, UnboundSymbolError
from gradedfields.interfaces import IScalar

if TYPE_CHECKING:
    from gradedfields.lattice import ModeLattice

#: Mode-index value: a concrete lattice id or a variable name.
Index = Union[int, str]
#: ``((prime, quarters), ...)`` sorted by prime.
Radical = tuple[tuple[int, int], ...]
#: Real radical-linear combination ``((radical, rational), ...)`` sorted by radical.
RadicalSum = tuple[tuple[Radical, Any], ...]
#: ``((variable, RadicalSum), ...)`` sorted by variable.
Phase = tuple[tuple[str, RadicalSum], ...]
#: A formal symbol, optionally carrying a mode index.
Atom = tuple[str, Union[Index, None]]
#: ``(mode index, spatial coordinate variables, multiplier)``.
Wave = tuple[Index, tuple[str, ...], int]
#: Radicands of the surds of a monomial, sorted and distinct.
Surds = tuple[RadicalSum, ...]


def rational(value: Any) -> Any:
    """Convert ``value`` to an element of sympy's ``QQ``.

    Accepts ints, strings such as ``"3/4"``, :class:`fractions.Fraction`,
    sympy rationals and ``QQ`` elements.
    """
    if QQ.of_type(value):
        return value
    if isinstance(value, bool):
        raise TypeError(f"Not a rational number: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        value = sympy.Rational(value.strip())
    if isinstance(value, sympy.Basic) and value.is_Rational:
        return QQ.from_sympy(value)
    raise TypeError(f"Not a rational number: {value!r}")


def gaussian(value: Any) -> Any:
    """Convert ``value`` to an element of sympy's ``QQ_I``."""
    if QQ_I.of_type(value):
        return value
    if isinstance(value, complex):
        raise TypeError(f"Floating complex numbers are not exact: {value!r}")
    if isinstance(value, sympy.Basic) and not value.is_Rational:
        return QQ_I.from_sympy(value)
    return QQ_I(rational(value), QQ(0))


def _qq_power(prime: int, exponent: int) -> Any:
    if exponent >= 0:
        return QQ(prime**exponent)
    return QQ(1, prime ** (-exponent))


def radical_power(base: Any, quarters: int) -> tuple[Any, Radical]:
    """Return ``base ** (quarters / 4)`` as ``(rational prefactor, radical)``.

    :param base: positive rational
    :param quarters: exponent in units of 1/4, may be negative
    """
    base = rational(base)
    if base <= 0:
        raise ValueError(f"Radicals need a positive base, got {base}")
    exponents: dict[int, int] = {}
    for prime, power in factorint(int(base.numerator)).items():
        exponents[int(prime)] = exponents.get(int(prime), 0) + int(power) * quarters
    for prime, power in factorint(int(base.denominator)).items():
        exponents[int(prime)] = exponents.get(int(prime), 0) - int(power) * quarters
    prefactor = QQ(1)
    parts = []
    for prime in sorted(exponents):
        whole, rest = divmod(exponents[prime], 4)
        prefactor *= _qq_power(prime, whole)
        if rest:
            parts.append((prime, rest))
    return prefactor, tuple(parts)


def _radical_product(left: Radical, right: Radical) -> tuple[Any, Radical]:
    if not left:
        return QQ(1), right
    if not right:
        return QQ(1), left
    merged = dict(left)
    for prime, quarters in right:
        merged[prime] = merged.get(prime, 0) + quarters
    prefactor = QQ(1)
    parts = []
    for prime in sorted(merged):
        whole, rest = divmod(merged[prime], 4)
        prefactor *= _qq_power(prime, whole)
        if rest:
            parts.append((prime, rest))
    return prefactor, tuple(parts)


def _radical_value(radical: Radical) -> float:
    return math.prod(prime ** (quarters / 4) for prime, quarters in radical)


def radsum(value: Any, radical: Radical = ()) -> RadicalSum:
    """Build a one-term radical sum ``value * radical``."""
    value = rational(value)
    if not value:
        return ()
    return ((radical, value),)


def radsum_add(left: RadicalSum, right: RadicalSum) -> RadicalSum:
    """Add two radical sums."""
    merged = dict(left)
    for radical, value in right:
        merged[radical] = merged.get(radical, QQ(0)) + value
    return tuple(sorted((radical, value) for radical, value in merged.items() if value))


def radsum_scale(value: RadicalSum, factor: Any) -> RadicalSum:
    """Multiply a radical sum by a rational."""
    factor = rational(factor)
    if not factor:
        return ()
    return tuple((radical, coefficient * factor) for radical, coefficient in value)


def radsum_float(value: RadicalSum) -> float:
    """Numeric value of a radical sum."""
    return sum(float(QQ.to_sympy(coefficient)) * _radical_value(radical) for radical, coefficient in value)


def _phase_add(left: Phase, right: Phase) -> Phase:
    if not left:
        return right
    if not right:
        return left
    merged = dict(left)
    for variable, coefficient in right:
        merged[variable] = radsum_add(merged.get(variable, ()), coefficient)
    return tuple(sorted((variable, coefficient) for variable, coefficient in merged.items() if coefficient))


def _index_key(index: Index) -> tuple[int, int, str]:
    if isinstance(index, int):
        return (0, index, "")
    return (1, 0, index)


def _normalize_deltas(pairs: Iterable[tuple[Index, Index]]) -> tuple[tuple[Index, Index], ...] | None:
    """Canonical delta list, or ``None`` when a delta of distinct lattice ids kills the term."""
    kept = set()
    for a, b in pairs:
        if a == b:
            continue
        if isinstance(a, int) and isinstance(b, int):
            return None
        kept.add((a, b) if _index_key(a) <= _index_key(b) else (b, a))
    return tuple(sorted(kept, key=lambda pair: (_index_key(pair[0]), _index_key(pair[1]))))


def _atom_key(atom: Atom) -> tuple[str, tuple[int, int, str]]:
    name, index = atom
    return (name, (-1, 0, "") if index is None else _index_key(index))


def _merge_atoms(
    left: tuple[tuple[Atom, int], ...], right: tuple[tuple[Atom, int], ...]
) -> tuple[tuple[Atom, int], ...]:
    if not left:
        return right
    if not right:
        return left
    merged = dict(left)
    for atom, exponent in right:
        merged[atom] = merged.get(atom, 0) + exponent
    return tuple(sorted(((a, e) for a, e in merged.items() if e), key=lambda item: _atom_key(item[0])))


def _merge_waves(left: tuple[Wave, ...], right: tuple[Wave, ...]) -> tuple[Wave, ...]:
    if not left:
        return right
    if not right:
        return left
    merged: dict[tuple[Index, tuple[str, ...]], int] = {}
    for index, coords, multiplier in left + right:
        merged[(index, coords)] = merged.get((index, coords), 0) + multiplier
    return tuple(
        sorted(
            ((index, coords, n) for (index, coords), n in merged.items() if n),
            key=lambda wave: (_index_key(wave[0]), wave[1]),
        )
    )


def _merge_surds(left: Surds, right: Surds) -> tuple[Surds, Surds]:
    """Merged surds and the radicands that met their twin, i.e. were squared."""
    if not left:
        return right, ()
    if not right:
        return left, ()
    squared = tuple(r for r in right if r in left)
    kept = tuple(sorted(r for r in (*left, *right) if r not in squared))
    return kept, squared


class Monomial(NamedTuple):
    """Key of a :class:`ScalarExpr` term."""

    radical: Radical = ()
    atoms: tuple[tuple[Atom, int], ...] = ()
    deltas: tuple[tuple[Index, Index], ...] = ()
    phase: Phase = ()
    waves: tuple[Wave, ...] = ()
    surds: Surds = ()

    def times(self, other: "Monomial") -> tuple[Any, "Monomial", Surds] | None:
        """Product of two monomials as ``(rational factor, monomial, squared radicands)``.

        Returns ``None`` if the product vanishes. The squared radicands still have to be
        multiplied into the term.
        """
        deltas = _normalize_deltas(self.deltas + other.deltas) if other.deltas else self.deltas
        if deltas is None:
            return None
        factor, radical = _radical_product(self.radical, other.radical)
        surds, squared = _merge_surds(self.surds, other.surds)
        monomial = Monomial(
            radical,
            _merge_atoms(self.atoms, other.atoms),
            deltas,
            _phase_add(self.phase, other.phase),
            _merge_waves(self.waves, other.waves),
            surds,
        )
        return factor, monomial, squared

    def indices(self) -> set[Index]:
        """Mode-index variables mentioned anywhere in the monomial."""
        found: set[Index] = set()
        for a, b in self.deltas:
            found.update(x for x in (a, b) if isinstance(x, str))
        for (_, index), _exponent in self.atoms:
            if isinstance(index, str):
                found.add(index)
        for index, _coords, _n in self.waves:
            if isinstance(index, str):
                found.add(index)
        return found


_ONE = Monomial()


def _render_rational(value: Any) -> str:
    return str(QQ.to_sympy(value))


def _render_radsum(value: RadicalSum) -> str:
    parts = []
    for radical, coefficient in value:
        text = _render_rational(coefficient)
        if radical:
            text = f"{text}*{_render_radical(radical)}"
        parts.append(text)
    return " + ".join(parts)


def _render_radical(radical: Radical) -> str:
    return "*".join(f"{prime}**({quarters}/4)" for prime, quarters in radical)


def _render_monomial(monomial: Monomial) -> str:
    factors = []
    if monomial.radical:
        factors.append(_render_radical(monomial.radical))
    for (name, index), exponent in monomial.atoms:
        text = name if index is None else f"{name}[{index}]"
        factors.append(text if exponent == 1 else f"{text}**{exponent}")
    for a, b in monomial.deltas:
        factors.append(f"delta({a},{b})")
    if monomial.phase:
        exponent = " + ".join(
            f"({_render_radsum(c)})*{v}" if v else f"({_render_radsum(c)})" for v, c in monomial.phase
        )
        factors.append(f"exp(I*({exponent}))")
    for index, coords, multiplier in monomial.waves:
        factors.append(f"exp({multiplier}*I*<p[{index}],({','.join(coords)})>)")
    for radicand in monomial.surds:
        factors.append(f"sqrt({_render_radsum(radicand)})")
    return "*".join(factors)


@implementer(IScalar)
class ScalarExpr:
    """Immutable exact scalar in canonical form."""

    __slots__ = ("_hash", "_terms")

    def __init__(self, terms: Mapping[Monomial, Any] | None = None) -> None:
        self._terms: dict[Monomial, Any] = {key: value for key, value in (terms or {}).items() if value}
        self._hash: int | None = None

    # construction helpers

    @classmethod
    def zero(cls) -> "ScalarExpr":
        """Return the empty sum."""
        return cls()

    @classmethod
    def one(cls) -> "ScalarExpr":
        """Return the unit."""
        return cls({_ONE: QQ_I.one})

    @classmethod
    def number(cls, value: Any) -> "ScalarExpr":
        """Return a constant (int, rational, Gaussian rational or sympy number)."""
        return cls({_ONE: gaussian(value)})

    @classmethod
    def imaginary_unit(cls) -> "ScalarExpr":
        """Return ``i``."""
        return cls({_ONE: QQ_I(QQ(0), QQ(1))})

    @classmethod
    def symbol(cls, name: str, index: Index | None = None, exponent: int = 1) -> "ScalarExpr":
        """Return a formal symbol raised to an integer power."""
        if not exponent:
            return cls.one()
        return cls({Monomial(atoms=(((name, index), exponent),)): QQ_I.one})

    @classmethod
    def delta(cls, a: Index, b: Index) -> "ScalarExpr":
        """Return the Kronecker delta of two mode indices."""
        deltas = _normalize_deltas([(a, b)])
        if deltas is None:
            return cls.zero()
        return cls({Monomial(deltas=deltas): QQ_I.one})

    @classmethod
    def radical(cls, base: Any, quarters: int) -> "ScalarExpr":
        """Return ``base ** (quarters / 4)`` for a positive rational base."""
        prefactor, radical = radical_power(base, quarters)
        return cls({Monomial(radical=radical): QQ_I(prefactor, QQ(0))})

    @classmethod
    def from_radsum(cls, value: RadicalSum) -> "ScalarExpr":
        """Lift a real radical sum to a scalar."""
        return cls({Monomial(radical=radical): QQ_I(coefficient, QQ(0)) for radical, coefficient in value})

    @classmethod
    def surd(cls, radicand: RadicalSum) -> "ScalarExpr":
        """Return ``sqrt(radicand)`` for a positive radical sum.

        Rational radicands and single radicals with even quarters become radicals;
        anything else is kept as a surd scaled to a unit leading coefficient.
        """
        if radsum_float(radicand) <= 0:
            raise ValueError(f"Surds need a positive radicand, got {_render_radsum(radicand)}")
        if len(radicand) == 1 and all(quarters % 2 == 0 for _, quarters in radicand[0][0]):
            radical, coefficient = radicand[0]
            value = cls.radical(coefficient, 2)
            for prime, quarters in radical:
                value = value * cls.radical(prime, quarters // 2)
            return value
        lead = abs(radicand[0][1])
        unit = radsum_scale(radicand, QQ(1) / lead)
        return cls.radical(lead, 2) * cls({Monomial(surds=(unit,)): QQ_I.one})

    @classmethod
    def exp_i(cls, phase: Mapping[str, RadicalSum]) -> "ScalarExpr":
        """Return ``exp(i * sum_v phase[v] * v)``; the empty variable name stands for the constant 1."""
        canonical = _phase_add((), tuple(sorted((v, c) for v, c in phase.items() if c)))
        return cls({Monomial(phase=canonical): QQ_I.one})

    @classmethod
    def wave(cls, index: Index, coords: tuple[str, ...], multiplier: int = 1) -> "ScalarExpr":
        """Return the symbolic plane wave ``exp(i * multiplier * p[index] . coords)``."""
        if not multiplier:
            return cls.one()
        return cls({Monomial(waves=((index, tuple(coords), multiplier),)): QQ_I.one})

    @classmethod
    def from_sympy(cls, expr: Any) -> "ScalarExpr":
        """Convert a sympy expression built from rationals, ``I``, rational radicals and symbols."""
        expr = sympy.expand(sympy.sympify(expr))
        total = cls.zero()
        for term in sympy.Add.make_args(expr):
            coefficient, rest = term.as_coeff_Mul()
            if not coefficient.is_Rational:
                raise TypeError(f"Inexact coefficient in {term}")
            value = cls.number(coefficient)
            for factor in sympy.Mul.make_args(rest):
                if factor is sympy.S.One:
                    continue
                if factor is sympy.I:
                    value = value * cls.imaginary_unit()
                elif factor.is_Symbol:
                    value = value * cls.symbol(factor.name)
                elif factor.is_Pow and factor.base.is_Symbol and factor.exp.is_Integer:
                    value = value * cls.symbol(factor.base.name, exponent=int(factor.exp))
                elif factor.is_Pow and factor.base.is_Rational and (4 * factor.exp).is_Integer:
                    value = value * cls.radical(factor.base, int(4 * factor.exp))
                else:
                    raise TypeError(f"Cannot represent {factor} exactly")
            total = total + value
        return total

    @classmethod
    def coerce(cls, value: Any) -> "ScalarExpr":
        """Return ``value`` as a :class:`ScalarExpr`."""
        if isinstance(value, ScalarExpr):
            return value
        if isinstance(value, sympy.Basic) and not value.is_Number and value != sympy.I:
            return cls.from_sympy(value)
        return cls.number(value)

    # inspection

    @property
    def terms(self) -> Mapping[Monomial, Any]:
        """Read-only view of ``monomial -> coefficient``."""
        return self._terms

    def items(self) -> Iterator[tuple[Monomial, Any]]:
        """Iterate terms in a deterministic order."""
        return iter(sorted(self._terms.items(), key=lambda item: _render_monomial(item[0])))

    def is_zero(self) -> bool:
        """Whether the expression is the empty sum."""
        return not self._terms

    def is_constant(self) -> bool:
        """Whether the expression is a plain Gaussian rational."""
        return all(key == _ONE for key in self._terms)

    def constant(self) -> Any:
        """Return the Gaussian-rational value of a constant expression."""
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(_ONE, QQ_I.zero)

    def indices(self) -> set[Index]:
        """Mode-index variables occurring in any term."""
        found: set[Index] = set()
        for key in self._terms:
            found |= key.indices()
        return found

    def variables(self) -> set[str]:
        """Coordinate variables occurring in phases."""
        return {variable for key in self._terms for variable, _ in key.phase}

    def has_symbol(self, name: str) -> bool:
        """Whether a formal symbol of this name occurs."""
        return any(atom[0] == name for key in self._terms for atom, _ in key.atoms)

    # arithmetic

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: Any) -> "ScalarExpr":
        other = ScalarExpr.coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        merged = dict(self._terms)
        for key, value in other._terms.items():
            merged[key] = merged.get(key, QQ_I.zero) + value
        return ScalarExpr(merged)

    __radd__ = __add__

    def __neg__(self) -> "ScalarExpr":
        return ScalarExpr({key: -value for key, value in self._terms.items()})

    def __sub__(self, other: Any) -> "ScalarExpr":
        return self + (-ScalarExpr.coerce(other))

    def __rsub__(self, other: Any) -> "ScalarExpr":
        return ScalarExpr.coerce(other) - self

    def __mul__(self, other: Any) -> "ScalarExpr":
        other = ScalarExpr.coerce(other)
        product: dict[Monomial, Any] = {}
        for key_a, value_a in self._terms.items():
            for key_b, value_b in other._terms.items():
                squared: Surds = ()
                if key_b == _ONE:
                    factor, key = QQ(1), key_a
                elif key_a == _ONE:
                    factor, key = QQ(1), key_b
                else:
                    result = key_a.times(key_b)
                    if result is None:
                        continue
                    factor, key, squared = result
                value = value_a * value_b * QQ_I(factor, QQ(0))
                if not squared:
                    product[key] = product.get(key, QQ_I.zero) + value
                    continue
                term = ScalarExpr({key: value})
                for radicand in squared:
                    term = term * ScalarExpr.from_radsum(radicand)
                for extra_key, extra_value in term._terms.items():
                    product[extra_key] = product.get(extra_key, QQ_I.zero) + extra_value
        return ScalarExpr(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "ScalarExpr":
        if exponent < 0:
            raise ValueError("Only non-negative integer powers are supported")
        result = ScalarExpr.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ScalarExpr):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) or QQ.of_type(other) or QQ_I.of_type(other):
            return self._terms == ScalarExpr.number(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"ScalarExpr({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for key, value in self.items():
            coefficient = str(QQ_I.to_sympy(value))
            body = _render_monomial(key)
            if not body:
                parts.append(coefficient)
            elif coefficient == "1":
                parts.append(body)
            else:
                parts.append(f"({coefficient})*{body}")
        return " + ".join(parts)

    # transformations

    def map_monomials(self, transform: Any) -> "ScalarExpr":
        """Rebuild from ``transform(monomial) -> ScalarExpr`` applied per term."""
        total = ScalarExpr.zero()
        for key, value in self._terms.items():
            total = total + ScalarExpr({_ONE: value}) * transform(key)
        return total

    def conjugate(self) -> "ScalarExpr":
        """Complex conjugate; formal symbols and mode indices are real, phases flip sign."""
        conjugated: dict[Monomial, Any] = {}
        for key, value in self._terms.items():
            phase = tuple((v, radsum_scale(c, -1)) for v, c in key.phase)
            waves = tuple((index, coords, -n) for index, coords, n in key.waves)
            new_key = key._replace(phase=phase, waves=waves)
            conjugated[new_key] = conjugated.get(new_key, QQ_I.zero) + QQ_I(value.x, -value.y)
        return ScalarExpr(conjugated)

    def substitute_variables(self, substitution: Mapping[str, Mapping[str, Any]]) -> "ScalarExpr":
        """Substitute coordinate variables in phases by rational linear forms.

        :param substitution: ``variable -> {variable: rational}``; the empty name is the constant 1
        """
        result: dict[Monomial, Any] = {}
        for key, value in self._terms.items():
            phase: Phase = ()
            for variable, coefficient in key.phase:
                if variable not in substitution:
                    phase = _phase_add(phase, ((variable, coefficient),))
                    continue
                for target, weight in substitution[variable].items():
                    scaled = radsum_scale(coefficient, weight)
                    if scaled:
                        phase = _phase_add(phase, ((target, scaled),))
            new_key = key._replace(phase=phase)
            result[new_key] = result.get(new_key, QQ_I.zero) + value
        return ScalarExpr(result)

    def diff_symbol(self, name: str) -> "ScalarExpr":
        """Partial derivative with respect to an unindexed formal symbol."""
        result: dict[Monomial, Any] = {}
        for key, value in self._terms.items():
            atoms = dict(key.atoms)
            exponent = atoms.get((name, None), 0)
            if not exponent:
                continue
            atoms[(name, None)] = exponent - 1
            new_key = key._replace(atoms=_merge_atoms((), tuple((a, e) for a, e in atoms.items() if e)))
            result[new_key] = result.get(new_key, QQ_I.zero) + value * exponent
        return ScalarExpr(result)

    def subs_symbol(self, name: str, value: Any) -> "ScalarExpr":
        """Replace an unindexed formal symbol by a scalar value."""
        replacement = ScalarExpr.coerce(value)

        def transform(key: Monomial) -> ScalarExpr:
            atoms = dict(key.atoms)
            exponent = atoms.pop((name, None), 0)
            rest = ScalarExpr({key._replace(atoms=_merge_atoms((), tuple(atoms.items()))): QQ_I.one})
            if exponent < 0:
                raise ValueError(f"Cannot substitute {name} in a negative power")
            return rest * replacement**exponent

        return self.map_monomials(transform)

    def substitute_index(self, index: str, value: Index, lattice: "ModeLattice | None" = None) -> "ScalarExpr":
        """Replace a mode-index variable; concrete lattice ids evaluate momentum symbols and waves.

        :param lattice: needed when ``value`` is a lattice id and the expression carries
            mode-indexed symbols or waves
        """

        def transform(key: Monomial) -> ScalarExpr:
            deltas = _normalize_deltas((value if a == index else a, value if b == index else b) for a, b in key.deltas)
            if deltas is None:
                return ScalarExpr.zero()
            out = ScalarExpr({Monomial(radical=key.radical, deltas=deltas, phase=key.phase, surds=key.surds): QQ_I.one})
            for (name, atom_index), exponent in key.atoms:
                if atom_index == index:
                    if isinstance(value, int) and lattice is not None:
                        out = out * _atom_power(lattice.mode_symbol(name, value), exponent)
                        continue
                    atom_index = value
                out = out * ScalarExpr.symbol(name, atom_index, exponent)
            for wave_index, coords, multiplier in key.waves:
                if wave_index == index:
                    if isinstance(value, int) and lattice is not None:
                        momentum = lattice.mode(value).momentum
                        out = out * ScalarExpr.exp_i(
                            {c: radsum(p * multiplier) for c, p in zip(coords, momentum, strict=True)}
                        )
                        continue
                    wave_index = value
                out = out * ScalarExpr.wave(wave_index, coords, multiplier)
            return out

        return self.map_monomials(transform)

    def to_complex(self, bindings: Mapping[str, Any] | None = None) -> complex:
        """Numeric value.

        :param bindings: values of formal symbols (``"m"``, ``"E[q]"``) and phase variables
        """
        bindings = bindings or {}
        total = 0j
        for key, value in self._terms.items():
            number = complex(float(QQ.to_sympy(value.x)), float(QQ.to_sympy(value.y)))
            number *= _radical_value(key.radical)
            for radicand in key.surds:
                number *= math.sqrt(radsum_float(radicand))
            for (name, index), exponent in key.atoms:
                label = name if index is None else f"{name}[{index}]"
                if label not in bindings:
                    raise UnboundSymbolError(f"No value bound for symbol {label}")
                number *= complex(bindings[label]) ** exponent
            if key.deltas:
                raise UnboundSymbolError(f"Unsifted delta factors {key.deltas}")
            if key.waves:
                raise UnboundSymbolError(f"Unbound plane waves {key.waves}")
            angle = 0.0
            for variable, coefficient in key.phase:
                if variable == "":
                    angle += radsum_float(coefficient)
                    continue
                if variable not in bindings:
                    raise UnboundSymbolError(f"No value bound for coordinate {variable}")
                angle += radsum_float(coefficient) * float(bindings[variable])
            total += number * cmath.exp(1j * angle)
        return total


def _atom_power(value: ScalarExpr, exponent: int) -> ScalarExpr:
    if exponent >= 0:
        return value**exponent
    constant = value.constant()
    return ScalarExpr.number(QQ_I.one / constant) ** (-exponent)


def scalar_add(a: ScalarExpr, b: ScalarExpr) -> ScalarExpr:
    """Canonical sum of two scalars."""
    return a + b


def delta_contract(
    e: ScalarExpr,
    idx: str,
    lattice: "ModeLattice",
    *,
    allow_sum: bool = True,
    sift_only: bool = False,
) -> ScalarExpr:
    """Sum ``e`` over the mode-index variable ``idx`` running through ``lattice``.

    Terms carrying ``delta(idx, q)`` are sifted (``idx -> q``). Other terms that
    mention ``idx`` are summed explicitly over the lattice modes, and terms that
    do not mention it are multiplied by the number of modes.

    :param allow_sum: when false, a term whose plane waves depend on ``idx``
        without a binding delta raises :class:`UnboundIndexError`
    :param sift_only: leave terms that do not mention ``idx`` untouched
    """
    total = ScalarExpr.zero()
    for key, value in e.terms.items():
        term = ScalarExpr({key: value})
        binding = next((pair for pair in key.deltas if idx in pair), None)
        if binding is not None:
            partner = binding[1] if binding[0] == idx else binding[0]
            bound = ScalarExpr({key._replace(deltas=tuple(d for d in key.deltas if d != binding)): value})
            total = total + bound.substitute_index(idx, partner, lattice)
        elif idx in key.indices():
            if not allow_sum and any(wave[0] == idx for wave in key.waves):
                raise UnboundIndexError(f"Index {idx} appears in a plane wave with no delta to bind it")
            for mode in lattice.modes:
                total = total + term.substitute_index(idx, mode.id, lattice)
        elif sift_only:
            total = total + term
        else:
            total = total + term * len(lattice.modes)
    return total
