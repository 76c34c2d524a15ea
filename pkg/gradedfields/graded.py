# -*- coding: utf-8 -*-
"""The Z2-graded algebra of elementary absorption and emission operators.

Every stored word is in canonical order: emissions before absorptions, then
by ``(sector, mode, internal index, index position)``. Reordering is done by
adjacent transpositions carrying the Koszul sign. Under the physical rule
moving an absorption past the emission it contracts with leaves a scalar
behind; under the modified rule it does not.
"""

__all__ = [
    "GradedExpr",
    "MODIFIED",
    "OpGen",
    "PHYSICAL",
    "SECTOR_PARITY",
    "absorb",
    "contraction",
    "emit",
    "koszul_product",
    "normal_order",
    "parity_of",
    "super_bracket",
]

import logging
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Literal

from zope.interface import implementer

from gradedfields.exceptions import MixedParityError, UnknownSectorError
from gradedfields.interfaces import IGradedElement, IScalar
from gradedfields.scalar import ScalarExpr

logger = logging.getLogger(__name__)

#: 0 for bosonic sectors, 1 for fermionic ones.
SECTOR_PARITY = {
    "scalar": 0,
    "fermion": 1,
    "dirac": 1,
    "gauge": 0,
    "ghost": 1,
    "nl": 0,
}

#: Letters used when printing particle and antiparticle operators.
_LETTERS = {
    "scalar": ("a", "a"),
    "fermion": ("f", "f"),
    "dirac": ("a", "c"),
    "gauge": ("b", "b"),
    "ghost": ("g", "k"),
    "nl": ("n", "n"),
}

Rule = Literal["physical", "modified"]
PHYSICAL: Rule = "physical"
MODIFIED: Rule = "modified"

Parity = Literal["even", "odd", "mixed"]


@dataclass(frozen=True, slots=True)
class OpGen:
    """One elementary operator.

    ``species`` and ``position`` together select one of the four operators of a
    sector: ``(absorb, upper)`` absorbs a particle, ``(emit, lower)`` emits it,
    ``(absorb, lower)`` absorbs an antiparticle and ``(emit, upper)`` emits it.
    Gauge quanta carry ``internal = 4 * I + lambda``.
    """

    sector: str
    species: Literal["absorb", "emit"]
    position: Literal["upper", "lower"]
    mode: int
    internal: int = 0
    key: tuple[int, str, int, int, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.sector not in SECTOR_PARITY:
            raise UnknownSectorError(f"Unknown sector {self.sector}")
        if self.species not in ("absorb", "emit"):
            raise ValueError(f"Unknown species {self.species}")
        if self.position not in ("upper", "lower"):
            raise ValueError(f"Unknown index position {self.position}")
        object.__setattr__(
            self,
            "key",
            (
                0 if self.species == "emit" else 1,
                self.sector,
                self.mode,
                self.internal,
                0 if self.position == "upper" else 1,
            ),
        )

    @property
    def odd(self) -> bool:
        """Whether the operator is fermionic."""
        return bool(SECTOR_PARITY[self.sector])

    @property
    def emits(self) -> bool:
        """Whether this is an emission operator."""
        return self.species == "emit"

    @property
    def particle(self) -> bool:
        """Whether the operator acts on particles rather than antiparticles."""
        return (self.species == "absorb") == (self.position == "upper")

    def adjoint(self) -> "OpGen":
        """Hermitian adjoint: absorption and emission swap, so does the index position."""
        return OpGen(
            self.sector,
            "absorb" if self.emits else "emit",
            "lower" if self.position == "upper" else "upper",
            self.mode,
            self.internal,
        )

    def __str__(self) -> str:
        letter = _LETTERS[self.sector][0 if self.particle else 1]
        dagger = "†" if self.emits else ""
        mark = "^" if self.position == "upper" else "_"
        if self.sector == "gauge":
            index = f"{self.internal // 4},{self.internal % 4}"
        else:
            index = str(self.internal)
        return f"{letter}{dagger}{mark}{index}(p{self.mode})"


Word = tuple[OpGen, ...]


def absorb(sector: str, mode: int, internal: int = 0, position: Literal["upper", "lower"] = "upper") -> OpGen:
    """Absorption operator; the default upper position absorbs a particle."""
    return OpGen(sector, "absorb", position, mode, internal)


def emit(sector: str, mode: int, internal: int = 0, position: Literal["upper", "lower"] = "lower") -> OpGen:
    """Emission operator; the default lower position emits a particle."""
    return OpGen(sector, "emit", position, mode, internal)


def contraction(left: OpGen, right: OpGen) -> int:
    """Value of the super-commutator of an absorption ``left`` with an emission ``right``.

    Gauge quanta contract with the Minkowski metric ``g_{lambda lambda}``.
    """
    if left.emits or not right.emits:
        return 0
    if (left.sector, left.mode, left.internal) != (right.sector, right.mode, right.internal):
        return 0
    if left.position == right.position:
        return 0
    if left.sector == "gauge" and left.internal % 4:
        return -1
    return 1


@lru_cache(maxsize=1 << 16)
def _reorder(word: Word, physical: bool) -> tuple[tuple[Word, int], ...]:
    """Canonical expansion of ``word`` as ``((canonical word, integer coefficient), ...)``."""
    for i in range(len(word) - 1):
        left, right = word[i], word[i + 1]
        if left.key < right.key:
            continue
        if left.key == right.key:
            if left.odd:
                return ()
            continue
        result: dict[Word, int] = {}
        sign = -1 if left.odd and right.odd else 1
        for target, count in _reorder(word[:i] + (right, left) + word[i + 2 :], physical):
            result[target] = result.get(target, 0) + sign * count
        if physical:
            value = contraction(left, right)
            if value:
                for target, count in _reorder(word[:i] + word[i + 2 :], physical):
                    result[target] = result.get(target, 0) + value * count
        return tuple((target, count) for target, count in result.items() if count)
    return ((word, 1),)


def _word_parity(word: Iterable[Any]) -> int:
    return sum(1 for g in word if g.odd) % 2


@implementer(IGradedElement)
class GradedExpr:
    """Immutable finite sum of canonical words with :class:`ScalarExpr` coefficients."""

    __slots__ = ("_hash", "_terms")

    def __init__(self, terms: Mapping[Word, ScalarExpr] | None = None) -> None:
        self._terms: dict[Word, ScalarExpr] = {w: c for w, c in (terms or {}).items() if c}
        self._hash: int | None = None

    @classmethod
    def zero(cls) -> "GradedExpr":
        """Return the empty sum."""
        return cls()

    @classmethod
    def scalar(cls, value: Any) -> "GradedExpr":
        """Multiple of the unit operator."""
        return cls({(): ScalarExpr.coerce(value)})

    @classmethod
    def generator(cls, gen: OpGen, coefficient: Any = 1) -> "GradedExpr":
        """Single generator with a coefficient."""
        return cls({(gen,): ScalarExpr.coerce(coefficient)})

    @classmethod
    def word(cls, *gens: OpGen, coefficient: Any = 1, rule: Rule = PHYSICAL) -> "GradedExpr":
        """Canonical form of the ordered product ``gens[0] gens[1] ...``."""
        scalar = ScalarExpr.coerce(coefficient)
        terms: dict[Word, ScalarExpr] = {}
        for target, count in _reorder(tuple(gens), rule == PHYSICAL):
            terms[target] = terms.get(target, ScalarExpr.zero()) + scalar * count
        return cls(terms)

    @property
    def terms(self) -> Mapping[Word, ScalarExpr]:
        """Read-only view of ``word -> coefficient``."""
        return self._terms

    def items(self) -> Iterator[tuple[Word, ScalarExpr]]:
        """Iterate terms in canonical word order."""
        return iter(sorted(self._terms.items(), key=lambda item: (len(item[0]), [g.key for g in item[0]])))

    def is_zero(self) -> bool:
        """Whether this is the empty sum."""
        return not self._terms

    def is_scalar(self) -> bool:
        """Whether only the empty word occurs."""
        return all(not word for word in self._terms)

    def scalar_part(self) -> ScalarExpr:
        """Coefficient of the empty word."""
        return self._terms.get((), ScalarExpr.zero())

    def generators(self) -> set[OpGen]:
        """All generators occurring in any word."""
        return {g for word in self._terms for g in word}

    def max_emissions(self) -> int:
        """Largest number of emission operators in a single word."""
        return max((sum(1 for g in word if g.emits) for word in self._terms), default=0)

    def map_coefficients(self, transform: Any) -> "GradedExpr":
        """Apply ``transform(ScalarExpr) -> ScalarExpr`` to every coefficient."""
        return GradedExpr({w: transform(c) for w, c in self._terms.items()})

    def filter(self, predicate: Any) -> "GradedExpr":
        """Keep the terms for which ``predicate(word, coefficient)`` holds."""
        return GradedExpr({w: c for w, c in self._terms.items() if predicate(w, c)})

    def adjoint(self) -> "GradedExpr":
        """Hermitian adjoint, reordered with the physical rule."""
        total = GradedExpr.zero()
        for word, coefficient in self._terms.items():
            reversed_word = tuple(g.adjoint() for g in reversed(word))
            total = total + GradedExpr.word(*reversed_word, coefficient=coefficient.conjugate())
        return total

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "GradedExpr") -> "GradedExpr":
        if not isinstance(other, GradedExpr):
            other = GradedExpr.scalar(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        merged = dict(self._terms)
        for word, coefficient in other._terms.items():
            merged[word] = merged[word] + coefficient if word in merged else coefficient
        return GradedExpr(merged)

    __radd__ = __add__

    def __neg__(self) -> "GradedExpr":
        return GradedExpr({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "GradedExpr") -> "GradedExpr":
        if not isinstance(other, GradedExpr):
            other = GradedExpr.scalar(other)
        return self + (-other)

    def __mul__(self, other: Any) -> "GradedExpr":
        if isinstance(other, GradedExpr):
            return koszul_product(self, other)
        scalar = ScalarExpr.coerce(other)
        return GradedExpr({w: c * scalar for w, c in self._terms.items()})

    def __rmul__(self, other: Any) -> "GradedExpr":
        scalar = ScalarExpr.coerce(other)
        return GradedExpr({w: scalar * c for w, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"GradedExpr({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for word, coefficient in self.items():
            body = " ".join(str(g) for g in word)
            if not body:
                parts.append(f"({coefficient})")
            elif coefficient == 1:
                parts.append(body)
            else:
                parts.append(f"({coefficient})*{body}")
        return " + ".join(parts)


def koszul_product(a: GradedExpr, b: GradedExpr, rule: Rule = PHYSICAL) -> GradedExpr:
    """Product of two expressions reordered to canonical form.

    :param rule: ``physical`` keeps contraction terms, ``modified`` drops them
    """
    physical = rule == PHYSICAL
    terms: dict[Word, ScalarExpr] = {}
    for word_a, coefficient_a in a.terms.items():
        for word_b, coefficient_b in b.terms.items():
            expansion = _reorder(word_a + word_b, physical)
            if not expansion:
                continue
            product = coefficient_a * coefficient_b
            for target, count in expansion:
                value = product * count
                terms[target] = terms[target] + value if target in terms else value
    return GradedExpr(terms)


def parity_of(e: Any) -> Parity:
    """Parity shared by all terms of a graded element; scalars are even."""
    if IScalar.providedBy(e):
        return "even"
    if not IGradedElement.providedBy(e):
        raise TypeError(f"Not a graded element: {e!r}")
    parities = {_word_parity(word) for word in e.terms}
    if len(parities) > 1:
        return "mixed"
    return "odd" if parities == {1} else "even"


def super_bracket(a: GradedExpr, b: GradedExpr) -> GradedExpr:
    """Return ``ab - (-1)**(|a||b|) ba`` with the physical rule."""
    parity_a, parity_b = parity_of(a), parity_of(b)
    if "mixed" in (parity_a, parity_b):
        raise MixedParityError(f"Super-bracket needs definite parity, got {parity_a} and {parity_b}")
    sign = -1 if parity_a == parity_b == "odd" else 1
    return koszul_product(a, b) - koszul_product(b, a) * sign


def normal_order(e: GradedExpr, *factors: GradedExpr) -> GradedExpr:
    """Normal-ordered product ``:e factors[0] ...:`` under the modified rule.

    A single argument is already stored in normal order and comes back unchanged.
    A product built with ``*`` keeps its contraction scalars, which cannot be told
    apart from explicit lower-order terms; pass the factors separately to drop them.
    """
    result = e
    for factor in factors:
        result = koszul_product(result, factor, MODIFIED)
    return result
