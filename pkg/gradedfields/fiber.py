# -*- coding: utf-8 -*-
"""Graded fiber polynomials over fields, antifields and their jets.

A :class:`FiberPoly` is a finite sum of words in :class:`FiberCoord` with
:class:`ScalarExpr` coefficients. Words are kept sorted; transposing two odd
coordinates flips the sign and a repeated odd coordinate kills the word.
"""

__all__ = [
    "FiberCoord",
    "FiberPoly",
    "bv_bracket",
    "bv_laplacian",
    "euler_lagrange",
    "horizontal_diff",
    "left_deriv",
    "partial",
    "random_poly",
    "right_deriv",
    "substitute",
]

import logging
import random
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field, replace
from typing import Any, Literal

from zope.interface import implementer

from gradedfields.exceptions import JetOrderError, MixedParityError
from gradedfields.graded import parity_of
from gradedfields.interfaces import IGradedElement
from gradedfields.scalar import ScalarExpr

logger = logging.getLogger(__name__)

#: Highest jet order a coordinate may carry.
MAX_JET_ORDER = 2

Convention = Literal["signed", "left"]


@dataclass(frozen=True)
class FiberCoord:
    """Fiber coordinate ``y^name[index]_jet`` or its antifield.

    ``parity`` is the parity of the underlying field; antifields invert it.
    """

    name: str
    index: tuple[int, ...] = ()
    jet: tuple[int, ...] = ()
    antifield: bool = False
    parity: int = 0
    key: tuple[Any, ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if len(self.jet) > MAX_JET_ORDER:
            raise JetOrderError(f"Jet order {len(self.jet)} of {self.name} exceeds {MAX_JET_ORDER}")
        object.__setattr__(self, "jet", tuple(sorted(self.jet)))
        object.__setattr__(self, "key", (self.antifield, self.name, self.index, len(self.jet), self.jet))

    @property
    def odd(self) -> bool:
        """Whether the coordinate anticommutes."""
        return bool((self.parity + self.antifield) % 2)

    @property
    def base(self) -> "FiberCoord":
        """The same coordinate without jet indices."""
        return replace(self, jet=())

    def prolonged(self, index: int) -> "FiberCoord":
        """Coordinate of one more derivative along ``index``."""
        return replace(self, jet=(*self.jet, index))

    def dual(self) -> "FiberCoord":
        """Antifield of a field coordinate and vice versa."""
        return replace(self, antifield=not self.antifield)

    def __str__(self) -> str:
        name = f"{self.name}~" if self.antifield else self.name
        index = ",".join(str(i) for i in self.index)
        jet = "".join(str(j) for j in self.jet)
        text = f"{name}[{index}]" if index else name
        return f"{text}_{jet}" if jet else text


Word = tuple[FiberCoord, ...]


def _canonical(word: Sequence[FiberCoord]) -> tuple[int, Word]:
    """Sorted word with its Koszul sign; sign 0 when an odd coordinate repeats."""
    items = list(word)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1].key > items[j].key:
            if items[j - 1].odd and items[j].odd:
                sign = -sign
            items[j - 1], items[j] = items[j], items[j - 1]
            j -= 1
    for left, right in zip(items, items[1:], strict=False):
        if left.odd and left == right:
            return 0, ()
    return sign, tuple(items)


def _word_parity(word: Iterable[FiberCoord]) -> int:
    return sum(1 for c in word if c.odd) % 2


@implementer(IGradedElement)
class FiberPoly:
    """Immutable graded polynomial in fiber coordinates."""

    __slots__ = ("_hash", "_terms")

    def __init__(self, terms: Mapping[Word, ScalarExpr] | None = None) -> None:
        self._terms: dict[Word, ScalarExpr] = {w: c for w, c in (terms or {}).items() if c}
        self._hash: int | None = None

    @classmethod
    def zero(cls) -> "FiberPoly":
        """Return the zero polynomial."""
        return cls()

    @classmethod
    def constant(cls, value: Any) -> "FiberPoly":
        """Constant polynomial."""
        return cls({(): ScalarExpr.coerce(value)})

    @classmethod
    def coord(cls, c: FiberCoord, coefficient: Any = 1) -> "FiberPoly":
        """Single coordinate with a coefficient."""
        return cls({(c,): ScalarExpr.coerce(coefficient)})

    @classmethod
    def monomial(cls, *coords: FiberCoord, coefficient: Any = 1) -> "FiberPoly":
        """Ordered product of coordinates in canonical form."""
        sign, word = _canonical(coords)
        if not sign:
            return cls()
        return cls({word: ScalarExpr.coerce(coefficient) * sign})

    @property
    def terms(self) -> Mapping[Word, ScalarExpr]:
        """Read-only view of ``word -> coefficient``."""
        return self._terms

    def items(self) -> Iterator[tuple[Word, ScalarExpr]]:
        """Iterate terms in word order."""
        return iter(sorted(self._terms.items(), key=lambda item: (len(item[0]), [c.key for c in item[0]])))

    def is_zero(self) -> bool:
        """Whether the polynomial vanishes."""
        return not self._terms

    def coords(self) -> set[FiberCoord]:
        """Coordinates occurring in any word."""
        return {c for word in self._terms for c in word}

    def degree(self) -> int:
        """Largest word length."""
        return max((len(word) for word in self._terms), default=0)

    def map_coefficients(self, transform: Any) -> "FiberPoly":
        """Apply ``transform(ScalarExpr) -> ScalarExpr`` to every coefficient."""
        return FiberPoly({w: transform(c) for w, c in self._terms.items()})

    def homogeneous(self, parity: int) -> "FiberPoly":
        """Terms of the given parity."""
        return FiberPoly({w: c for w, c in self._terms.items() if _word_parity(w) == parity})

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: Any) -> "FiberPoly":
        if not isinstance(other, FiberPoly):
            other = FiberPoly.constant(other)
        merged = dict(self._terms)
        for word, coefficient in other._terms.items():
            merged[word] = merged[word] + coefficient if word in merged else coefficient
        return FiberPoly(merged)

    __radd__ = __add__

    def __neg__(self) -> "FiberPoly":
        return FiberPoly({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: Any) -> "FiberPoly":
        if not isinstance(other, FiberPoly):
            other = FiberPoly.constant(other)
        return self + (-other)

    def __mul__(self, other: Any) -> "FiberPoly":
        if not isinstance(other, FiberPoly):
            scalar = ScalarExpr.coerce(other)
            return FiberPoly({w: c * scalar for w, c in self._terms.items()})
        terms: dict[Word, ScalarExpr] = {}
        for word_a, coefficient_a in self._terms.items():
            for word_b, coefficient_b in other._terms.items():
                sign, word = _canonical(word_a + word_b)
                if not sign:
                    continue
                value = coefficient_a * coefficient_b * sign
                terms[word] = terms[word] + value if word in terms else value
        return FiberPoly(terms)

    def __rmul__(self, other: Any) -> "FiberPoly":
        return self * other

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiberPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"FiberPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for word, coefficient in self.items():
            body = "*".join(str(c) for c in word)
            if not body:
                parts.append(f"({coefficient})")
            elif coefficient == 1:
                parts.append(body)
            else:
                parts.append(f"({coefficient})*{body}")
        return " + ".join(parts)


def left_deriv(f: FiberPoly, c: FiberCoord) -> FiberPoly:
    """Left derivative: move ``c`` to the front with its Koszul sign, then remove it."""
    terms: dict[Word, ScalarExpr] = {}
    for word, coefficient in f.terms.items():
        passed = 0
        for position, item in enumerate(word):
            if item == c:
                sign = -1 if c.odd and passed % 2 else 1
                rest = word[:position] + word[position + 1 :]
                value = coefficient * sign
                terms[rest] = terms[rest] + value if rest in terms else value
            if item.odd:
                passed += 1
    return FiberPoly(terms)


def right_deriv(f: FiberPoly, c: FiberCoord, convention: Convention = "signed") -> FiberPoly:
    """Right derivative ``f d<_c``.

    The default follows ``f d<_c = (-1)**(|c||f|) d>_c f`` term by term;
    ``convention="left"`` removes ``c`` from the right end instead, which equals
    ``(-1)**(|c|(|f|+1)) d>_c f``.
    """
    total = FiberPoly.zero()
    for word, coefficient in f.terms.items():
        parity = _word_parity(word)
        exponent = parity if convention == "signed" else parity + 1
        sign = -1 if c.odd and exponent % 2 else 1
        total = total + left_deriv(FiberPoly({word: coefficient}), c) * sign
    return total


def partial(f: FiberPoly, c: FiberCoord, convention: Convention = "signed") -> FiberPoly:
    """Partial derivative ``d_c``.

    ``signed``: ``d_c = (-1)**|c| f d<_c``; ``left``: the left derivative.
    """
    if convention == "left":
        return left_deriv(f, c)
    derivative = right_deriv(f, c)
    return -derivative if c.odd else derivative


def horizontal_diff(f: FiberPoly, index: int) -> FiberPoly:
    """Total derivative ``d_index f = sum_c c_{+index} d>_c f``.

    :raises JetOrderError: when a prolonged coordinate would exceed the maximal order
    """
    total = FiberPoly.zero()
    for c in sorted(f.coords(), key=lambda item: item.key):
        derivative = left_deriv(f, c)
        if derivative:
            total = total + FiberPoly.coord(c.prolonged(index)) * derivative
    return total


def _pairs(*polys: FiberPoly) -> list[FiberCoord]:
    """Field coordinates (order 0) whose field or antifield occurs."""
    found = set()
    for poly in polys:
        for c in poly.coords():
            if not c.jet:
                found.add(c.dual() if c.antifield else c)
    return sorted(found, key=lambda item: item.key)


def bv_laplacian(f: FiberPoly) -> FiberPoly:
    """BV Laplacian ``sum_i d>_{y_i} d>_{y~_i} f``."""
    total = FiberPoly.zero()
    for c in _pairs(f):
        total = total + left_deriv(left_deriv(f, c.dual()), c)
    return total


def _pairing(f: FiberPoly, g: FiberPoly, coords: Sequence[FiberCoord]) -> FiberPoly:
    """``<f|1*|g> = sum_i (f d<_{y_i}) (d>_{y~_i} g)``."""
    total = FiberPoly.zero()
    for c in coords:
        left = right_deriv(f, c)
        if not left:
            continue
        total = total + left * left_deriv(g, c.dual())
    return total


def _definite(f: FiberPoly) -> int:
    parity = parity_of(f)
    if parity == "mixed":
        raise MixedParityError(f"Antibracket needs definite parity: {f}")
    return 1 if parity == "odd" else 0


def bv_bracket(f: FiberPoly, g: FiberPoly) -> FiberPoly:
    """Antibracket ``{f,g} = <f|1*|g> - (-1)**((|f|+1)(|g|+1)) <g|1*|f>``.

    :raises MixedParityError: unless both arguments have definite parity
    """
    parity_f, parity_g = _definite(f), _definite(g)
    coords = _pairs(f, g)
    sign = -1 if (parity_f + 1) * (parity_g + 1) % 2 else 1
    return _pairing(f, g, coords) - _pairing(g, f, coords) * sign


def substitute(f: FiberPoly, replacements: Mapping[FiberCoord, FiberPoly]) -> FiberPoly:
    """Replace coordinates by polynomials of the same parity, keeping the word order."""
    total = FiberPoly.zero()
    for word, coefficient in f.terms.items():
        product = FiberPoly.constant(coefficient)
        for c in word:
            product = product * replacements.get(c, FiberPoly.coord(c))
        total = total + product
    return total


def euler_lagrange(lagrangian: FiberPoly, c: FiberCoord) -> FiberPoly:
    """Euler-Lagrange expression ``d>_c L - sum_l d_l (d>^l_c L)`` of a first-order density."""
    total = left_deriv(lagrangian, c)
    for index in range(4):
        total = total - horizontal_diff(left_deriv(lagrangian, c.prolonged(index)), index)
    return total


def random_poly(
    rng: random.Random,
    coords: Sequence[FiberCoord],
    *,
    max_degree: int = 4,
    max_terms: int = 4,
    parity: int | None = None,
) -> FiberPoly:
    """Random polynomial with small integer coefficients.

    :param parity: keep only terms of this parity (the result may then be zero)
    """
    total = FiberPoly.zero()
    for _ in range(rng.randint(1, max_terms)):
        degree = rng.randint(0, max_degree)
        word = [rng.choice(coords) for _ in range(degree)]
        total = total + FiberPoly.monomial(*word, coefficient=rng.choice([-3, -2, -1, 1, 2, 3]))
    if parity is not None:
        total = total.homogeneous(parity)
    return total
