# -*- coding: utf-8 -*-
"""Small functional expression language evaluated by ``gradedfields eval``.

::

    expr   := call | name | number
    call   := name "(" [expr ("," expr)*] ")"
    number := ["-"] digits ["/" digits]

For example ``scomm(field(ghost, I, x), conj(ghost, J, y))`` or
``normal(prod(absorb(p, 1), emit(p, 1)))``.
"""

__all__ = [
    "Call",
    "Evaluator",
    "Name",
    "Number",
    "parse",
]

import logging
import re
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any

from sympy import QQ

from gradedfields.brst import TheorySpec, brst_S
from gradedfields.exceptions import ExpressionSyntaxError, UnknownIdentifierError
from gradedfields.fiber import FiberPoly, bv_laplacian
from gradedfields.fields import conjugate_field, d_basis, field as free_field, propagator_D
from gradedfields.graded import SECTOR_PARITY, GradedExpr, absorb, emit, normal_order, super_bracket
from gradedfields.lattice import FieldPoint, ModeLattice
from gradedfields.lie import LieData
from gradedfields.scalar import ScalarExpr

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:(?P<number>-?\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[(),]))")

POINTS = ("x", "y", "z")
MODE_NAMES = {"p": 0, "q": 1, "r": 2}
INTERNAL_NAMES = {"a": 0, "b": 1, "c": 2, "I": 0, "J": 1, "K": 2}


@dataclass(frozen=True)
class Name:
    """Bare identifier."""

    text: str
    offset: int


@dataclass(frozen=True)
class Number:
    """Rational literal."""

    value: Any
    offset: int


@dataclass(frozen=True)
class Call:
    """Function application."""

    name: str
    args: tuple["Node", ...]
    offset: int


Node = Name | Number | Call


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN.match(text, position)
        if match is None:
            offset = len(text) - len(text[position:].lstrip())
            raise ExpressionSyntaxError(f"Unexpected character {text[offset]!r}", offset)
        kind = match.lastgroup or ""
        tokens.append((kind, match.group(kind), match.start(kind)))
        position = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.position = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def expect(self, value: str) -> None:
        token = self.peek()
        if token is None or token[1] != value:
            offset = token[2] if token else len(self.text)
            found = repr(token[1]) if token else "end of input"
            raise ExpressionSyntaxError(f"Expected {value!r}, found {found}", offset)
        self.position += 1

    def expression(self) -> Node:
        token = self.peek()
        if token is None:
            raise ExpressionSyntaxError("Unexpected end of input", len(self.text))
        kind, value, offset = token
        self.position += 1
        if kind == "number":
            numerator, _, denominator = value.partition("/")
            if denominator and int(denominator) == 0:
                raise ExpressionSyntaxError("Zero denominator", offset)
            return Number(QQ(int(numerator), int(denominator or 1)), offset)
        if kind != "name":
            raise ExpressionSyntaxError(f"Unexpected {value!r}", offset)
        following = self.peek()
        if following is None or following[1] != "(":
            return Name(value, offset)
        self.position += 1
        args: list[Node] = []
        if (self.peek() or ("", "", 0))[1] != ")":
            args.append(self.expression())
            while (self.peek() or ("", "", 0))[1] == ",":
                self.position += 1
                args.append(self.expression())
        self.expect(")")
        return Call(value, tuple(args), offset)

    def parse(self) -> Node:
        node = self.expression()
        token = self.peek()
        if token is not None:
            raise ExpressionSyntaxError(f"Trailing input {token[1]!r}", token[2])
        return node


def parse(text: str) -> Node:
    """Parse ``text`` into a syntax tree.

    :raises ExpressionSyntaxError: with the offset of the offending token
    """
    return _Parser(text).parse()


def _offset_of(node: Node) -> int:
    return node.offset


@dataclass
class Evaluator:
    """Evaluate syntax trees over a lattice and a gauge theory.

    The points met while evaluating are remembered in ``points`` so that a
    scalar result can be rendered in the propagator basis. Without ``xi`` the
    gauge parameter of the BRST theory stays a formal symbol.
    """

    lattice: ModeLattice
    lie: LieData
    points: list[FieldPoint] = field(default_factory=list)
    xi: ScalarExpr | None = None

    def __post_init__(self) -> None:
        self.theory = TheorySpec(self.lie) if self.xi is None else TheorySpec(self.lie, self.xi)
        self.functions: dict[str, Callable[[Call], Any]] = {
            "field": self._field,
            "conj": self._field,
            "absorb": self._ladder,
            "emit": self._ladder,
            "prod": self._prod,
            "normal": self._normal,
            "scomm": self._scomm,
            "sum": self._sum,
            "D": self._propagator,
            "S": self._brst,
            "Delta": self._laplacian,
        }

    def evaluate(self, node: Node) -> Any:
        """Value of ``node``: a graded expression, scalar or fiber polynomial.

        :raises UnknownIdentifierError: for unknown functions or names
        :raises ExpressionSyntaxError: for calls with the wrong arguments
        """
        if isinstance(node, Number):
            return ScalarExpr.number(node.value)
        if isinstance(node, Name):
            raise UnknownIdentifierError(f"{node.text!r} at offset {node.offset} is not a value")
        try:
            handler = self.functions[node.name]
        except KeyError:
            raise UnknownIdentifierError(f"Unknown function {node.name!r} at offset {node.offset}") from None
        return handler(node)

    def evaluate_text(self, text: str) -> Any:
        """Parse and evaluate."""
        self.points.clear()
        value = self.evaluate(parse(text))
        logger.debug("Evaluated %r", text)
        return value

    def render(self, value: Any) -> list[str]:
        """Canonical form, plus the propagator-basis form of scalar results."""
        lines = [str(value)]
        scalar = None
        if isinstance(value, ScalarExpr):
            scalar = value
        elif isinstance(value, GradedExpr) and value.is_scalar():
            scalar = value.scalar_part()
        if scalar is not None and not scalar.is_zero() and self.points:
            distinct = list(dict.fromkeys(self.points))
            difference = distinct[0] - distinct[1] if len(distinct) > 1 else distinct[0]
            rendered = d_basis(scalar, difference, self.lattice)
            if rendered:
                lines.append(f"= {rendered}")
        return lines

    def _arity(self, node: Call, low: int, high: int | None = None) -> None:
        high = low if high is None else high
        if not low <= len(node.args) <= high:
            expected = str(low) if low == high else f"{low} to {high}"
            raise ExpressionSyntaxError(f"{node.name} takes {expected} arguments, got {len(node.args)}", node.offset)

    def _word(self, node: Node, choices: Sequence[str]) -> str:
        if not isinstance(node, Name) or node.text not in choices:
            text = node.text if isinstance(node, Name) else "expression"
            raise UnknownIdentifierError(f"{text!r} at offset {_offset_of(node)} is not one of {', '.join(choices)}")
        return node.text

    def _integer(self, node: Node, names: dict[str, int]) -> int:
        if isinstance(node, Number) and node.value.denominator == 1:
            return int(node.value.numerator)
        if isinstance(node, Name) and node.text in names:
            return names[node.text]
        raise UnknownIdentifierError(f"Expected an index at offset {_offset_of(node)}")

    def _point(self, node: Node) -> FieldPoint:
        if isinstance(node, Number) and node.value == 0:
            point = FieldPoint.origin()
        elif isinstance(node, Name) and node.text in POINTS:
            point = FieldPoint.symbolic(node.text)
        else:
            raise UnknownIdentifierError(f"Expected a point x, y, z or 0 at offset {_offset_of(node)}")
        self.points.append(point)
        return point

    def _mode(self, node: Node) -> int:
        position = self._integer(node, MODE_NAMES)
        modes = self.lattice.modes
        if not 0 <= position < len(modes):
            raise UnknownIdentifierError(f"Lattice has no mode {position} (offset {_offset_of(node)})")
        return modes[position].id

    def _graded(self, node: Node) -> GradedExpr:
        value = self.evaluate(node)
        if isinstance(value, ScalarExpr):
            return GradedExpr.scalar(value)
        if not isinstance(value, GradedExpr):
            raise ExpressionSyntaxError("Expected an operator expression", _offset_of(node))
        return value

    def _field(self, node: Call) -> GradedExpr:
        self._arity(node, 3, 4)
        sector = self._word(node.args[0], tuple(SECTOR_PARITY))
        component = self._integer(node.args[1], INTERNAL_NAMES)
        point = self._point(node.args[2])
        deriv = (self._integer(node.args[3], {}),) if len(node.args) == 4 else ()
        build = free_field if node.name == "field" else conjugate_field
        return build(sector, component, point, self.lattice, deriv).operator

    def _ladder(self, node: Call) -> GradedExpr:
        self._arity(node, 2, 3)
        mode = self._mode(node.args[0])
        internal = self._integer(node.args[1], INTERNAL_NAMES)
        sector = self._word(node.args[2], tuple(SECTOR_PARITY)) if len(node.args) == 3 else "scalar"
        gen = absorb(sector, mode, internal) if node.name == "absorb" else emit(sector, mode, internal)
        return GradedExpr.generator(gen)

    def _prod(self, node: Call) -> GradedExpr:
        self._arity(node, 1, len(node.args) or 1)
        result = self._graded(node.args[0])
        for arg in node.args[1:]:
            result = result * self._graded(arg)
        return result

    def _normal(self, node: Call) -> GradedExpr:
        self._arity(node, 1)
        (inner,) = node.args
        if isinstance(inner, Call) and inner.name == "prod" and inner.args:
            factors = [self._graded(arg) for arg in inner.args]
            return normal_order(factors[0], *factors[1:])
        return normal_order(self._graded(inner))

    def _scomm(self, node: Call) -> GradedExpr:
        self._arity(node, 2)
        return super_bracket(self._graded(node.args[0]), self._graded(node.args[1]))

    def _sum(self, node: Call) -> Any:
        self._arity(node, 1, len(node.args) or 1)
        values = [self.evaluate(arg) for arg in node.args]
        if all(isinstance(v, FiberPoly) for v in values):
            total: Any = FiberPoly.zero()
        elif any(isinstance(v, GradedExpr) for v in values):
            values = [GradedExpr.scalar(v) if isinstance(v, ScalarExpr) else v for v in values]
            total = GradedExpr.zero()
        else:
            total = ScalarExpr.zero()
        for value in values:
            total = total + value
        return total

    def _propagator(self, node: Call) -> ScalarExpr:
        self._arity(node, 2, 3)
        sign = self._integer(node.args[0], {"plus": 1, "minus": -1})
        if sign not in (1, -1):
            raise ExpressionSyntaxError("The sign of D must be 1 or -1", _offset_of(node.args[0]))
        point = self._point(node.args[1])
        deriv = (self._integer(node.args[2], {}),) if len(node.args) == 3 else ()
        return propagator_D(sign, point, self.lattice, "scalar", deriv)

    def _fiber(self, node: Call) -> FiberPoly:
        first = node.args[0]
        if isinstance(first, Name):
            indices = [self._integer(arg, INTERNAL_NAMES) for arg in node.args[1:]]
            try:
                return self.theory.poly(first.text, *indices)
            except KeyError as error:
                raise UnknownIdentifierError(f"{error.args[0]} (offset {first.offset})") from None
        self._arity(node, 1)
        value = self.evaluate(first)
        if not isinstance(value, FiberPoly):
            raise ExpressionSyntaxError("Expected a field-antifield polynomial", _offset_of(first))
        return value

    def _brst(self, node: Call) -> FiberPoly:
        self._arity(node, 1, 3)
        return brst_S(self._fiber(node), self.theory)

    def _laplacian(self, node: Call) -> FiberPoly:
        self._arity(node, 1, 3)
        return bv_laplacian(self._fiber(node))
