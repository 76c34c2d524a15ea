"""Tests for exact scalar coefficients."""

import cmath

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy import QQ

from gradedfields.exceptions import UnboundIndexError, UnboundSymbolError
from gradedfields.lattice import ModeLattice
from gradedfields.scalar import (
    ScalarExpr,
    delta_contract,
    radical_power,
    radsum,
    radsum_add,
    radsum_scale,
    rational,
    scalar_add,
)


def test_rational_conversions() -> None:
    """Strings, ints and sympy rationals end up in QQ."""
    assert rational("3/4") == QQ(3, 4)
    assert rational(2) == QQ(2)
    assert rational(sympy.Rational(-1, 3)) == QQ(-1, 3)
    with pytest.raises(TypeError):
        rational(True)
    with pytest.raises(TypeError):
        rational(0.5)


def test_radical_power_is_canonical() -> None:
    """sqrt(8) is stored as 2 * 2**(2/4)."""
    prefactor, radical = radical_power(8, 2)
    assert prefactor == QQ(2)
    assert radical == ((2, 2),)


def test_radical_power_needs_positive_base() -> None:
    """Radicals of non-positive numbers are rejected."""
    with pytest.raises(ValueError):
        radical_power(0, 2)


def test_square_of_square_root_is_rational() -> None:
    """sqrt(2)**2 collapses to the constant 2."""
    root = ScalarExpr.radical(2, 2)
    assert root * root == 2
    assert (root * root).is_constant()


def test_fourth_roots_multiply() -> None:
    """10**(-1/4) squared is 10**(-1/2)."""
    quarter = ScalarExpr.radical(10, -1)
    assert quarter * quarter == ScalarExpr.radical(10, -2)


def test_imaginary_unit() -> None:
    """i * i = -1 and conjugation flips its sign."""
    i = ScalarExpr.imaginary_unit()
    assert i * i == -1
    assert i.conjugate() == -i


def test_phases_cancel() -> None:
    """exp(i x) exp(-i x) = 1."""
    forward = ScalarExpr.exp_i({"x1": radsum(1)})
    backward = ScalarExpr.exp_i({"x1": radsum(-1)})
    assert forward * backward == 1
    assert forward.conjugate() == backward


def test_kronecker_deltas() -> None:
    """Distinct lattice ids vanish, equal indices give one."""
    assert ScalarExpr.delta(0, 1).is_zero()
    assert ScalarExpr.delta("q", "q") == 1
    assert not ScalarExpr.delta("q", 0).is_zero()
    assert ScalarExpr.delta("q", 0).indices() == {"q"}


def test_symbols_and_derivatives() -> None:
    """Formal symbols differentiate and substitute."""
    m = ScalarExpr.symbol("m")
    cube = m**3
    assert cube.diff_symbol("m") == m * m * 3
    assert cube.subs_symbol("m", 2) == 8
    assert cube.has_symbol("m")


def test_from_sympy_round_values() -> None:
    """Sympy radicals and I convert exactly and evaluate numerically."""
    value = ScalarExpr.from_sympy(sympy.sqrt(2) / 2 + sympy.I)
    assert value.to_complex() == pytest.approx(complex(2**0.5 / 2, 1))
    with pytest.raises(TypeError):
        ScalarExpr.from_sympy(sympy.pi)


def test_to_complex_phase() -> None:
    """Phase variables take their values from the bindings."""
    wave = ScalarExpr.exp_i({"x0": radsum(3)})
    assert wave.to_complex({"x0": 0.5}) == pytest.approx(cmath.exp(1.5j))


def test_to_complex_needs_bindings() -> None:
    """Unbound symbols and coordinates are reported."""
    with pytest.raises(UnboundSymbolError):
        ScalarExpr.symbol("m").to_complex()
    with pytest.raises(UnboundSymbolError):
        ScalarExpr.exp_i({"x1": radsum(1)}).to_complex()


def test_str_is_deterministic() -> None:
    """Rendering does not depend on the construction order."""
    a = ScalarExpr.symbol("m") + ScalarExpr.radical(3, 2) + 1
    b = 1 + ScalarExpr.radical(3, 2) + ScalarExpr.symbol("m")
    assert str(a) == str(b)
    assert a == b
    assert hash(a) == hash(b)


_small = st.integers(min_value=-6, max_value=6)


def _element(a: int, b: int) -> ScalarExpr:
    return ScalarExpr.number(a) + ScalarExpr.radical(2, 2) * b


@given(_small, _small, _small, _small, _small, _small)
def test_ring_axioms(a: int, b: int, c: int, d: int, e: int, f: int) -> None:
    """Distributivity, commutativity and associativity on Q(sqrt 2)."""
    x, y, z = _element(a, b), _element(c, d), _element(e, f)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x - x == 0


_THREE = ModeLattice.build([(1, 0, 0), (0, 1, 0), (0, 0, 1)], scalar=1)


def test_scalar_add_cancels() -> None:
    """x + (-x) leaves no terms."""
    x = ScalarExpr.symbol("x")
    assert scalar_add(x, -x).is_zero()
    assert scalar_add(ScalarExpr.number(2), ScalarExpr.number(3)) == ScalarExpr.number(5)


def test_delta_contract_sifts() -> None:
    """sum_q f(q) delta(p, q) = f(p), and deltas compose."""
    f = ScalarExpr.symbol("f", "q") * ScalarExpr.delta("p", "q")
    assert delta_contract(f, "q", _THREE) == ScalarExpr.symbol("f", "p")
    chain = ScalarExpr.delta("p", "q") * ScalarExpr.delta("q", "r")
    assert delta_contract(chain, "q", _THREE) == ScalarExpr.delta("p", "r")


def test_delta_contract_counts_modes() -> None:
    """A term without the index is multiplied by the number of modes."""
    assert delta_contract(ScalarExpr.one(), "q", _THREE) == ScalarExpr.number(3)
    assert delta_contract(ScalarExpr.one(), "q", _THREE, sift_only=True) == ScalarExpr.one()


def test_delta_contract_sums_waves() -> None:
    """Unbound plane waves are summed explicitly, or refused on request."""
    coords = ("x1", "x2", "x3")
    wave = ScalarExpr.wave("q", coords)
    expected = ScalarExpr.zero()
    for mode in _THREE.modes:
        expected = expected + ScalarExpr.exp_i({c: radsum(p) for c, p in zip(coords, mode.momentum, strict=True)})
    assert delta_contract(wave, "q", _THREE) == expected
    with pytest.raises(UnboundIndexError):
        delta_contract(wave, "q", _THREE, allow_sum=False)


def test_surd_squares_to_its_radicand() -> None:
    """sqrt(3 sqrt(2) + 3) squared is the radicand again, with no surd left."""
    radicand = radsum_add(radsum(*radical_power(18, 2)), radsum(3))
    root = ScalarExpr.surd(radicand)
    assert root * root == ScalarExpr.from_radsum(radicand)
    assert root.to_complex() == pytest.approx(cmath.sqrt(3 * 2**0.5 + 3))
    assert "sqrt(" in str(root)


def test_surd_scaling_is_canonical() -> None:
    """sqrt(2 r) and sqrt(2) sqrt(r) are the same scalar."""
    radicand = radsum_add(radsum(*radical_power(5, 2)), radsum(2))
    doubled = ScalarExpr.surd(radsum_scale(radicand, QQ(2)))
    assert doubled == ScalarExpr.radical(2, 2) * ScalarExpr.surd(radicand)


def test_surd_of_rational_is_a_radical() -> None:
    """Radicands without a nested root become plain radicals."""
    assert ScalarExpr.surd(radsum(4)) == ScalarExpr.number(2)
    assert ScalarExpr.surd(radsum(8)) == ScalarExpr.radical(8, 2)
    with pytest.raises(ValueError):
        ScalarExpr.surd(radsum(-1, radical_power(2, 2)[1]))
