"""Tests for graded fiber polynomials and their calculus."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import QQ

from gradedfields.exceptions import JetOrderError, MixedParityError
from gradedfields.fiber import (
    FiberCoord,
    FiberPoly,
    bv_bracket,
    bv_laplacian,
    euler_lagrange,
    horizontal_diff,
    left_deriv,
    partial,
    random_poly,
    right_deriv,
    substitute,
)
from gradedfields.graded import parity_of
from gradedfields.scalar import ScalarExpr

A = FiberCoord("a", parity=1)
B = FiberCoord("b", parity=1)
PHI = FiberCoord("phi")
CHI = FiberCoord("chi")


def _p(c: FiberCoord) -> FiberPoly:
    return FiberPoly.coord(c)


def test_coordinates() -> None:
    """Jets are sorted, antifields flip parity and orders stop at two."""
    assert FiberCoord("phi", jet=(3, 1)).jet == (1, 3)
    assert A.odd and not A.dual().odd
    assert PHI.dual().odd
    assert PHI.prolonged(2).prolonged(0) == FiberCoord("phi", jet=(0, 2))
    assert PHI.prolonged(1).base == PHI
    with pytest.raises(JetOrderError):
        FiberCoord("phi", jet=(0, 1, 2))
    assert str(FiberCoord("A", (1, 0), (0,), antifield=True)) == "A~[1,0]_0"


def test_koszul_signs() -> None:
    """Odd coordinates anticommute and square to zero."""
    assert _p(A) * _p(B) == -(_p(B) * _p(A))
    assert (_p(A) * _p(A)).is_zero()
    assert _p(PHI) * _p(CHI) == _p(CHI) * _p(PHI)
    assert FiberPoly.monomial(B, A) == -FiberPoly.monomial(A, B)


def test_degree_and_parity() -> None:
    """Homogeneous parts are selected by parity."""
    f = FiberPoly.monomial(A, PHI) + FiberPoly.monomial(PHI, CHI, coefficient=2)
    assert f.degree() == 2
    assert parity_of(f) == "mixed"
    assert parity_of(f.homogeneous(1)) == "odd"
    assert f.coords() == {A, PHI, CHI}


def test_left_derivative() -> None:
    """d>_b (a b) = -a."""
    ab = _p(A) * _p(B)
    assert left_deriv(ab, A) == _p(B)
    assert left_deriv(ab, B) == -_p(A)
    assert left_deriv(_p(PHI) * _p(PHI), PHI) == _p(PHI) * 2


def test_right_derivative_conventions() -> None:
    """Both conventions for the right derivative of an even product."""
    ab = _p(A) * _p(B)
    assert right_deriv(ab, B, convention="left") == _p(A)
    assert right_deriv(ab, B) == -_p(A)
    assert partial(ab, B) == _p(A)
    assert partial(ab, B, convention="left") == -_p(A)


def test_horizontal_diff_is_leibniz() -> None:
    """d_0 (phi chi) = phi_0 chi + phi chi_0."""
    product = _p(PHI) * _p(CHI)
    expected = _p(PHI.prolonged(0)) * _p(CHI) + _p(PHI) * _p(CHI.prolonged(0))
    assert horizontal_diff(product, 0) == expected
    with pytest.raises(JetOrderError):
        horizontal_diff(_p(FiberCoord("phi", jet=(1, 2))), 0)


def test_bv_laplacian() -> None:
    """The Laplacian pairs a field with its antifield."""
    assert bv_laplacian(_p(PHI) * _p(PHI.dual())) == FiberPoly.constant(1)
    assert bv_laplacian(_p(PHI) * _p(CHI.dual())).is_zero()


def test_bv_bracket() -> None:
    """{phi, phi~} = 1 and mixed parities are refused."""
    assert bv_bracket(_p(PHI), _p(PHI.dual())) == FiberPoly.constant(1)
    with pytest.raises(MixedParityError):
        bv_bracket(_p(PHI) + _p(A), _p(PHI.dual()))


def test_substitute() -> None:
    """Coordinates are replaced in place."""
    f = _p(PHI) * _p(A)
    assert substitute(f, {PHI: _p(CHI) * 3}) == _p(CHI) * _p(A) * 3


def test_euler_lagrange() -> None:
    """L = phi_0**2 / 2 gives -phi_00."""
    lagrangian = FiberPoly.monomial(PHI.prolonged(0), PHI.prolonged(0), coefficient=ScalarExpr.number(QQ(1, 2)))
    assert euler_lagrange(lagrangian, PHI) == -_p(FiberCoord("phi", jet=(0, 0)))


def test_random_poly() -> None:
    """Random polynomials respect the requested parity and degree."""
    rng = random.Random(7)
    for _ in range(20):
        f = random_poly(rng, [A, B, PHI, CHI], max_degree=3, parity=1)
        assert f.is_zero() or parity_of(f) == "odd"
        assert f.degree() <= 3


_BV = [A, PHI, A.dual(), PHI.dual(), CHI, CHI.dual()]


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_laplacian_squares_to_zero(rng: random.Random) -> None:
    """Delta is nilpotent on random polynomials."""
    f = random_poly(rng, _BV, max_degree=4)
    assert bv_laplacian(bv_laplacian(f)).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_bracket_is_graded_antisymmetric(rng: random.Random) -> None:
    """{f, g} = -(-1)**((|f|+1)(|g|+1)) {g, f}."""
    f_parity, g_parity = rng.randint(0, 1), rng.randint(0, 1)
    f = random_poly(rng, _BV, max_degree=3, parity=f_parity)
    g = random_poly(rng, _BV, max_degree=3, parity=g_parity)
    sign = -1 if (f_parity + 1) * (g_parity + 1) % 2 else 1
    assert bv_bracket(f, g) == bv_bracket(g, f) * (-sign)
