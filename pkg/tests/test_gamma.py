"""Tests for gamma matrices, shell projectors and boosts."""

from collections.abc import Sequence

import numpy as np
import pytest
from sympy import Rational, eye, zeros

from gradedfields.exceptions import MasslessError
from gradedfields.gamma import (
    METRIC,
    OnShellMomentum,
    boost_K,
    boost_K_array,
    boost_K_inverse,
    boost_K_rows,
    dirac_frame,
    gamma,
    gamma_array,
    shell_projectors,
    slash,
    to_scalar_rows,
)
from gradedfields.scalar import ScalarExpr


@pytest.fixture
def momentum() -> OnShellMomentum:
    """|p| = 3 at m = 4, so E = 5."""
    return OnShellMomentum((Rational(0), Rational(0), Rational(3)), Rational(4))


@pytest.mark.parametrize("mu", range(4))
@pytest.mark.parametrize("nu", range(4))
def test_clifford(mu: int, nu: int) -> None:
    """{gamma^mu, gamma^nu} = 2 g^mu nu."""
    expected = 2 * METRIC[mu] * eye(4) if mu == nu else zeros(4, 4)
    assert gamma(mu) * gamma(nu) + gamma(nu) * gamma(mu) == expected


def test_gamma_index_range() -> None:
    """Only spacetime indices exist."""
    with pytest.raises(IndexError):
        gamma(4)


def test_dirac_adjoint() -> None:
    """gamma^0 gamma^mu^H gamma^0 = gamma^mu."""
    for mu in range(4):
        assert gamma(0) * gamma(mu).H * gamma(0) == gamma(mu)


def test_numeric_gammas_match() -> None:
    """The float copies agree with the exact matrices."""
    assert np.allclose(gamma_array(2) @ gamma_array(2), -np.eye(4))


def test_energy(momentum: OnShellMomentum) -> None:
    """The energy is exact."""
    assert momentum.energy == 5
    assert momentum.covariant() == (5, 0, 0, 3)
    assert momentum.exact


def test_slash_squares_to_mass(momentum: OnShellMomentum) -> None:
    """pslash**2 = m**2 on the shell."""
    assert slash(momentum) * slash(momentum) == 16 * eye(4)


def test_projectors(momentum: OnShellMomentum) -> None:
    """The shell projectors are complementary idempotents of rank two."""
    plus, minus = shell_projectors(momentum)
    assert plus * plus == plus
    assert minus * minus == minus
    assert plus * minus == zeros(4, 4)
    assert plus + minus == eye(4)
    assert plus.trace() == 2


def test_boost_inverse(momentum: OnShellMomentum) -> None:
    """The boost of -p inverts the boost of p, and K(0) = 1."""
    assert (boost_K(momentum) * boost_K_inverse(momentum)).applyfunc(lambda e: e.expand()) == eye(4)
    rest = OnShellMomentum((Rational(0), Rational(0), Rational(0)), Rational(4))
    assert boost_K(rest) == eye(4)


def test_boost_preserves_dirac_adjoint(momentum: OnShellMomentum) -> None:
    """gamma^0 K^H gamma^0 K = 1."""
    boost = boost_K(momentum)
    assert (gamma(0) * boost.H * gamma(0) * boost).applyfunc(lambda e: e.expand()) == eye(4)


def test_frame(momentum: OnShellMomentum) -> None:
    """Boosted rest spinors lie in the positive and negative shell subspaces."""
    plus, _ = shell_projectors(momentum)
    u, v = dirac_frame(momentum)
    for column in u:
        assert (plus * column - column).is_zero_matrix
    for column in v:
        assert (plus * column).is_zero_matrix


def test_massless_dirac_quantities_are_rejected() -> None:
    """Boosts and projectors need a positive mass."""
    massless = OnShellMomentum((Rational(1), Rational(0), Rational(0)), Rational(0))
    with pytest.raises(MasslessError):
        boost_K(massless)
    with pytest.raises(MasslessError):
        shell_projectors(massless)
    with pytest.raises(MasslessError):
        boost_K_array([1.0, 0.0, 0.0], 0.0)


def test_numeric_boost() -> None:
    """Irrational momenta are handled numerically."""
    boost = boost_K_array([0.3, -1.7, 2.2], 1.5)
    g0 = gamma_array(0)
    assert np.allclose(g0 @ boost.conj().T @ g0 @ boost, np.eye(4), atol=1e-12)


def test_to_scalar_rows(momentum: OnShellMomentum) -> None:
    """Exact entries convert to scalars."""
    rows = to_scalar_rows(shell_projectors(momentum)[0])
    assert rows[0][0].to_complex() == pytest.approx(9 / 8)


def _product(left: Sequence[Sequence[ScalarExpr]], right: Sequence[Sequence[ScalarExpr]]) -> list[list[ScalarExpr]]:
    return [[sum((left[r][k] * right[k][c] for k in range(4)), ScalarExpr.zero()) for c in range(4)] for r in range(4)]


def test_boost_rows_match_exact_boost(momentum: OnShellMomentum) -> None:
    """With a rational energy the scalar rows are the sympy boost entry by entry."""
    assert boost_K_rows(momentum) == to_scalar_rows(boost_K(momentum))


def test_boost_rows_with_irrational_energy() -> None:
    """|p| = 3 at m = 3 gives E = 3 sqrt(2); K(p) K(-p) = 1 still reduces exactly."""
    p = OnShellMomentum((Rational(0), Rational(0), Rational(3)), Rational(3))
    opposite = OnShellMomentum((Rational(0), Rational(0), Rational(-3)), Rational(3))
    rows = boost_K_rows(p)
    product = _product(rows, boost_K_rows(opposite))
    for r in range(4):
        for c in range(4):
            assert product[r][c] == (ScalarExpr.one() if r == c else ScalarExpr.zero())
    numeric = boost_K_array([0.0, 0.0, 3.0], 3.0)
    assert np.allclose([[entry.to_complex() for entry in row] for row in rows], numeric, atol=1e-12)
