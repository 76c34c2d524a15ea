"""Tests for the graded operator algebra."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedfields.exceptions import MixedParityError, UnknownSectorError
from gradedfields.graded import (
    MODIFIED,
    GradedExpr,
    OpGen,
    absorb,
    contraction,
    emit,
    koszul_product,
    normal_order,
    parity_of,
    super_bracket,
)
from gradedfields.scalar import ScalarExpr


def _g(gen: OpGen) -> GradedExpr:
    return GradedExpr.generator(gen)


def test_opgen_validates() -> None:
    """Unknown sectors, species and positions are rejected."""
    with pytest.raises(UnknownSectorError):
        absorb("photon", 0)
    with pytest.raises(ValueError):
        OpGen("scalar", "create", "upper", 0)  # type: ignore[arg-type]
    with pytest.raises(ValueError):
        OpGen("scalar", "absorb", "middle", 0)  # type: ignore[arg-type]


def test_str() -> None:
    """Printed names show the letter, dagger, index position and mode."""
    assert str(_g(absorb("scalar", 1))) == "a^0(p1)"
    assert str(_g(emit("scalar", 1))) == "a†_0(p1)"
    assert str(_g(emit("dirac", 0, 2, "upper"))) == "c†^2(p0)"
    assert str(GradedExpr.zero()) == "0"


def test_contraction_values() -> None:
    """Only matching absorption and emission pairs contract."""
    assert contraction(absorb("scalar", 0), emit("scalar", 0)) == 1
    assert contraction(emit("scalar", 0), absorb("scalar", 0)) == 0
    assert contraction(absorb("scalar", 0), emit("scalar", 1)) == 0
    assert contraction(absorb("ghost", 0, 1, "upper"), emit("ghost", 0, 1, "upper")) == 0
    assert contraction(absorb("gauge", 0, 0), emit("gauge", 0, 0)) == 1
    assert contraction(absorb("gauge", 0, 2), emit("gauge", 0, 2)) == -1


@pytest.mark.parametrize("sector", ["scalar", "fermion", "dirac", "ghost", "nl"])
def test_elementary_brackets(sector: str) -> None:
    """[a(p), a+(p)} = 1 in every sector and vanishes between distinct modes."""
    assert super_bracket(_g(absorb(sector, 0)), _g(emit(sector, 0))) == GradedExpr.scalar(1)
    assert super_bracket(_g(absorb(sector, 0)), _g(emit(sector, 1))).is_zero()


def test_gauge_spatial_polarisation_has_negative_norm() -> None:
    """Spatial gauge quanta follow the metric sign."""
    bracket = super_bracket(_g(absorb("gauge", 0, 1)), _g(emit("gauge", 0, 1)))
    assert bracket == GradedExpr.scalar(-1)


def test_koszul_exchange() -> None:
    """Odd operators anticommute when they do not contract, even ones commute."""
    f0, f1 = _g(emit("fermion", 0)), _g(absorb("fermion", 1))
    assert f0 * f1 == -(f1 * f0)
    s0, s1 = _g(emit("scalar", 0)), _g(absorb("scalar", 1))
    assert s0 * s1 == s1 * s0


def test_fermionic_squares_vanish() -> None:
    """An odd generator squares to zero."""
    odd = _g(emit("ghost", 2, 1))
    assert (odd * odd).is_zero()
    even = _g(emit("gauge", 2, 1))
    assert not (even * even).is_zero()


def test_physical_reordering_leaves_contraction() -> None:
    """a a+ = a+ a + 1 under the physical rule, without the 1 under the modified one."""
    a, a_dag = absorb("scalar", 0), emit("scalar", 0)
    assert _g(a) * _g(a_dag) == GradedExpr.word(a_dag, a) + 1
    assert koszul_product(_g(a), _g(a_dag), MODIFIED) == GradedExpr.word(a_dag, a)


def test_normal_order() -> None:
    """Emissions move left with their Koszul sign and no contraction."""
    assert normal_order(_g(absorb("fermion", 0)), _g(emit("fermion", 0))) == -GradedExpr.word(
        emit("fermion", 0), absorb("fermion", 0)
    )
    ordered = normal_order(_g(absorb("scalar", 0)), _g(emit("scalar", 0)))
    assert normal_order(ordered) == ordered


def test_normal_order_of_a_built_product_keeps_contractions() -> None:
    """a adag built with the physical rule stays adag a + 1; factors passed separately give adag a."""
    a, adag = _g(absorb("scalar", 0)), _g(emit("scalar", 0))
    built = a * adag
    assert normal_order(built) == built
    assert normal_order(built) - normal_order(a, adag) == GradedExpr.scalar(1)


def test_parity() -> None:
    """Parity is shared by all terms; scalars are even."""
    assert parity_of(ScalarExpr.one()) == "even"
    assert parity_of(_g(emit("dirac", 0))) == "odd"
    assert parity_of(_g(emit("dirac", 0)) * _g(emit("ghost", 0))) == "even"
    mixed = _g(emit("dirac", 0)) + _g(emit("scalar", 0))
    assert parity_of(mixed) == "mixed"
    with pytest.raises(TypeError):
        parity_of(3)
    with pytest.raises(MixedParityError):
        super_bracket(mixed, _g(emit("scalar", 0)))


def test_adjoint() -> None:
    """Adjoints swap absorption and emission and conjugate coefficients."""
    i = ScalarExpr.imaginary_unit()
    a = GradedExpr.generator(absorb("scalar", 0), i)
    assert a.adjoint() == GradedExpr.generator(emit("scalar", 0), -i)
    word = _g(emit("dirac", 0)) * _g(absorb("dirac", 1))
    assert word.adjoint().adjoint() == word


def test_scalar_multiplication() -> None:
    """Scalars multiply from either side."""
    a = _g(absorb("scalar", 0))
    assert 2 * a == a * 2 == a + a
    assert (a - a).is_zero()


_POOL = [
    absorb("scalar", 0),
    emit("scalar", 0),
    absorb("fermion", 0),
    emit("fermion", 0),
    absorb("ghost", 1, 1),
    emit("ghost", 1, 1),
    absorb("gauge", 0, 1),
    emit("gauge", 0, 1),
]

_words = st.lists(st.sampled_from(_POOL), min_size=1, max_size=3).map(lambda gens: GradedExpr.word(*gens))


@settings(max_examples=60, deadline=None)
@given(_words, _words, _words)
def test_product_is_associative(a: GradedExpr, b: GradedExpr, c: GradedExpr) -> None:
    """Canonical reordering does not depend on the grouping."""
    assert (a * b) * c == a * (b * c)


@settings(max_examples=60, deadline=None)
@given(_words, _words)
def test_super_antisymmetry(a: GradedExpr, b: GradedExpr) -> None:
    """[a, b} = -(-1)**(|a||b|) [b, a}."""
    sign = -1 if parity_of(a) == parity_of(b) == "odd" else 1
    assert super_bracket(a, b) == super_bracket(b, a) * (-sign)


@settings(max_examples=40, deadline=None)
@given(_words, _words, _words)
def test_graded_jacobi(a: GradedExpr, b: GradedExpr, c: GradedExpr) -> None:
    """The super-bracket is a graded derivation of itself."""
    sign = -1 if parity_of(a) == parity_of(b) == "odd" else 1
    left = super_bracket(a, super_bracket(b, c))
    right = super_bracket(super_bracket(a, b), c) + super_bracket(b, super_bracket(a, c)) * sign
    assert left == right
