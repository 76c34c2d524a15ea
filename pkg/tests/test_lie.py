"""Tests for the internal Lie algebra data."""

import pytest
from sympy import I, ImmutableMatrix, Rational, eye

from gradedfields.exceptions import NonClosureError
from gradedfields.lie import (
    LieData,
    jacobi_residual,
    lower_index,
    preset,
    raise_index,
    signature,
    structure_constants,
)


def test_su2_constants_are_levi_civita() -> None:
    """With l_I = -i sigma_I / 2 the constants are epsilon_IJH."""
    su2 = preset("su2")
    assert su2.dim == 3
    assert su2.fiber_dim == 2
    assert su2.constant(0, 1, 2) == 1
    assert su2.constant(0, 2, 1) == -1
    assert su2.constant(0, 0, 1).is_zero()


def test_trace_metric_is_half_identity() -> None:
    """H = delta / 2 and G = -H on the presets."""
    g, h = preset("su2").metrics
    assert h == eye(3) / 2
    assert g == -h


@pytest.mark.parametrize("name", ["u1", "su2", "u2", "su3"])
def test_trace_metric_is_a_multiple_of_the_delta(name: str) -> None:
    """Contracting algebra indices with the delta only rescales the trace metric."""
    lie = preset(name)
    _, h = lie.metrics
    assert h[0, 0] != 0
    assert h == h[0, 0] * eye(lie.dim)


def test_u1_is_abelian() -> None:
    """The one-dimensional algebra has no constants."""
    assert preset("u1").abelian
    assert not preset("su3").abelian


@pytest.mark.parametrize("name", ["u1", "su2", "u2", "su3"])
def test_presets_satisfy_jacobi(name: str) -> None:
    """Exact constants of the presets pass Jacobi and antisymmetry."""
    data = preset(name)
    assert jacobi_residual(data.constants) < 1e-12
    assert data.antisymmetry_residual() == 0


def test_unknown_preset() -> None:
    """Unknown names list the known presets."""
    with pytest.raises(KeyError, match="su2"):
        preset("so10")


def test_preset_is_cached() -> None:
    """Presets are computed once."""
    assert preset("su3") is preset("su3")


def test_hermitian_generators_are_rejected() -> None:
    """Generators must be anti-Hermitian."""
    with pytest.raises(ValueError):
        LieData.from_generators("bad", [ImmutableMatrix([[1, 0], [0, -1]])])


def test_non_closure() -> None:
    """Two generators whose bracket leaves their span."""
    x = ImmutableMatrix([[0, 1], [-1, 0]])
    y = ImmutableMatrix([[I, 0], [0, -I]])
    with pytest.raises(NonClosureError):
        structure_constants([x, y])


def test_signature_of_complexification() -> None:
    """L + iL splits into equal positive and negative halves."""
    assert signature(preset("su2").generators) == (3, 3)


def test_index_gymnastics() -> None:
    """Raising undoes lowering."""
    _, h = preset("su2").metrics
    vector = [Rational(1), Rational(-2), Rational(3)]
    assert lower_index(vector, h) == [Rational(1, 2), -1, Rational(3, 2)]
    assert raise_index(lower_index(vector, h), h) == vector


def test_lowered_constants_are_totally_antisymmetric() -> None:
    """c_IJH changes sign under any transposition."""
    lowered = preset("su3").lowered_constants()
    for i in range(8):
        for j in range(8):
            for h in range(8):
                assert lowered[i][j][h] == -lowered[j][i][h] == -lowered[i][h][j]


def test_corrupted_constants() -> None:
    """Flipping one constant breaks antisymmetry and leaves the original intact."""
    su2 = preset("su2")
    broken = su2.corrupted(0, 1, 2)
    assert broken.name == "su2-corrupted"
    assert broken.constant(0, 1, 2) == -1
    assert broken.antisymmetry_residual() == pytest.approx(2.0)
    assert su2.constant(0, 1, 2) == 1
    assert su2.corrupted(0, 1, 2, value=1).constant(0, 1, 2) == 2
