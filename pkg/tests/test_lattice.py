"""Tests for mode lattices and spacetime points."""

import pytest
from sympy import QQ

from gradedfields.exceptions import LatticeMismatchError, MasslessError, UnknownSectorError
from gradedfields.lattice import FieldPoint, ModeLattice
from gradedfields.scalar import ScalarExpr


@pytest.fixture
def lattice() -> ModeLattice:
    """Two modes of |p|**2 = 9 with the default masses."""
    return ModeLattice.build([("1", "2", "2"), ("-2", "2", "1")], scalar=1, dirac=4)


def test_build_assigns_ids_in_order(lattice: ModeLattice) -> None:
    """Ids follow the input order and momenta are rationals."""
    assert [m.id for m in lattice.modes] == [0, 1]
    assert lattice.mode(1).momentum == (QQ(-2), QQ(2), QQ(1))
    assert lattice.mode(0).squared_norm == QQ(9)
    with pytest.raises(KeyError):
        lattice.mode(7)


def test_duplicate_momenta_are_rejected() -> None:
    """A momentum may appear once."""
    with pytest.raises(ValueError):
        ModeLattice.build([(1, 0, 0), (1, 0, 0)])


def test_massless_sectors_reject_masses() -> None:
    """Gauge and ghost quanta are massless."""
    with pytest.raises(ValueError):
        ModeLattice.build([(1, 0, 0)], ghost=1)


def test_masses_and_aliases(lattice: ModeLattice) -> None:
    """Fermions share the scalar mass, massless sectors report zero."""
    assert lattice.mass("fermion") == lattice.mass("scalar") == QQ(1)
    assert lattice.mass("ghost") == QQ(0)
    with pytest.raises(UnknownSectorError):
        ModeLattice.build([(1, 0, 0)]).mass("dirac")


def test_rational_energies(lattice: ModeLattice) -> None:
    """m = 4 and |p| = 3 give p0 = 5; the massless sectors give 3."""
    assert lattice.energy_scalar(0, "dirac") == 5
    assert lattice.energy_scalar(1, "ghost") == 3
    assert lattice.covariant(0, "dirac", 0) == 5
    assert lattice.covariant(1, "dirac", 3) == 1


def test_irrational_energy_weight(lattice: ModeLattice) -> None:
    """2 w**2 p0 = 1 for p0 = sqrt(10)."""
    weight = lattice.weight(0, "scalar")
    assert weight * weight * 2 * lattice.energy_scalar(0, "scalar") == 1
    assert lattice.inverse_energy(0, "scalar") * lattice.energy_scalar(0, "scalar") == 1


def test_zero_mode_of_massless_sector() -> None:
    """The zero momentum has no massless energy and is dropped for those sectors."""
    lattice = ModeLattice.build([(0, 0, 0), (1, 0, 0)], scalar=1)
    with pytest.raises(MasslessError):
        lattice.energy(0, "ghost")
    assert [m.id for m in lattice.without_zero_mode().modes] == [1]


def test_symmetrized(lattice: ModeLattice) -> None:
    """Closing under p -> -p keeps the original ids and masses."""
    assert not lattice.is_symmetric()
    closed = lattice.symmetrized()
    assert closed.is_symmetric()
    assert len(closed.modes) == 4
    assert closed.modes[:2] == lattice.modes
    assert closed.mass("dirac") == QQ(4)


def test_ensure_same(lattice: ModeLattice) -> None:
    """Mixing lattices is an error."""
    lattice.ensure_same(ModeLattice.build([("1", "2", "2"), ("-2", "2", "1")], scalar=1, dirac=4))
    with pytest.raises(LatticeMismatchError):
        lattice.ensure_same(lattice.symmetrized())


def test_grid() -> None:
    """A radius-one grid has 27 symmetric modes."""
    grid = ModeLattice.grid(1, scalar=1)
    assert len(grid.modes) == 27
    assert grid.is_symmetric()


def test_field_point_arithmetic() -> None:
    """Points form a group of linear forms."""
    x, y = FieldPoint.symbolic("x"), FieldPoint.symbolic("y")
    assert x - x == FieldPoint.origin()
    assert -(x - y) == y - x
    assert (x - y).variables() == {"x0", "x1", "x2", "x3", "y0", "y1", "y2", "y3"}
    assert x.spatial().variables() == {"x1", "x2", "x3"}
    assert FieldPoint.symbolic("y", time_of=x).t == x.t


def test_delta_at_origin(lattice: ModeLattice) -> None:
    """The lattice delta at zero distance counts the modes."""
    assert lattice.delta(FieldPoint.origin()) == ScalarExpr.number(2)


def test_describe(lattice: ModeLattice) -> None:
    """Rows list the momentum and one energy per configured sector."""
    rows = lattice.describe()
    assert rows[0]["momentum"] == ["1", "2", "2"]
    assert rows[0]["energy.dirac"] == "5"
    assert set(rows[1]) == {"id", "momentum", "energy.dirac", "energy.scalar"}
