"""Tests for spatial integrals of normal-ordered bilinears."""

import pytest

from gradedfields.exceptions import UnknownSectorError
from gradedfields.functionals import (
    dirac_charge,
    fp_current_integral,
    four_momentum,
    free_hamiltonian,
    ghost_hamiltonian_density,
    normal_product,
    number_operator,
    spatial_integral,
    split_stationary,
)
from gradedfields.graded import GradedExpr, absorb, emit
from gradedfields.lattice import ModeLattice
from gradedfields.scalar import ScalarExpr, radsum


@pytest.fixture(
    params=[
        pytest.param(3, id="dirac-mass-3"),
        pytest.param(4, id="dirac-mass-4"),
    ]
)
def lattice(request: pytest.FixtureRequest) -> ModeLattice:
    """Two modes; Dirac energies are 3 sqrt(2), 5 at mass 3 and 5, 4 sqrt(2) at mass 4."""
    return ModeLattice.build([(0, 0, 3), (4, 0, 0)], scalar=4, dirac=request.param)


def test_number_operator() -> None:
    """Particles count as adag a, antiparticles with raised and lowered indices swapped."""
    assert number_operator("scalar", 0) == GradedExpr.word(emit("scalar", 0), absorb("scalar", 0))
    antiparticles = number_operator("dirac", 1, 1, particle=False)
    assert {(g.species, g.position) for g in antiparticles.generators()} == {("emit", "upper"), ("absorb", "lower")}


def test_normal_product_drops_contractions() -> None:
    """:a adag: = adag a."""
    product = normal_product(GradedExpr.generator(absorb("scalar", 0)), GradedExpr.generator(emit("scalar", 0)))
    assert product == number_operator("scalar", 0)


def test_spatial_integral_keeps_zero_frequency() -> None:
    """Waves with a spatial frequency integrate to zero, constants survive."""
    a = GradedExpr.generator(absorb("scalar", 0))
    wave = ScalarExpr.exp_i({"x1": radsum(2)})
    density = a * wave + a * 3
    assert spatial_integral(density) == a * 3


def test_split_stationary() -> None:
    """Time-dependent phases are separated."""
    a = GradedExpr.generator(absorb("scalar", 0))
    moving = a * ScalarExpr.exp_i({"x0": radsum(1)})
    stationary, oscillating = split_stationary(moving + a)
    assert stationary == a
    assert oscillating == moving


def test_dirac_charge(lattice: ModeLattice) -> None:
    """The integrated Dirac charge counts particles minus antiparticles."""
    result = dirac_charge(lattice)
    assert result.match, str(result.residual)
    assert result.reduced.scalar_part().is_zero()


@pytest.mark.parametrize("sector", ["scalar", "fermion", "dirac", "ghost"])
def test_free_hamiltonians(lattice: ModeLattice, sector: str) -> None:
    """Each free Hamiltonian reduces to energies times number operators."""
    assert free_hamiltonian(sector, lattice, internal_dim=2 if sector == "ghost" else 1).match


@pytest.mark.parametrize("sector", ["dirac", "ghost"])
@pytest.mark.parametrize("index", range(4))
def test_four_momentum(lattice: ModeLattice, sector: str, index: int) -> None:
    """P_l reduces to p_l times number operators."""
    assert four_momentum(sector, index, lattice).match


def test_p0_is_hamiltonian(lattice: ModeLattice) -> None:
    """The time component of the 4-momentum is the Hamiltonian."""
    assert four_momentum("dirac", 0, lattice).stationary == free_hamiltonian("dirac", lattice).stationary


def test_ghost_hamiltonian_is_a_legendre_transform(lattice: ModeLattice) -> None:
    """Pi omegabar_{,0} + omegabar_{,0} omega_{,0} - l integrates to the ghost P_0."""
    hamiltonian = free_hamiltonian("ghost", lattice, internal_dim=2)
    assert hamiltonian.match, str(hamiltonian.residual)
    assert hamiltonian.reduced == spatial_integral(ghost_hamiltonian_density(lattice, 2))
    assert hamiltonian.reduced == four_momentum("ghost", 0, lattice, internal_dim=2).reduced


def test_four_momentum_rejects_invalid_input(lattice: ModeLattice) -> None:
    """Scalars have no 4-momentum here and indices stop at three."""
    with pytest.raises(UnknownSectorError):
        four_momentum("scalar", 0, lattice)
    with pytest.raises(IndexError):
        four_momentum("dirac", 4, lattice)
    with pytest.raises(UnknownSectorError):
        free_hamiltonian("gauge", lattice)


@pytest.mark.parametrize("index", range(4))
def test_fp_current(lattice: ModeLattice, index: int) -> None:
    """The Faddeev-Popov charge and its spatial components close."""
    result = fp_current_integral(index, lattice, internal_dim=2)
    assert result.match
    assert result.oscillation_allowed == (index != 0)


def test_fp_current_on_symmetric_lattice(lattice: ModeLattice) -> None:
    """Pair terms oscillate but the stationary part still matches."""
    result = fp_current_integral(1, lattice.symmetrized())
    assert result.match
    assert split_stationary(result.oscillating)[0].is_zero()
