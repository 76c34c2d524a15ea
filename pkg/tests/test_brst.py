"""Tests for the BRST derivation and its currents."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedfields.brst import (
    TheorySpec,
    brst_components,
    brst_current_equality,
    brst_S,
    fp_current,
    free_ghost_lagrangian,
    ghost_lagrangian,
    ghost_lagrangian_decompose,
    matter_gauge_lagrangian,
    noether_current,
    on_shell,
    variation,
)
from gradedfields.exceptions import NotASymmetryError, UnknownCoordinateError
from gradedfields.fiber import FiberCoord, FiberPoly, horizontal_diff, random_poly
from gradedfields.graded import parity_of
from gradedfields.lie import preset
from gradedfields.scalar import ScalarExpr


@pytest.fixture(scope="module")
def su2() -> TheorySpec:
    """Non-abelian theory with a doublet."""
    return TheorySpec(preset("su2"))


@pytest.fixture(scope="module")
def u1() -> TheorySpec:
    """Abelian theory."""
    return TheorySpec(preset("u1"))


def test_coordinates(su2: TheorySpec) -> None:
    """Names and index ranges are checked."""
    assert su2.dim == 3
    assert su2.fiber_dim == 2
    assert su2.coord("A", 2, 3, jet=(0,)).parity == 0
    assert su2.coord("omegabar", 1).odd
    with pytest.raises(UnknownCoordinateError):
        su2.coord("B", 0)
    with pytest.raises(UnknownCoordinateError):
        su2.coord("psi", 0, 2)
    with pytest.raises(UnknownCoordinateError):
        su2.coord("omega", 0, jet=(4,))
    assert len(su2.base_coords()) == 2 * 4 * 2 + 3 * (4 + 3)


def test_elementary_components(su2: TheorySpec) -> None:
    """S omegabar = n, S n = 0 and antifields are invariant."""
    assert brst_S(su2.poly("omegabar", 1), su2) == su2.poly("n", 1)
    assert brst_S(su2.poly("n", 1), su2).is_zero()
    antifield = FiberPoly.coord(su2.coord("A", 0, 0, antifield=True))
    assert brst_S(antifield, su2).is_zero()


def test_ghost_component(su2: TheorySpec) -> None:
    """S omega^0 = omega^1 omega^2 for epsilon constants."""
    assert brst_S(su2.poly("omega", 0), su2) == su2.poly("omega", 1) * su2.poly("omega", 2)


def test_unknown_coordinates_are_refused(su2: TheorySpec) -> None:
    """A polynomial outside the theory has no BRST image."""
    stranger = FiberCoord("psi", (0, 5), parity=1)
    with pytest.raises(UnknownCoordinateError):
        brst_S(FiberPoly.coord(stranger), su2)
    with pytest.raises(UnknownCoordinateError):
        brst_components(su2, [stranger])


def test_s_is_odd(su2: TheorySpec) -> None:
    """S changes the parity."""
    assert parity_of(brst_S(su2.poly("A", 0, 1), su2)) == "odd"
    assert parity_of(brst_S(su2.poly("psi", 0, 1), su2)) == "even"


@pytest.mark.parametrize("name", ["psi", "psibar", "A", "omega", "omegabar", "n"])
def test_s_is_nilpotent_on_coordinates(su2: TheorySpec, name: str) -> None:
    """S squares to zero on every coordinate and its first jets."""
    for c in su2.base_coords():
        if c.name != name:
            continue
        for jet in ((), (0,), (2,)):
            f = FiberPoly.coord(c.base if not jet else c.prolonged(jet[0]))
            assert brst_S(brst_S(f, su2), su2).is_zero(), str(f)


_SU2 = TheorySpec(preset("su2"))


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False))
def test_s_is_nilpotent_on_polynomials(rng: random.Random) -> None:
    """S**2 vanishes on random polynomials of fields, ghosts and first jets."""
    coords = [c for c in _SU2.base_coords() if not c.antifield]
    coords += [c.prolonged(1) for c in coords[:4]]
    f = random_poly(rng, coords, max_degree=3, max_terms=3)
    assert brst_S(brst_S(f, _SU2), _SU2).is_zero()


def test_corrupted_constants_break_nilpotency() -> None:
    """A single wrong structure constant spoils S**2 on the gauge field."""
    theory = TheorySpec(preset("su2").corrupted(0, 1, 2))
    squares = [brst_S(brst_S(theory.poly("A", i, lam), theory), theory) for i in range(3) for lam in range(4)]
    assert any(not square.is_zero() for square in squares)


def test_variation_prolongs_to_jets(u1: TheorySpec) -> None:
    """Jets transform with the total derivative of the base component."""
    components = {u1.coord("A", 0, 1): u1.poly("omega", 0)}
    assert variation(u1.poly("A", 0, 1, jet=(2,)), components) == u1.poly("omega", 0, jet=(2,))
    assert variation(u1.poly("n", 0), components).is_zero()


@pytest.mark.parametrize("name", ["u1", "su2"])
def test_ghost_lagrangian_decomposes(name: str) -> None:
    """L_ghost = S K + d_H M independently of xi."""
    report = ghost_lagrangian_decompose(TheorySpec(preset(name)))
    assert report.holds
    assert report.xi_residual.is_zero()


@pytest.mark.parametrize("xi", [0, 1, 3])
def test_ghost_lagrangian_at_a_fixed_gauge_parameter(xi: int) -> None:
    """A numeric xi enters the n n term and the decomposition still holds."""
    theory = TheorySpec(preset("su2"), ScalarExpr.number(xi))
    report = ghost_lagrangian_decompose(theory)
    assert report.holds
    feynman = ghost_lagrangian(TheorySpec(preset("su2"), ScalarExpr.number(1)))
    assert (report.lagrangian == feynman) == (xi == 1)
    assert report.lagrangian.map_coefficients(lambda c: c.diff_symbol("xi")).is_zero()


def test_free_ghost_lagrangian_is_abelian_limit(u1: TheorySpec) -> None:
    """Without structure constants the ghost kinetic term is free."""
    difference = ghost_lagrangian(u1) - free_ghost_lagrangian(u1)
    assert all(c.name == "n" or c.name == "A" for word in difference.terms for c in word)


def test_matter_lagrangian_is_invariant(u1: TheorySpec) -> None:
    """S L_0 = 0."""
    assert brst_S(matter_gauge_lagrangian(u1), u1).is_zero()


def test_fp_current(u1: TheorySpec) -> None:
    """The ghost-number current has the closed form g^ll (omegabar_,l omega - omegabar omega_,l)."""
    current = fp_current(u1, free_ghost_lagrangian(u1))
    assert len(current) == 4
    omega, omegabar = u1.poly("omega", 0), u1.poly("omegabar", 0)
    expected = omegabar * u1.poly("omega", 0, jet=(1,)) - u1.poly("omegabar", 0, jet=(1,)) * omega
    assert current[1] == expected


def test_current_conservation_on_shell(u1: TheorySpec) -> None:
    """The free FP current is conserved once the wave equation holds."""
    current = fp_current(u1, free_ghost_lagrangian(u1))
    divergence = FiberPoly.zero()
    for lam, component in enumerate(current):
        divergence = divergence + horizontal_diff(component, lam)
    coords = [u1.coord("omega", 0), u1.coord("omegabar", 0)]
    assert on_shell(divergence, coords).is_zero()


def test_noether_current_checks_the_symmetry(u1: TheorySpec) -> None:
    """A non-symmetry is reported with its residual."""
    with pytest.raises(NotASymmetryError):
        noether_current({u1.coord("n", 0): u1.poly("n", 0)}, ghost_lagrangian(u1))
    with pytest.raises(ValueError):
        noether_current({}, ghost_lagrangian(u1), order=3)


def test_brst_currents_agree(u1: TheorySpec) -> None:
    """The currents of L_ghost and S K coincide."""
    assert all(entry.is_zero() for entry in brst_current_equality(u1))
