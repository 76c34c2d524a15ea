# -*- coding: utf-8 -*-
"""Truncated Fock-space matrices for the elementary operators.

Each mode slot ``(sector, mode, internal, particle)`` contributes one tensor
factor: a two-dimensional factor for fermionic slots, ``n_max + 1`` occupations
for bosonic ones. Fermionic ladders carry a Jordan-Wigner parity string over
the fermionic slots that precede them in the canonical generator order, so
the matrices reproduce the Koszul signs of :mod:`gradedfields.graded`.

Truncation breaks ``[a, adag] = 1`` on the top occupation. Comparisons are
therefore made on the *safe* subspace: basis states whose bosonic occupations
leave room for every emission the compared words can perform.
"""

__all__ = [
    "DEFAULT_DIM_CAP",
    "OracleSpace",
    "Slot",
    "bracket_residual",
    "build_operator",
    "flip_absorption",
    "hermiticity_residual",
    "integral_residual",
    "integrated_matrix",
    "negative_control",
    "product_residual",
    "represent",
    "residual",
    "spectrum",
]

import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, NamedTuple

import numpy as np
from scipy import linalg, sparse
from sympy import QQ

from gradedfields.exceptions import DimensionCapError, MissingSlotError, NonIntegrablePhaseError
from gradedfields.fields import conjugate_field, field
from gradedfields.graded import SECTOR_PARITY, GradedExpr, OpGen, koszul_product, parity_of
from gradedfields.lattice import FieldPoint, ModeLattice
from gradedfields.scalar import ScalarExpr, radsum_float

logger = logging.getLogger(__name__)

DEFAULT_DIM_CAP = 4096


class Slot(NamedTuple):
    """One tensor factor of the truncated space."""

    sector: str
    mode: int
    internal: int
    particle: bool

    @property
    def odd(self) -> bool:
        """Whether the slot is fermionic."""
        return bool(SECTOR_PARITY[self.sector])

    @property
    def key(self) -> tuple[str, int, int, int]:
        """Canonical order, matching the generator order of the graded algebra."""
        return (self.sector, self.mode, self.internal, 0 if self.particle else 1)

    @classmethod
    def of(cls, gen: OpGen) -> "Slot":
        """Slot a generator acts on."""
        return cls(gen.sector, gen.mode, gen.internal, gen.particle)


@dataclass(frozen=True)
class OracleSpace:
    """Tensor product of truncated slots.

    :raises DimensionCapError: when the total dimension exceeds ``dim_cap``
    """

    slots: tuple[Slot, ...]
    n_max: int = 3
    dim_cap: int = DEFAULT_DIM_CAP

    def __post_init__(self) -> None:
        if self.n_max < 1:
            raise ValueError(f"Boson truncation must be at least 1, got {self.n_max}")
        ordered = tuple(sorted(set(self.slots), key=lambda s: s.key))
        object.__setattr__(self, "slots", ordered)
        if self.dimension > self.dim_cap:
            raise DimensionCapError(
                f"Fock space of {len(ordered)} slots has dimension {self.dimension} > cap {self.dim_cap}"
            )

    @classmethod
    def for_expressions(cls, *exprs: GradedExpr, n_max: int = 3, dim_cap: int = DEFAULT_DIM_CAP) -> "OracleSpace":
        """Smallest space holding every generator of ``exprs``."""
        slots = {Slot.of(g) for e in exprs for g in e.generators()}
        return cls(tuple(slots), n_max, dim_cap)

    @property
    def dims(self) -> tuple[int, ...]:
        """Dimension of each slot in order."""
        return tuple(2 if s.odd else self.n_max + 1 for s in self.slots)

    @property
    def dimension(self) -> int:
        """Total dimension."""
        return math.prod(self.dims)

    def index(self, slot: Slot) -> int:
        """Position of ``slot``.

        :raises MissingSlotError: when the slot is absent
        """
        try:
            return self.slots.index(slot)
        except ValueError:
            raise MissingSlotError(f"No slot {slot} in the oracle space") from None

    @cached_property
    def occupations(self) -> np.ndarray:
        """Occupation numbers, one row per basis state and one column per slot."""
        if not self.slots:
            return np.zeros((1, 0), dtype=int)
        return np.stack(np.unravel_index(np.arange(self.dimension), self.dims), axis=1)

    def safe_mask(self, emissions: int) -> np.ndarray:
        """Basis states on which words with up to ``emissions`` bosonic emissions act exactly."""
        bosonic = [i for i, s in enumerate(self.slots) if not s.odd]
        if not bosonic:
            return np.ones(self.dimension, dtype=bool)
        return np.all(self.occupations[:, bosonic] <= self.n_max - emissions, axis=1)


def _ladder(odd: bool, n_max: int) -> sparse.csr_matrix:
    """Annihilation operator of a single slot."""
    if odd:
        return sparse.csr_matrix([[0.0, 1.0], [0.0, 0.0]])
    return sparse.diags(np.sqrt(np.arange(1, n_max + 1, dtype=float)), offsets=1, format="csr")


@lru_cache(maxsize=4096)
def build_operator(space: OracleSpace, gen: OpGen) -> sparse.csr_matrix:
    """Matrix of one generator.

    Gauge emissions with a spatial Lorentz index act as ``-adag`` so that the
    contraction carries the metric sign.

    :raises MissingSlotError: when the generator's slot is not in ``space``
    """
    position = space.index(Slot.of(gen))
    parity = sparse.csr_matrix(np.diag([1.0, -1.0]))
    matrix = sparse.identity(1, format="csr")
    for i, (slot, dim) in enumerate(zip(space.slots, space.dims, strict=True)):
        if i == position:
            ladder = _ladder(slot.odd, space.n_max)
            factor = ladder.T.tocsr() if gen.emits else ladder
        elif i < position and slot.odd and gen.odd:
            factor = parity
        else:
            factor = sparse.identity(dim, format="csr")
        matrix = sparse.kron(matrix, factor, format="csr")
    if gen.emits and gen.sector == "gauge" and gen.internal % 4:
        matrix = -matrix
    matrix.eliminate_zeros()
    return matrix


def represent(e: GradedExpr, space: OracleSpace, bindings: Mapping[str, Any] | None = None) -> sparse.csr_matrix:
    """Matrix of ``e``: each word becomes the ordered product of its generators.

    :param bindings: numeric values of coordinate variables and formal symbols
    :raises UnboundSymbolError: when a coefficient cannot be evaluated
    """
    total = sparse.csr_matrix((space.dimension, space.dimension), dtype=complex)
    for word, coefficient in e.terms.items():
        total = total + _word_matrix(space, word) * coefficient.to_complex(bindings)
    return total.tocsr()


def _word_matrix(space: OracleSpace, word: Sequence[OpGen]) -> sparse.csr_matrix:
    product = sparse.identity(space.dimension, dtype=complex, format="csr")
    for gen in word:
        product = product @ build_operator(space, gen)
    return product


def _axis_grid(density: GradedExpr, variable: str) -> list[float]:
    """Sample points along one axis on which every nonzero frequency of ``density`` averages to zero."""
    frequencies = []
    for coefficient in density.terms.values():
        for monomial in coefficient.terms:
            for name, value in monomial.phase:
                if name != variable:
                    continue
                if any(radical for radical, _ in value):
                    raise NonIntegrablePhaseError(f"Irrational frequency along {variable}")
                frequencies.append(sum((c for _, c in value), QQ(0)))
    frequencies = [f for f in frequencies if f]
    if not frequencies:
        return [0.0]
    period = math.lcm(*(int(f.denominator) for f in frequencies))
    count = 2 * max(abs(int(f.numerator)) * period // int(f.denominator) for f in frequencies) + 1
    return [2 * math.pi * period * k / count for k in range(count)]


def integrated_matrix(
    density: GradedExpr, space: OracleSpace, point: str = "x", bindings: Mapping[str, Any] | None = None
) -> sparse.csr_matrix:
    """Matrix of the spatial average of ``density`` over the coordinates of ``point``.

    Each coefficient is averaged numerically on a grid spanning one common period
    of its phases, independently of the symbolic spatial integral.

    :param bindings: values of the remaining coordinates, e.g. the time ``x0``
    """
    axes = [f"{point}{j}" for j in (1, 2, 3)]
    grids = {axis: np.asarray(_axis_grid(density, axis)) for axis in axes}
    origin = {**(bindings or {}), **dict.fromkeys(axes, 0.0)}
    total = sparse.csr_matrix((space.dimension, space.dimension), dtype=complex)
    for word, coefficient in density.terms.items():
        average = 0j
        for monomial, value in coefficient.terms.items():
            phase = dict(monomial.phase)
            weight = complex(np.prod([np.exp(1j * radsum_float(phase.get(a, ())) * grids[a]).mean() for a in axes]))
            average += weight * ScalarExpr({monomial: value}).to_complex(origin)
        total = total + _word_matrix(space, word) * average
    logger.debug("Averaged %d words over grids of %s points", len(density.terms), [len(g) for g in grids.values()])
    return total.tocsr()


def _bosonic_emissions(e: GradedExpr) -> int:
    """Largest number of bosonic emissions in a single word of ``e``."""
    return max((sum(1 for g in word if g.emits and not g.odd) for word in e.terms), default=0)


def _masked_max(matrix: Any, mask: np.ndarray, *, square: bool = False) -> float:
    block = sparse.csr_matrix(matrix)[:, np.flatnonzero(mask)]
    if square:
        block = block[np.flatnonzero(mask), :]
    if block.nnz == 0:
        return 0.0
    return float(np.abs(block.data).max())


def residual(
    symbolic: GradedExpr,
    reference: GradedExpr,
    space: OracleSpace,
    bindings: Mapping[str, Any] | None = None,
) -> float:
    """Largest entry of ``represent(symbolic) - represent(reference)`` on the safe subspace."""
    emissions = max(_bosonic_emissions(symbolic), _bosonic_emissions(reference))
    difference = represent(symbolic, space, bindings) - represent(reference, space, bindings)
    return _masked_max(difference, space.safe_mask(emissions))


def integral_residual(
    density: GradedExpr,
    reference: GradedExpr,
    space: OracleSpace,
    point: str = "x",
    bindings: Mapping[str, Any] | None = None,
) -> float:
    """Largest entry of ``integrated_matrix(density) - represent(reference)`` on the safe subspace."""
    emissions = max(_bosonic_emissions(density), _bosonic_emissions(reference))
    difference = integrated_matrix(density, space, point, bindings) - represent(reference, space, bindings)
    return _masked_max(difference, space.safe_mask(emissions))


def product_residual(
    a: GradedExpr, b: GradedExpr, space: OracleSpace, bindings: Mapping[str, Any] | None = None
) -> float:
    """Distance between the canonical physical-rule product and the matrix product."""
    emissions = _bosonic_emissions(a) + _bosonic_emissions(b)
    difference = represent(koszul_product(a, b), space, bindings) - represent(a, space, bindings) @ represent(
        b, space, bindings
    )
    return _masked_max(difference, space.safe_mask(emissions))


def bracket_residual(
    a: GradedExpr,
    b: GradedExpr,
    expected: GradedExpr,
    space: OracleSpace,
    bindings: Mapping[str, Any] | None = None,
) -> float:
    """Distance between the matrix super-bracket of ``a`` and ``b`` and ``expected``.

    The bracket is formed from the matrices alone, independently of the symbolic
    reordering.
    """
    sign = -1.0 if parity_of(a) == parity_of(b) == "odd" else 1.0
    left, right = represent(a, space, bindings), represent(b, space, bindings)
    difference = left @ right - sign * (right @ left) - represent(expected, space, bindings)
    emissions = _bosonic_emissions(a) + _bosonic_emissions(b) + _bosonic_emissions(expected)
    return _masked_max(difference, space.safe_mask(emissions))


def hermiticity_residual(e: GradedExpr, space: OracleSpace, bindings: Mapping[str, Any] | None = None) -> float:
    """Largest entry of ``M - M^H`` between safe states."""
    matrix = represent(e, space, bindings)
    return _masked_max(matrix - matrix.conj().T, space.safe_mask(_bosonic_emissions(e)), square=True)


def spectrum(e: GradedExpr, space: OracleSpace, bindings: Mapping[str, Any] | None = None) -> np.ndarray:
    """Sorted eigenvalues of the Hermitian part of ``e`` restricted to the safe subspace."""
    safe = np.flatnonzero(space.safe_mask(_bosonic_emissions(e)))
    matrix = represent(e, space, bindings).toarray()[np.ix_(safe, safe)]
    return linalg.eigvalsh((matrix + matrix.conj().T) / 2)


def flip_absorption(e: GradedExpr) -> GradedExpr:
    """Copy of a field operator with the sign of its absorption part reversed."""
    absorbing = e.filter(lambda word, _coefficient: bool(word) and not word[0].emits)
    return e - absorbing * 2


def _point_bindings(points: Iterable[str], values: Sequence[float] = (0.0, 0.0, 0.0, 0.0)) -> dict[str, float]:
    return {f"{name}{j}": float(values[j]) for name in points for j in range(4)}


def negative_control(lattice: ModeLattice, n_max: int = 3, dim_cap: int = DEFAULT_DIM_CAP) -> float:
    """Bracket residual of the ghost field against a sign-flipped anti-ghost.

    Both fields sit at the origin, where the correct bracket vanishes; the flipped
    one leaves ``sum_p 1/p0`` behind, so a healthy oracle returns a large value.
    """
    x, y = FieldPoint.symbolic("x"), FieldPoint.symbolic("y")
    omega = field("ghost", 0, x, lattice).operator
    omegabar = flip_absorption(conjugate_field("ghost", 0, y, lattice).operator)
    space = OracleSpace.for_expressions(omega, omegabar, n_max=n_max, dim_cap=dim_cap)
    value = bracket_residual(omega, omegabar, GradedExpr.zero(), space, _point_bindings("xy"))
    logger.debug("Negative control residual %s", value)
    return value
