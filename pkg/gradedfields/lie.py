# -*- coding: utf-8 -*-
"""Internal Lie algebra data of the gauge sector.

Generators ``l_I`` are anti-Hermitian ``n x n`` matrices with exact sympy
entries. Structure constants are defined by ``[l_J, l_H] = c^I_JH l_I`` and
computed exactly through the positive metric ``H_IJ = Tr(l_I^dagger l_J)``.
"""

__all__ = [
    "LieData",
    "PRESETS",
    "jacobi_residual",
    "lower_index",
    "preset",
    "raise_index",
    "signature",
    "structure_constants",
    "trace_metric",
]

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np
from sympy import I, ImmutableMatrix, Matrix, Rational, expand, im, re, sqrt

from gradedfields.exceptions import NonClosureError
from gradedfields.scalar import ScalarExpr

logger = logging.getLogger(__name__)

Constants = tuple[tuple[tuple[Any, ...], ...], ...]


def _commutator(x: ImmutableMatrix, y: ImmutableMatrix) -> Matrix:
    return (x * y - y * x).applyfunc(expand)


def trace_metric(generators: Sequence[ImmutableMatrix]) -> tuple[ImmutableMatrix, ImmutableMatrix]:
    """Return ``(G, H)`` with ``G_IJ = Re Tr(l_I l_J)`` and ``H_IJ = Tr(l_I^dagger l_J)``.

    On an anti-Hermitian basis ``G = -H``; ``H`` is the positive metric used to
    raise and lower indices.
    """
    size = len(generators)
    g = Matrix.zeros(size, size)
    h = Matrix.zeros(size, size)
    for a, x in enumerate(generators):
        for b, y in enumerate(generators):
            g[a, b] = expand(re((x * y).trace()))
            h[a, b] = expand((x.H * y).trace())
    return ImmutableMatrix(g), ImmutableMatrix(h)


def structure_constants(generators: Sequence[ImmutableMatrix]) -> Constants:
    """Exact ``c^I_JH`` indexed ``[I][J][H]``.

    :raises NonClosureError: when a commutator leaves the span of the generators
    """
    size = len(generators)
    _, h = trace_metric(generators)
    h_inverse = h.inv()
    constants = [[[Rational(0)] * size for _ in range(size)] for _ in range(size)]
    for j, x in enumerate(generators):
        for k, y in enumerate(generators):
            bracket = _commutator(x, y)
            projections = [expand((z.H * bracket).trace()) for z in generators]
            residual = Matrix(bracket)
            for i in range(size):
                value = expand(sum(h_inverse[i, n] * projections[n] for n in range(size)))
                constants[i][j][k] = value
                residual -= value * generators[i]
            if not residual.applyfunc(expand).is_zero_matrix:
                raise NonClosureError(f"Commutator of generators {j} and {k} leaves their span")
    return tuple(tuple(tuple(row) for row in plane) for plane in constants)


def jacobi_residual(constants: Any) -> float:
    """Largest absolute Jacobi defect ``c^I_JL c^L_HK + c^I_HL c^L_KJ + c^I_KL c^L_JH``."""
    c = np.array(constants, dtype=complex)
    if not c.size:
        return 0.0
    total = (
        np.einsum("ijl,lhk->ijhk", c, c) + np.einsum("ihl,lkj->ijhk", c, c) + np.einsum("ikl,ljh->ijhk", c, c)
    )
    return float(np.max(np.abs(total)))


def signature(generators: Sequence[ImmutableMatrix]) -> tuple[int, int]:
    """Signature of ``G`` on ``L + iL``, counted as ``(positive, negative)``."""
    basis = list(generators) + [I * x for x in generators]
    g, _ = trace_metric(basis)
    eigenvalues = np.linalg.eigvalsh(np.array(g.evalf(), dtype=float))
    return int(np.sum(eigenvalues > 1e-12)), int(np.sum(eigenvalues < -1e-12))


def lower_index(components: Sequence[Any], metric: ImmutableMatrix) -> list[Any]:
    """``v_I = H_IJ v^J``."""
    return [expand(sum(metric[a, b] * components[b] for b in range(len(components)))) for a in range(len(components))]


def raise_index(components: Sequence[Any], metric: ImmutableMatrix) -> list[Any]:
    """``v^I = (H^-1)^IJ v_J``."""
    return lower_index(components, metric.inv())


@dataclass(frozen=True)
class LieData:
    """Generators of the gauge algebra with their constants and metrics."""

    name: str
    generators: tuple[ImmutableMatrix, ...]
    constants: Constants = field(default=())

    @classmethod
    def from_generators(cls, name: str, generators: Sequence[Any]) -> "LieData":
        """Validate anti-Hermiticity and compute the structure constants."""
        matrices = tuple(ImmutableMatrix(g) for g in generators)
        for n, matrix in enumerate(matrices):
            if not (matrix.H + matrix).applyfunc(expand).is_zero_matrix:
                raise ValueError(f"Generator {n} of {name} is not anti-Hermitian")
        logger.debug("Computing structure constants of %s", name)
        return cls(name, matrices, structure_constants(matrices))

    @property
    def dim(self) -> int:
        """Number of generators."""
        return len(self.generators)

    @property
    def fiber_dim(self) -> int:
        """Complex dimension ``n`` of the fiber the generators act on."""
        return self.generators[0].rows if self.generators else 0

    @cached_property
    def metrics(self) -> tuple[ImmutableMatrix, ImmutableMatrix]:
        """``(G, H)``."""
        return trace_metric(self.generators)

    @property
    def abelian(self) -> bool:
        """Whether all structure constants vanish."""
        return all(not value for plane in self.constants for row in plane for value in row)

    def constant(self, i: int, j: int, h: int) -> ScalarExpr:
        """``c^i_jh`` as an exact scalar."""
        return _scalar(self.constants[i][j][h])

    def generator_entry(self, index: int, row: int, column: int) -> ScalarExpr:
        """Entry ``(l_index)^row_column``."""
        return _scalar(self.generators[index][row, column])

    def lowered_constants(self) -> Constants:
        """``c_IJH = H_IK c^K_JH``."""
        _, h = self.metrics
        size = self.dim
        return tuple(
            tuple(
                tuple(expand(sum(h[i, k] * self.constants[k][j][l] for k in range(size))) for l in range(size))
                for j in range(size)
            )
            for i in range(size)
        )

    def antisymmetry_residual(self) -> Any:
        """Largest ``|c^I_JH + c^I_HJ|``; zero unless the data were corrupted."""
        values = [
            abs(complex(self.constants[i][j][h] + self.constants[i][h][j]))
            for i in range(self.dim)
            for j in range(self.dim)
            for h in range(self.dim)
        ]
        return max(values, default=0.0)

    def corrupted(self, i: int, j: int, h: int, value: Any = None) -> "LieData":
        """Copy with one structure constant replaced; the default flips its sign.

        Used as a negative control for identities that rely on the Jacobi identity.
        """
        planes = [[list(row) for row in plane] for plane in self.constants]
        old = planes[i][j][h]
        planes[i][j][h] = -old if value is None else Rational(value)
        if planes[i][j][h] == old:
            planes[i][j][h] = old + 1
        logger.info("Corrupting c^%d_%d%d of %s: %s -> %s", i, j, h, self.name, old, planes[i][j][h])
        return LieData(
            f"{self.name}-corrupted",
            self.generators,
            tuple(tuple(tuple(row) for row in plane) for plane in planes),
        )


def _scalar(value: Any) -> ScalarExpr:
    value = expand(value)
    if im(value) == 0:
        value = re(value)
    return ScalarExpr.from_sympy(value)


def _pauli() -> list[ImmutableMatrix]:
    return [
        ImmutableMatrix([[0, 1], [1, 0]]),
        ImmutableMatrix([[0, -I], [I, 0]]),
        ImmutableMatrix([[1, 0], [0, -1]]),
    ]


def _gell_mann() -> list[ImmutableMatrix]:
    return [
        ImmutableMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 0]]),
        ImmutableMatrix([[0, -I, 0], [I, 0, 0], [0, 0, 0]]),
        ImmutableMatrix([[1, 0, 0], [0, -1, 0], [0, 0, 0]]),
        ImmutableMatrix([[0, 0, 1], [0, 0, 0], [1, 0, 0]]),
        ImmutableMatrix([[0, 0, -I], [0, 0, 0], [I, 0, 0]]),
        ImmutableMatrix([[0, 0, 0], [0, 0, 1], [0, 1, 0]]),
        ImmutableMatrix([[0, 0, 0], [0, 0, -I], [0, I, 0]]),
        ImmutableMatrix([[1, 0, 0], [0, 1, 0], [0, 0, -2]]) / sqrt(3),
    ]


def _u1() -> LieData:
    return LieData.from_generators("u1", [ImmutableMatrix([[I]])])


def _su2() -> LieData:
    return LieData.from_generators("su2", [-I / 2 * s for s in _pauli()])


def _u2() -> LieData:
    return LieData.from_generators("u2", [-I / 2 * s for s in _pauli()] + [-I / 2 * ImmutableMatrix.eye(2)])


def _su3() -> LieData:
    return LieData.from_generators("su3", [-I / 2 * s for s in _gell_mann()])


#: Built-in algebras by name.
PRESETS: dict[str, Callable[[], LieData]] = {
    "u1": _u1,
    "su2": _su2,
    "u2": _u2,
    "su3": _su3,
}

_CACHE: dict[str, LieData] = {}


def preset(name: str) -> LieData:
    """Return a built-in algebra, computing it once per process."""
    if name not in PRESETS:
        raise KeyError(f"Unknown Lie algebra preset {name}; known: {', '.join(sorted(PRESETS))}")
    if name not in _CACHE:
        _CACHE[name] = PRESETS[name]()
    return _CACHE[name]
