# -*- coding: utf-8 -*-
"""Named verification suites.

A suite is a function registered with :func:`suite`. It receives a
:class:`SuiteContext` and records identity families through
:meth:`SuiteContext.check`; a family that raises is recorded as a failure
instead of aborting the run.
"""

__all__ = [
    "SUITES",
    "Suite",
    "SuiteContext",
    "run_suite",
    "run_verify",
    "suite",
]

import logging
import random
import time
from collections.abc import Callable, Iterable, Mapping
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Any

import numpy as np
from sympy import QQ, ImmutableMatrix, Rational, eye, simplify
from zope.interface import implementer

from gradedfields.brst import (
    TheorySpec,
    brst_current_equality,
    brst_S,
    fp_current,
    free_ghost_lagrangian,
    ghost_lagrangian_decompose,
    matter_gauge_lagrangian,
    on_shell,
)
from gradedfields.config import SUITE_NAMES, RunConfig
from gradedfields.exceptions import UnknownSuiteError
from gradedfields.fiber import (
    FiberCoord,
    FiberPoly,
    bv_bracket,
    bv_laplacian,
    horizontal_diff,
    random_poly,
    right_deriv,
)
from gradedfields.fields import (
    charge_conjugate_complex_field,
    charge_conjugate_field,
    complex_field,
    conjugate_field,
    d_basis,
    dressed_dirac_operators,
    equal_time_report,
    field as free_field,
    pauli_jordan,
    propagator_D,
    sector_lattice,
)
from gradedfields.functionals import (
    FunctionalResult,
    dirac_charge,
    four_momentum,
    fp_current_integral,
    free_hamiltonian,
)
from gradedfields.gamma import (
    METRIC,
    OnShellMomentum,
    boost_K,
    boost_K_array,
    boost_K_inverse,
    dirac_frame,
    gamma,
    gamma_array,
    shell_projectors,
    slash,
    to_scalar_rows,
)
from gradedfields.graded import (
    SECTOR_PARITY,
    GradedExpr,
    OpGen,
    normal_order,
    parity_of,
    super_bracket,
)
from gradedfields.interfaces import IVerificationSuite
from gradedfields.lattice import FieldPoint, ModeLattice
from gradedfields.lie import LieData, jacobi_residual, preset, signature
from gradedfields.oracle import (
    OracleSpace,
    bracket_residual,
    hermiticity_residual,
    integral_residual,
    negative_control,
    product_residual,
    spectrum,
)
from gradedfields.report import IdentityResult, Report, SuiteReport
from gradedfields.scalar import ScalarExpr

logger = logging.getLogger(__name__)

#: Numeric tolerance of the oracle comparisons.
TOLERANCE = 1e-12

Build = Callable[[str], IdentityResult | Iterable[IdentityResult]]


@dataclass
class SuiteContext:
    """Configuration, lazily built inputs and collected results of one suite run."""

    config: RunConfig
    name: str
    catalogue: Mapping[str, str]
    results: list[IdentityResult] = field(default_factory=list)

    @cached_property
    def lattice(self) -> ModeLattice:
        """Configured lattice."""
        return self.config.lattice()

    @cached_property
    def symmetric(self) -> ModeLattice:
        """Configured lattice closed under ``p -> -p``."""
        lattice = self.lattice
        return lattice if lattice.is_symmetric() else lattice.symmetrized()

    @cached_property
    def lie(self) -> LieData:
        """Configured Lie algebra."""
        return self.config.lie_data()

    def rng(self) -> random.Random:
        """Generator seeded by the run seed and the suite name."""
        return random.Random(f"{self.config.seed}:{self.name}")

    def check(self, title: str, build: Build) -> None:
        """Run one family of identities and record its results.

        :param title: catalogue entry; its anchor is passed to ``build``
        """
        anchor = self.catalogue[title]
        started = time.perf_counter()
        try:
            produced = build(anchor)
        except Exception as error:
            logger.warning("Check %r of suite %s raised", title, self.name, exc_info=True)
            produced = IdentityResult(title, anchor, False, 0, detail=f"raised {type(error).__name__}: {error}")
        results = [produced] if isinstance(produced, IdentityResult) else list(produced)
        elapsed = (time.perf_counter() - started) * 1000
        for result in results:
            if self.config.timing:
                result = result.timed(elapsed / len(results))
            logger.info(
                "%s: %s %s (residual %s)",
                self.name,
                "info" if result.informational else ("ok" if result.passed else "FAILED"),
                result.identity,
                result.residual,
            )
            self.results.append(result)


@implementer(IVerificationSuite)
@dataclass(frozen=True)
class Suite:
    """Registered suite: its checks are listed in ``catalogue`` as ``title -> anchor``."""

    name: str
    description: str
    catalogue: Mapping[str, str]
    run: Callable[[SuiteContext], None]


SUITES: dict[str, Suite] = {}


def suite(name: str, description: str, catalogue: Mapping[str, str]) -> Callable[[Any], Any]:
    """Register the decorated function as the suite ``name``."""

    def register(run: Callable[[SuiteContext], None]) -> Callable[[SuiteContext], None]:
        SUITES[name] = Suite(name, description, dict(catalogue), run)
        return run

    return register


def run_suite(name: str, config: RunConfig) -> SuiteReport:
    """Run one suite; failures are reported, never raised.

    :raises UnknownSuiteError: when no suite is registered under ``name``
    """
    try:
        definition = SUITES[name]
    except KeyError:
        raise UnknownSuiteError(f"Unknown suite {name}") from None
    context = SuiteContext(config, name, definition.catalogue)
    logger.info("Running suite %s", name)
    try:
        definition.run(context)
    except Exception as error:
        logger.warning("Suite %s aborted", name, exc_info=True)
        context.results.append(
            IdentityResult(f"{name} suite completes", "verification run", False, 0, detail=f"{error}")
        )
    return SuiteReport(name, context.results)


def run_verify(config: RunConfig, jobs: int = 1) -> Report:
    """Run the configured suites in their canonical order.

    :param jobs: number of suites run concurrently
    """
    names = [n for n in SUITE_NAMES if n in config.suites and (n != "oracle" or config.oracle_enabled)]
    if jobs > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda n: run_suite(n, config), names))
    else:
        reports = [run_suite(n, config) for n in names]
    report = Report(seed=config.seed, suites=reports)
    logger.info("Verification finished: %s", report.summary())
    return report


def _unit(value: Any) -> GradedExpr:
    return GradedExpr.scalar(value)


def _half() -> ScalarExpr:
    return ScalarExpr.number(QQ(1, 2))


# algebra

_KINDS = (("absorb", "upper"), ("emit", "lower"), ("absorb", "lower"), ("emit", "upper"))


def _generators(sector: str, modes: Iterable[int], internals: Iterable[int]) -> list[OpGen]:
    internals = tuple(internals)
    return [
        OpGen(sector, species, position, mode, internal)  # type: ignore[arg-type]
        for mode in modes
        for internal in internals
        for species, position in _KINDS
    ]


def _sector_internals(sector: str, internal_dim: int, lie_dim: int) -> range | tuple[int, ...]:
    if sector == "dirac":
        return (0, 1)
    if sector == "gauge":
        return tuple(4 * big + lam for big in range(min(lie_dim, 2)) for lam in range(4))
    return range(internal_dim)


def _expected_bracket(left: OpGen, right: OpGen) -> int:
    """Elementary super-commutator read off the operator labels alone."""
    if left.species == right.species or left.position == right.position:
        return 0
    if (left.sector, left.mode, left.internal) != (right.sector, right.mode, right.internal):
        return 0
    value = -1 if left.sector == "gauge" and left.internal % 4 else 1
    if left.emits and not left.odd:
        value = -value
    return value


def _bit(e: Any) -> int:
    return 1 if parity_of(e) == "odd" else 0


def _random_word(rng: random.Random, pool: list[OpGen], max_length: int = 2) -> GradedExpr:
    return GradedExpr.word(*(rng.choice(pool) for _ in range(rng.randint(1, max_length))))


_ALGEBRA = {
    "elementary brackets": "elementary operators / super-commutators",
    "Koszul exchange": "graded product / Koszul convention",
    "super-antisymmetry": "graded product / super-bracket",
    "graded Jacobi identity": "graded product / super-bracket",
    "normal-order idempotence": "normal ordering / modified rule",
    "fermionic squares vanish": "elementary operators / fermionic statistics",
}


@suite("algebra", "Super-commutators of the elementary operators and the graded product laws", _ALGEBRA)
def _algebra(ctx: SuiteContext) -> None:
    lattice = ctx.lattice
    mode_ids = [m.id for m in lattice.modes]

    def elementary(anchor: str) -> list[IdentityResult]:
        results = []
        for sector in SECTOR_PARITY:
            gens = _generators(sector, mode_ids, _sector_internals(sector, ctx.config.internal_dim, ctx.lie.dim))
            dual, others = [], []
            for left in gens:
                for right in gens:
                    expected = _expected_bracket(left, right)
                    difference = super_bracket(GradedExpr.generator(left), GradedExpr.generator(right))
                    (dual if expected else others).append(difference - _unit(expected))
            results.append(IdentityResult.combined(f"{sector}: [absorb, emit] of dual operators is 1", anchor, dual))
            results.append(IdentityResult.combined(f"{sector}: all other elementary brackets vanish", anchor, others))
        return results

    ctx.check("elementary brackets", elementary)

    pool = (
        _generators("scalar", mode_ids[:1], (0,))
        + _generators("ghost", mode_ids[:2], (0,))
        + _generators("dirac", mode_ids[:1], (0,))
    )
    rng = ctx.rng()

    def exchange(anchor: str) -> IdentityResult:
        differences = []
        for _ in range(100):
            u, v = rng.choice(pool), rng.choice(pool)
            if _expected_bracket(u, v) or _expected_bracket(v, u):
                continue
            sign = -1 if u.odd and v.odd else 1
            differences.append(GradedExpr.word(u, v) - GradedExpr.word(v, u) * sign)
        return IdentityResult.combined("uv = (-1)^(|u||v|) vu for non-contracting generators", anchor, differences)

    def antisymmetry(anchor: str) -> IdentityResult:
        differences = []
        for _ in range(60):
            a, b = _random_word(rng, pool), _random_word(rng, pool)
            sign = -1 if _bit(a) and _bit(b) else 1
            differences.append(super_bracket(a, b) + super_bracket(b, a) * sign)
        return IdentityResult.combined("[a, b] = -(-1)^(|a||b|) [b, a]", anchor, differences)

    def jacobi(anchor: str) -> IdentityResult:
        differences = []
        for _ in range(40):
            a, b, c = (_random_word(rng, pool) for _ in range(3))
            pa, pb, pc = _bit(a), _bit(b), _bit(c)
            total = super_bracket(a, super_bracket(b, c)) * (-1) ** (pa * pc)
            total = total + super_bracket(b, super_bracket(c, a)) * (-1) ** (pb * pa)
            total = total + super_bracket(c, super_bracket(a, b)) * (-1) ** (pc * pb)
            differences.append(total)
        return IdentityResult.combined("cyclic graded Jacobi sum vanishes", anchor, differences)

    def idempotence(anchor: str) -> IdentityResult:
        differences = []
        for _ in range(60):
            ordered = normal_order(_random_word(rng, pool), _random_word(rng, pool))
            differences.append(normal_order(GradedExpr.scalar(1), ordered) - ordered)
        return IdentityResult.combined(":1 :ab:: = :ab:", anchor, differences)

    def squares(anchor: str) -> IdentityResult:
        gens = [g for sector in ("fermion", "dirac", "ghost") for g in _generators(sector, mode_ids, (0, 1))]
        return IdentityResult.combined("c c = 0 for every odd generator", anchor, [GradedExpr.word(g, g) for g in gens])

    ctx.check("Koszul exchange", exchange)
    ctx.check("super-antisymmetry", antisymmetry)
    ctx.check("graded Jacobi identity", jacobi)
    ctx.check("normal-order idempotence", idempotence)
    ctx.check("fermionic squares vanish", squares)


# propagators

_PROPAGATORS = {
    "causal function at zero time": "propagators / causal support",
    "D+ and D- reflection": "propagators / mode sums",
    "time derivative at zero time": "propagators / equal-time limit",
    "field super-commutator table": "free fields / super-commutator table",
    "charge-conjugate rows": "free fields / charge conjugation",
    "observer independence": "free fields / translation invariance",
    "D-basis rendering": "free fields / super-commutator table",
}


def _field_table(sector: str, lattice: ModeLattice, internal_dim: int, anchor: str) -> list[IdentityResult]:
    x, y = FieldPoint.symbolic("x"), FieldPoint.symbolic("y")
    rows: dict[str, list[GradedExpr]] = {}

    def bracket(f: Any, g: Any) -> GradedExpr:
        return super_bracket(f.operator, g.operator)

    def add(title: str, difference: GradedExpr) -> None:
        rows.setdefault(title, []).append(difference)

    for a in range(internal_dim):
        phi = free_field(sector, a, x, lattice)
        phi_star = complex_field(sector, a, x, lattice)
        for b in range(internal_dim):
            same = 1 if a == b else 0
            add("[phi^a(x), phi^b(y)] = 0", bracket(phi, free_field(sector, b, y, lattice)))
            add("[phi^a(x), phi*^b(y)] = 0", bracket(phi, complex_field(sector, b, y, lattice)))
            add("[phi*^a(x), phi*^b(y)] = 0", bracket(phi_star, complex_field(sector, b, y, lattice)))
            add(
                "[phi^a(x), phibar_b(y)] = delta D(x-y)",
                bracket(phi, conjugate_field(sector, b, y, lattice))
                - _unit(pauli_jordan(x - y, lattice, sector) * same),
            )
            for lam in range(4):
                add("[phi^a(x), phi^b_,l(y)] = 0", bracket(phi, free_field(sector, b, y, lattice, (lam,))))
                add("[phi^a(x), phi*^b_,l(y)] = 0", bracket(phi, complex_field(sector, b, y, lattice, (lam,))))
                add(
                    "[phi^a(x), phibar_b,l(y)] = -delta D_,l(x-y)",
                    bracket(phi, conjugate_field(sector, b, y, lattice, (lam,)))
                    + _unit(pauli_jordan(x - y, lattice, sector, (lam,)) * same),
                )
                add(
                    "[phi^a_,l(x), phibar_b(y)] = delta D_,l(x-y)",
                    bracket(free_field(sector, a, x, lattice, (lam,)), conjugate_field(sector, b, y, lattice))
                    - _unit(pauli_jordan(x - y, lattice, sector, (lam,)) * same),
                )
    return [IdentityResult.combined(f"{sector}: {title}", anchor, diffs) for title, diffs in rows.items()]


def _charge_rows(sector: str, lattice: ModeLattice, internal_dim: int, anchor: str) -> list[IdentityResult]:
    x, y = FieldPoint.symbolic("x"), FieldPoint.symbolic("y")
    statistics = -1 if SECTOR_PARITY[sector] else 1

    def split(point: FieldPoint, deriv: tuple[int, ...] = ()) -> ScalarExpr:
        return propagator_D(1, point, lattice, sector, deriv) + propagator_D(-1, point, lattice, sector, deriv) * (
            statistics
        )

    rows: dict[str, list[GradedExpr]] = {}
    for a in range(internal_dim):
        phi = free_field(sector, a, x, lattice).operator
        for b in range(internal_dim):
            same = 1 if a == b else 0
            rows.setdefault("[phi^a(x), Cphi_b(y)] = delta (D+ + s D-)(x+y)", []).append(
                super_bracket(phi, charge_conjugate_field(sector, b, y, lattice).operator) - _unit(split(x + y) * same)
            )
            rows.setdefault("[phi^a(x), Cphi*_b(y)] = delta (D+ + s D-)(x-y)", []).append(
                super_bracket(phi, charge_conjugate_complex_field(sector, b, y, lattice).operator)
                - _unit(split(x - y) * same)
            )
            for lam in range(4):
                rows.setdefault("[phi^a(x), Cphi_b,l(y)] = delta (D+_,l + s D-_,l)(x+y)", []).append(
                    super_bracket(phi, charge_conjugate_field(sector, b, y, lattice, (lam,)).operator)
                    - _unit(split(x + y, (lam,)) * same)
                )
                rows.setdefault("[phi^a(x), Cphi*_b,l(y)] = -delta (D+_,l + s D-_,l)(x-y)", []).append(
                    super_bracket(phi, charge_conjugate_complex_field(sector, b, y, lattice, (lam,)).operator)
                    + _unit(split(x - y, (lam,)) * same)
                )
    return [
        IdentityResult.combined(f"{sector}: {title}", anchor, diffs, informational=True)
        for title, diffs in rows.items()
    ]


@suite("propagators", "Mode-sum propagators and the free-field super-commutator table", _PROPAGATORS)
def _propagators(ctx: SuiteContext) -> None:
    x = FieldPoint.symbolic("x")
    sectors = ("scalar", "dirac", "ghost")

    def zero_time(anchor: str) -> list[IdentityResult]:
        return [
            IdentityResult.symbolic(
                f"{sector}: D(0, x) = 0", anchor, pauli_jordan(x.spatial(), ctx.symmetric, sector)
            )
            for sector in sectors
        ]

    def reflection(anchor: str) -> list[IdentityResult]:
        return [
            IdentityResult.symbolic(
                f"{sector}: D+(-x) = -D-(x)",
                anchor,
                propagator_D(1, -x, ctx.lattice, sector) + propagator_D(-1, x, ctx.lattice, sector),
            )
            for sector in sectors
        ]

    def time_derivative(anchor: str) -> list[IdentityResult]:
        results = []
        for sector in sectors:
            delta = sector_lattice(ctx.symmetric, sector).delta(x.spatial())
            half_i = ScalarExpr.imaginary_unit() * _half()
            for sign, mark in ((1, "+"), (-1, "-")):
                value = propagator_D(sign, x.spatial(), ctx.symmetric, sector, (0,))
                results.append(
                    IdentityResult.symbolic(
                        f"{sector}: D{mark}_,0(0, x) = -(i/2) delta", anchor, value + delta * half_i
                    )
                )
        return results

    def table(anchor: str) -> list[IdentityResult]:
        results = []
        for sector in ("scalar", "fermion"):
            results += _field_table(sector, ctx.lattice, ctx.config.internal_dim, anchor)
        return results

    def charge(anchor: str) -> list[IdentityResult]:
        results = []
        for sector in ("scalar", "fermion"):
            results += _charge_rows(sector, ctx.lattice, ctx.config.internal_dim, anchor)
        return results

    def observer(anchor: str) -> IdentityResult:
        y, shift = FieldPoint.symbolic("y"), FieldPoint.symbolic("a")
        shifted = super_bracket(
            free_field("scalar", 0, x + shift, ctx.lattice).operator,
            conjugate_field("scalar", 0, y + shift, ctx.lattice).operator,
        )
        plain = super_bracket(
            free_field("scalar", 0, x, ctx.lattice).operator, conjugate_field("scalar", 0, y, ctx.lattice).operator
        )
        return IdentityResult.symbolic("[phi(x+a), phibar(y+a)] = [phi(x), phibar(y)]", anchor, shifted - plain)

    def rendering(anchor: str) -> IdentityResult:
        y = FieldPoint.symbolic("y")
        value = super_bracket(
            free_field("scalar", 0, x, ctx.lattice).operator, conjugate_field("scalar", 0, y, ctx.lattice).operator
        ).scalar_part()
        text = d_basis(value, x - y, ctx.lattice, "scalar")
        return IdentityResult.informative("[phi(x), phibar(y)] in the D basis", anchor, text or "outside the D basis")

    ctx.check("causal function at zero time", zero_time)
    ctx.check("D+ and D- reflection", reflection)
    ctx.check("time derivative at zero time", time_derivative)
    ctx.check("field super-commutator table", table)
    ctx.check("charge-conjugate rows", charge)
    ctx.check("observer independence", observer)
    ctx.check("D-basis rendering", rendering)


# equal_time

_EQUAL_TIME = {"canonical equal-time rules": "conjugate momenta / canonical rules"}


@suite("equal_time", "Canonical equal-time super-commutation rules of every sector", _EQUAL_TIME)
def _equal_time(ctx: SuiteContext) -> None:
    ctx.check(
        "canonical equal-time rules",
        lambda _anchor: equal_time_report(ctx.lattice, ctx.lie, ctx.config.internal_dim),
    )


# functionals

_FUNCTIONALS = {
    "dirac charge": "normal-ordered functionals / charge",
    "four-momentum": "normal-ordered functionals / four-momentum",
    "free hamiltonians": "normal-ordered functionals / energy",
    "FP current charge": "normal-ordered functionals / ghost number",
    "P_0 equals H": "normal-ordered functionals / energy",
    "vacuum expectation vanishes": "normal ordering / vacuum",
    "symmetric lattice reductions": "normal-ordered functionals / pair terms",
}


def _functional(result: FunctionalResult, anchor: str) -> IdentityResult:
    return IdentityResult.symbolic(f"{result.name} reduces to its closed form", anchor, result.residual)


@suite("functionals", "Spatial integrals of normal-ordered field bilinears", _FUNCTIONALS)
def _functionals(ctx: SuiteContext) -> None:
    internal_dim = ctx.config.internal_dim
    computed: dict[tuple[Any, ...], FunctionalResult] = {}

    def cached(key: tuple[Any, ...], factory: Callable[[], FunctionalResult]) -> FunctionalResult:
        if key not in computed:
            computed[key] = factory()
        return computed[key]

    def momentum(sector: str, index: int) -> FunctionalResult:
        return cached(("P", sector, index), lambda: four_momentum(sector, index, ctx.lattice, internal_dim))

    def hamiltonian(sector: str) -> FunctionalResult:
        return cached(("H", sector), lambda: free_hamiltonian(sector, ctx.lattice, internal_dim))

    def current(index: int) -> FunctionalResult:
        return cached(("J", index), lambda: fp_current_integral(index, ctx.lattice, internal_dim))

    ctx.check("dirac charge", lambda anchor: _functional(cached(("Q",), lambda: dirac_charge(ctx.lattice)), anchor))
    ctx.check(
        "four-momentum",
        lambda anchor: [_functional(momentum(s, i), anchor) for s in ("dirac", "ghost") for i in range(4)],
    )
    ctx.check(
        "free hamiltonians",
        lambda anchor: [_functional(hamiltonian(s), anchor) for s in ("scalar", "fermion", "dirac", "ghost")],
    )
    ctx.check("FP current charge", lambda anchor: [_functional(current(i), anchor) for i in range(4)])
    ctx.check(
        "P_0 equals H",
        lambda anchor: [
            IdentityResult.symbolic(
                f"{s}: P_0 = H", anchor, momentum(s, 0).stationary - hamiltonian(s).stationary
            )
            for s in ("dirac", "ghost")
        ],
    )
    ctx.check(
        "vacuum expectation vanishes",
        lambda anchor: IdentityResult.combined(
            "<0| normal-ordered functional |0> = 0", anchor, [r.reduced.scalar_part() for r in computed.values()]
        ),
    )

    def symmetric(anchor: str) -> list[IdentityResult]:
        results = [
            _functional(free_hamiltonian("scalar", ctx.symmetric, internal_dim), anchor),
        ]
        for index in (1, 2, 3):
            result = fp_current_integral(index, ctx.symmetric, internal_dim)
            results.append(_functional(result, anchor))
            results.append(
                IdentityResult.informative(
                    f"{result.name}: oscillating pair terms on a symmetric lattice",
                    anchor,
                    f"{len(result.oscillating.terms)} terms",
                )
            )
        return [replace(r, identity=f"{r.identity} (symmetric lattice)") for r in results]

    ctx.check("symmetric lattice reductions", symmetric)


# dirac

_DIRAC = {
    "Clifford relations": "gamma matrices / Clifford algebra",
    "gamma hermiticity": "gamma matrices / Dirac adjoint",
    "shell projectors": "mass shell / projectors",
    "rest-frame spinors": "mass shell / spinor frame",
    "boost unitarity": "mass shell / boosts",
    "numeric boost unitarity": "mass shell / boosts",
    "dressed operator brackets": "dirac field / mode operators",
    "field anticommutator": "dirac field / super-commutator",
}


def _vanishes(entry: Any) -> bool:
    """Zero after simplification; closed radicals sympy cannot denest fall back to the numeric tolerance."""
    if simplify(entry) == 0:
        return True
    if entry.free_symbols:
        return False
    if abs(complex(entry.evalf(30))) > TOLERANCE:
        return False
    logger.debug("Entry %s vanishes within the numeric tolerance only", entry)
    return True


def _nonzero_entries(*matrices: Any) -> int:
    return sum(1 for matrix in matrices for entry in matrix if not _vanishes(entry))


def _exact(identity: str, anchor: str, *matrices: Any) -> IdentityResult:
    count = _nonzero_entries(*matrices)
    if count:
        logger.debug("Identity failed: %s", identity)
    return IdentityResult(identity, anchor, count == 0, count)


def _on_shell(lattice: ModeLattice, mode_id: int) -> OnShellMomentum:
    momentum = tuple(QQ.to_sympy(c) for c in lattice.mode(mode_id).momentum)
    return OnShellMomentum(momentum, QQ.to_sympy(lattice.mass("dirac")))  # type: ignore[arg-type]


@suite("dirac", "Gamma matrices, mass-shell projectors, boosts and the Dirac field", _DIRAC)
def _dirac(ctx: SuiteContext) -> None:
    lattice = ctx.lattice
    momenta = {mode.id: _on_shell(lattice, mode.id) for mode in lattice.modes}
    identity = eye(4)

    def clifford(anchor: str) -> IdentityResult:
        matrices = [
            gamma(mu) * gamma(nu) + gamma(nu) * gamma(mu) - 2 * (METRIC[mu] if mu == nu else 0) * identity
            for mu in range(4)
            for nu in range(mu, 4)
        ]
        return _exact("{gamma^m, gamma^n} = 2 g^mn", anchor, *matrices)

    def hermiticity(anchor: str) -> IdentityResult:
        matrices = [gamma(0) * gamma(mu).H * gamma(0) - gamma(mu) for mu in range(4)]
        return _exact("gamma^0 gamma^m^H gamma^0 = gamma^m", anchor, *matrices)

    def projectors(anchor: str) -> list[IdentityResult]:
        pairs = {p: shell_projectors(k) for p, k in momenta.items()}
        m = Rational(QQ.to_sympy(lattice.mass("dirac")))
        return [
            _exact("Pi+^2 = Pi+", anchor, *(plus * plus - plus for plus, _ in pairs.values())),
            _exact("Pi-^2 = Pi-", anchor, *(minus * minus - minus for _, minus in pairs.values())),
            _exact("Pi+ Pi- = 0", anchor, *(plus * minus for plus, minus in pairs.values())),
            _exact("Pi+ + Pi- = 1", anchor, *(plus + minus - identity for plus, minus in pairs.values())),
            _exact("tr Pi+ = 2", anchor, *(ImmutableMatrix([plus.trace() - 2]) for plus, _ in pairs.values())),
            _exact("pslash^2 = m^2", anchor, *(slash(k) * slash(k) - m**2 * identity for k in momenta.values())),
        ]

    def frames(anchor: str) -> list[IdentityResult]:
        u_checks, v_checks = [], []
        for k in momenta.values():
            plus, _ = shell_projectors(k)
            u, v = dirac_frame(k)
            u_checks += [plus * column - column for column in u]
            v_checks += [plus * column for column in v]
        return [_exact("Pi+ u = u", anchor, *u_checks), _exact("Pi+ v = 0", anchor, *v_checks)]

    def unitarity(anchor: str) -> list[IdentityResult]:
        rest = OnShellMomentum((Rational(0), Rational(0), Rational(0)), QQ.to_sympy(lattice.mass("dirac")))
        g0 = gamma(0)
        return [
            _exact(
                "gamma^0 K^H gamma^0 K = 1",
                anchor,
                *(g0 * boost_K(k).H * g0 * boost_K(k) - identity for k in momenta.values()),
            ),
            _exact("K Kinv = 1", anchor, *(boost_K(k) * boost_K_inverse(k) - identity for k in momenta.values())),
            _exact("K(0) = 1", anchor, boost_K(rest) - identity),
        ]

    def numeric(anchor: str) -> IdentityResult:
        generator = np.random.default_rng(ctx.config.seed)
        mass = float(Rational(ctx.config.dirac_mass))
        g0 = gamma_array(0)
        worst = 0.0
        for _ in range(20):
            boost = boost_K_array(generator.uniform(-5.0, 5.0, size=3).tolist(), mass)
            worst = max(worst, float(np.abs(g0 @ boost.conj().T @ g0 @ boost - np.eye(4)).max()))
        return IdentityResult.numeric("gamma^0 K^H gamma^0 K = 1 for 20 random momenta", anchor, worst, TOLERANCE)

    def dressed(anchor: str) -> list[IdentityResult]:
        operators = {mode_id: dressed_dirac_operators(lattice, mode_id) for mode_id in momenta}
        plus_rows = {mode_id: to_scalar_rows(shell_projectors(k)[0]) for mode_id, k in momenta.items()}
        mixed, absorbing = [], []
        for p, (absorbers_p, _) in operators.items():
            for q, (absorbers_q, emitters_q) in operators.items():
                for beta in range(4):
                    for alpha in range(4):
                        expected = plus_rows[p][beta][alpha] if p == q else ScalarExpr.zero()
                        mixed.append(super_bracket(absorbers_p[beta], emitters_q[alpha]) - _unit(expected))
                        absorbing.append(super_bracket(absorbers_p[beta], absorbers_q[alpha]))
        return [
            IdentityResult.combined("{a^b(p), adag_a(q)} = delta_pq Pi+(p)^b_a", anchor, mixed),
            IdentityResult.combined("{a^b(p), a^a(q)} = 0", anchor, absorbing),
        ]

    def anticommutator(anchor: str) -> IdentityResult:
        x, y = FieldPoint.symbolic("x"), FieldPoint.symbolic("y")
        difference = x - y
        causal = pauli_jordan(difference, lattice, "dirac")
        slopes = [pauli_jordan(difference, lattice, "dirac", (lam,)) for lam in range(4)]
        i_over_two_m = ScalarExpr.imaginary_unit() * ScalarExpr.number(QQ(1) / (2 * lattice.mass("dirac")))
        psibar = [conjugate_field("dirac", alpha, x, lattice).operator for alpha in range(4)]
        psi = [free_field("dirac", beta, y, lattice).operator for beta in range(4)]
        differences = []
        for alpha in range(4):
            for beta in range(4):
                expected = causal * -_half() if alpha == beta else ScalarExpr.zero()
                for lam in range(4):
                    entry = gamma(lam)[beta, alpha]
                    if entry:
                        expected = expected + slopes[lam] * i_over_two_m * ScalarExpr.from_sympy(entry)
                differences.append(super_bracket(psibar[alpha], psi[beta]) - _unit(expected))
        return IdentityResult.combined(
            "{psibar_a(x), psi^b(y)} = (1/2m)(-m + i gamma^l d_l)^b_a D(x-y)", anchor, differences
        )

    ctx.check("Clifford relations", clifford)
    ctx.check("gamma hermiticity", hermiticity)
    ctx.check("shell projectors", projectors)
    ctx.check("rest-frame spinors", frames)
    ctx.check("boost unitarity", unitarity)
    ctx.check("numeric boost unitarity", numeric)
    ctx.check("dressed operator brackets", dressed)
    ctx.check("field anticommutator", anticommutator)


# bv

_BV = {
    "Laplacian squares to zero": "antibracket / BV Laplacian",
    "grades": "antibracket / grading",
    "Laplacian of a product": "antibracket / BV Laplacian",
    "anti-derivation": "antibracket / derivation property",
    "antibracket Jacobi identity": "antibracket / Jacobi identity",
    "canonical pairs": "antibracket / canonical pairs",
    "right derivatives": "antibracket / derivatives",
}


def _bv_coords() -> list[FiberCoord]:
    fields = [FiberCoord("y", (0,)), FiberCoord("y", (1,)), FiberCoord("theta", parity=1)]
    return fields + [c.dual() for c in fields]


@suite("bv", "Odd Laplacian and antibracket on field-antifield polynomials", _BV)
def _bv(ctx: SuiteContext) -> None:
    coords = _bv_coords()
    rng = ctx.rng()

    def poly(parity: int | None = None) -> FiberPoly:
        return random_poly(rng, coords, max_degree=4, max_terms=4, parity=parity)

    def homogeneous() -> FiberPoly:
        return poly(rng.randint(0, 1))

    def nilpotent(anchor: str) -> IdentityResult:
        return IdentityResult.combined(
            "Delta Delta f = 0 on 200 random polynomials",
            anchor,
            [bv_laplacian(bv_laplacian(poly())) for _ in range(200)],
        )

    def grades(anchor: str) -> list[IdentityResult]:
        laplacian_failures = bracket_failures = 0
        for _ in range(100):
            f, g = homogeneous(), homogeneous()
            laplacian = bv_laplacian(f)
            if laplacian and _bit(laplacian) != 1 - _bit(f):
                laplacian_failures += 1
            bracket = bv_bracket(f, g)
            if bracket and _bit(bracket) != (_bit(f) + _bit(g) + 1) % 2:
                bracket_failures += 1
        return [
            IdentityResult("|Delta f| = |f| + 1", anchor, not laplacian_failures, laplacian_failures),
            IdentityResult("|{f, g}| = |f| + |g| + 1", anchor, not bracket_failures, bracket_failures),
        ]

    def product(anchor: str) -> IdentityResult:
        differences = []
        for _ in range(100):
            f, g = homogeneous(), homogeneous()
            sign = -1 if _bit(f) else 1
            expected = bv_laplacian(f) * g + bv_bracket(f, g) * sign + f * bv_laplacian(g) * sign
            differences.append(bv_laplacian(f * g) - expected)
        return IdentityResult.combined(
            "Delta(fg) = (Delta f) g + (-1)^|f| {f, g} + (-1)^|f| f Delta g", anchor, differences
        )

    def derivation(anchor: str) -> IdentityResult:
        differences = []
        for _ in range(60):
            f, g, h = homogeneous(), homogeneous(), homogeneous()
            sign = -1 if (_bit(f) + 1) * _bit(g) % 2 else 1
            differences.append(bv_bracket(f, g * h) - bv_bracket(f, g) * h - g * bv_bracket(f, h) * sign)
        return IdentityResult.combined("{f, gh} = {f, g} h + (-1)^((|f|+1)|g|) g {f, h}", anchor, differences)

    def jacobi(anchor: str) -> IdentityResult:
        differences = []
        for _ in range(60):
            f, g, h = homogeneous(), homogeneous(), homogeneous()
            sign = -1 if (_bit(f) + 1) * (_bit(g) + 1) % 2 else 1
            differences.append(
                bv_bracket(f, bv_bracket(g, h))
                - bv_bracket(bv_bracket(f, g), h)
                - bv_bracket(g, bv_bracket(f, h)) * sign
            )
        return IdentityResult.combined(
            "{f, {g, h}} = {{f, g}, h} + (-1)^((|f|+1)(|g|+1)) {g, {f, h}}", anchor, differences
        )

    def pairs(anchor: str) -> IdentityResult:
        differences = []
        for c in coords[:3]:
            expected = -1 if c.odd else 1
            differences.append(bv_bracket(FiberPoly.coord(c), FiberPoly.coord(c.dual())) - FiberPoly.constant(expected))
        return IdentityResult.combined("{y, y~} = 1 and {theta, theta~} = -1", anchor, differences)

    def right(anchor: str) -> IdentityResult:
        differences = []
        for _ in range(100):
            c = rng.choice(coords)
            g = random_poly(rng, [other for other in coords if other != c], max_degree=3, max_terms=3)
            differences.append(right_deriv(g * FiberPoly.coord(c), c, "left") - g)
        return IdentityResult.combined("(g c) d<_c = g with the left convention", anchor, differences)

    ctx.check("Laplacian squares to zero", nilpotent)
    ctx.check("grades", grades)
    ctx.check("Laplacian of a product", product)
    ctx.check("anti-derivation", derivation)
    ctx.check("antibracket Jacobi identity", jacobi)
    ctx.check("canonical pairs", pairs)
    ctx.check("right derivatives", right)


# brst

_BRST = {
    "structure constants": "gauge algebra / structure constants",
    "metric signature": "gauge algebra / trace metric",
    "nilpotency on coordinates": "BRST symmetry / nilpotency",
    "nilpotency on random polynomials": "BRST symmetry / nilpotency",
    "ghost grade": "BRST symmetry / grading",
    "commutes with total derivatives": "BRST symmetry / prolongation",
    "matter and gauge invariance": "BRST symmetry / invariant Lagrangian",
    "ghost Lagrangian decomposition": "gauge fixing / exact decomposition",
    "FP current": "Noether currents / ghost number",
    "BRST current equality": "Noether currents / BRST current",
    "corrupted constants negative control": "BRST symmetry / nilpotency",
}


def _jet_coords(theory: TheorySpec) -> list[FiberCoord]:
    coords = []
    for big in range(theory.dim):
        for mu in range(4):
            coords.append(theory.coord("omega", big, jet=(mu,)))
            coords += [theory.coord("A", big, lam, jet=(mu,)) for lam in range(4)]
    return coords


def _square(theory: TheorySpec, f: FiberPoly) -> FiberPoly:
    return brst_S(brst_S(f, theory), theory)


@suite("brst", "BRST nilpotency, invariance, gauge-fixing decomposition and Noether currents", _BRST)
def _brst(ctx: SuiteContext) -> None:
    rng = ctx.rng()

    xi = ctx.config.gauge_parameter()

    def theory() -> TheorySpec:
        return TheorySpec(ctx.lie, xi)

    def constants(anchor: str) -> list[IdentityResult]:
        lie = ctx.lie
        return [
            IdentityResult.numeric(
                f"{lie.name}: Jacobi identity of c^I_JH", anchor, jacobi_residual(lie.constants), TOLERANCE
            ),
            IdentityResult.numeric(
                f"{lie.name}: c^I_JH = -c^I_HJ", anchor, float(lie.antisymmetry_residual()), TOLERANCE
            ),
        ]

    def metric(anchor: str) -> IdentityResult:
        positive, negative = signature(ctx.lie.generators)
        return IdentityResult.informative(
            f"{ctx.lie.name}: signature of the trace metric", anchor, f"({positive}, {negative})"
        )

    def coordinates(anchor: str) -> IdentityResult:
        model = theory()
        coords = model.base_coords() + _jet_coords(model)
        return IdentityResult.combined(
            "S S y = 0 on every coordinate and first jets of A and omega",
            anchor,
            [_square(model, FiberPoly.coord(c)) for c in coords],
        )

    def random_polys(anchor: str) -> list[IdentityResult]:
        lies = {ctx.lie.name: ctx.lie}
        for name in ("u1", "su3"):
            lies.setdefault(name, preset(name))
        results = []
        for lie in lies.values():
            model = TheorySpec(lie, xi)
            pool = model.base_coords() + _jet_coords(model)
            differences = []
            for _ in range(100):
                coords = rng.sample(pool, min(6, len(pool)))
                differences.append(_square(model, random_poly(rng, coords, max_degree=3, max_terms=3)))
            title = f"{lie.name}: S S f = 0 on 100 random polynomials"
            results.append(IdentityResult.combined(title, anchor, differences))
        return results

    def grade(anchor: str) -> IdentityResult:
        model = theory()
        pool = model.base_coords()
        failures = 0
        for _ in range(60):
            coords = rng.sample(pool, min(6, len(pool)))
            f = random_poly(rng, coords, max_degree=3, max_terms=3, parity=rng.randint(0, 1))
            image = brst_S(f, model)
            if image and _bit(image) == _bit(f):
                failures += 1
        return IdentityResult("|S f| = |f| + 1", anchor, not failures, failures)

    def total_derivatives(anchor: str) -> IdentityResult:
        model = theory()
        pool = model.base_coords()
        differences = []
        for _ in range(40):
            f = random_poly(rng, rng.sample(pool, min(5, len(pool))), max_degree=3, max_terms=3)
            lam = rng.randrange(4)
            differences.append(horizontal_diff(brst_S(f, model), lam) - brst_S(horizontal_diff(f, lam), model))
        return IdentityResult.combined("d_l S f = S d_l f", anchor, differences)

    def invariance(anchor: str) -> IdentityResult:
        model = theory()
        return IdentityResult.symbolic("S L_0 = 0", anchor, brst_S(matter_gauge_lagrangian(model), model))

    def decomposition(anchor: str) -> list[IdentityResult]:
        report = ghost_lagrangian_decompose(theory())
        symbolic = ghost_lagrangian_decompose(TheorySpec(ctx.lie))
        abelian = ghost_lagrangian_decompose(TheorySpec(preset("u1"), xi))
        return [
            IdentityResult.symbolic(
                f"{ctx.lie.name}: L_ghost = S K + d_l M^l at xi = {ctx.config.xi}", anchor, report.residual
            ),
            IdentityResult.symbolic(f"{ctx.lie.name}: decomposition holds for every xi", anchor, symbolic.xi_residual),
            IdentityResult.symbolic("u1: L_ghost = S K + d_l M^l", anchor, abelian.residual),
        ]

    def fp(anchor: str) -> list[IdentityResult]:
        model = theory()
        current = fp_current(model, free_ghost_lagrangian(model))
        closed = []
        for lam in range(4):
            total = FiberPoly.zero()
            for big in range(model.dim):
                total = total + (
                    model.poly("omegabar", big, jet=(lam,)) * model.poly("omega", big)
                    - model.poly("omegabar", big) * model.poly("omega", big, jet=(lam,))
                ) * METRIC[lam]
            closed.append(current[lam] - total)
        divergence = FiberPoly.zero()
        for lam in range(4):
            divergence = divergence + horizontal_diff(current[lam], lam)
        ghosts = [model.coord(name, big) for big in range(model.dim) for name in ("omega", "omegabar")]
        return [
            IdentityResult.combined("J^l = g^ll (omegabar_,l omega - omegabar omega_,l)", anchor, closed),
            IdentityResult.symbolic("d_l J^l = 0 on shell", anchor, on_shell(divergence, ghosts)),
        ]

    def equality(anchor: str) -> IdentityResult:
        return IdentityResult.combined(
            "BRST current of L_ghost equals that of S K", anchor, brst_current_equality(theory())
        )

    def negative(anchor: str) -> IdentityResult:
        base = ctx.lie if not ctx.lie.abelian else preset("su2")
        i, j, h = next(
            (i, j, h)
            for i in range(base.dim)
            for j in range(base.dim)
            for h in range(base.dim)
            if base.constants[i][j][h]
        )
        model = TheorySpec(base.corrupted(i, j, h), xi)
        targets = [model.coord("omega", i), model.coord("psi", 0, 0)] + [model.coord("A", i, lam) for lam in range(4)]
        surviving = sum(len(_square(model, FiberPoly.coord(c)).terms) for c in targets)
        return IdentityResult.numeric(
            f"corrupting c^{i}_{j}{h} breaks S S = 0", anchor, surviving, 1, at_least=True
        )

    ctx.check("structure constants", constants)
    ctx.check("metric signature", metric)
    ctx.check("nilpotency on coordinates", coordinates)
    ctx.check("nilpotency on random polynomials", random_polys)
    ctx.check("ghost grade", grade)
    ctx.check("commutes with total derivatives", total_derivatives)
    ctx.check("matter and gauge invariance", invariance)
    ctx.check("ghost Lagrangian decomposition", decomposition)
    ctx.check("FP current", fp)
    ctx.check("BRST current equality", equality)
    ctx.check("corrupted constants negative control", negative)


# oracle

_ORACLE = {
    "elementary brackets": "Fock representation / elementary operators",
    "product homomorphism": "Fock representation / graded product",
    "field table": "Fock representation / free fields",
    "dirac brackets": "Fock representation / dirac field",
    "functionals": "Fock representation / normal-ordered functionals",
    "spectra": "Fock representation / spectra",
    "negative control": "Fock representation / negative control",
}


def _numeric_points(rng: random.Random, names: str = "xy") -> dict[str, float]:
    return {f"{name}{j}": rng.uniform(-1.0, 1.0) for name in names for j in range(4)}


@suite("oracle", "Truncated Fock-space matrices checked against the symbolic engine", _ORACLE)
def _oracle(ctx: SuiteContext) -> None:
    config = ctx.config
    masses = {"scalar": config.scalar_mass, "dirac": config.dirac_mass}
    lattice = ModeLattice.build(config.modes[:2], **masses)
    single = ModeLattice.build(config.modes[:1], **masses)
    n_max, dim_cap = config.n_max, config.dim_cap
    rng = ctx.rng()
    x, y = FieldPoint.symbolic("x"), FieldPoint.symbolic("y")

    def space(*exprs: GradedExpr) -> OracleSpace:
        return OracleSpace.for_expressions(*exprs, n_max=n_max, dim_cap=dim_cap)

    def elementary(anchor: str) -> list[IdentityResult]:
        first = lattice.modes[0].id
        results = []
        massless = ("gauge", "ghost")
        for sector in SECTOR_PARITY:
            internals = {"dirac": (0, 1), "gauge": (0, 1)}.get(sector, (0,))
            modes = [m.id for m in sector_lattice(lattice, sector).modes[:1]] if sector in massless else [first]
            gens = [GradedExpr.generator(g) for g in _generators(sector, modes, internals)]
            target = space(*gens)
            worst = 0.0
            for left in gens:
                for right in gens:
                    (gl,), (gr,) = left.generators(), right.generators()
                    expected = _unit(_expected_bracket(gl, gr))
                    worst = max(worst, bracket_residual(left, right, expected, target))
            title = f"{sector}: matrix brackets of the elementary operators"
            results.append(IdentityResult.numeric(title, anchor, worst, TOLERANCE))
        return results

    def homomorphism(anchor: str) -> IdentityResult:
        ghost_modes = [m.id for m in sector_lattice(lattice, "ghost").modes[:2]]
        first = lattice.modes[0].id
        pool = (
            _generators("scalar", [first], (0,))
            + _generators("ghost", ghost_modes, (0,))
            + _generators("dirac", [first], (0,))
        )
        target = space(*(GradedExpr.generator(g) for g in pool))
        worst = 0.0
        for _ in range(50):
            word = [rng.choice(pool) for _ in range(3)]
            split = rng.randint(1, 2)
            a, b = GradedExpr.word(*word[:split]), GradedExpr.word(*word[split:])
            worst = max(worst, product_residual(a, b, target))
        return IdentityResult.numeric("M(a b) = M(a) M(b) on random words", anchor, worst, TOLERANCE)

    def fields(anchor: str) -> list[IdentityResult]:
        bindings = _numeric_points(rng)
        results = []
        for sector in ("scalar", "fermion"):
            phi = free_field(sector, 0, x, lattice).operator
            phi_y = free_field(sector, 0, y, lattice).operator
            phibar = conjugate_field(sector, 0, y, lattice).operator
            target = space(phi, phi_y, phibar)
            worst = bracket_residual(phi, phibar, _unit(pauli_jordan(x - y, lattice, sector)), target, bindings)
            worst = max(worst, bracket_residual(phi, phi_y, GradedExpr.zero(), target, bindings))
            for lam in range(4):
                slope = conjugate_field(sector, 0, y, lattice, (lam,)).operator
                expected = _unit(-pauli_jordan(x - y, lattice, sector, (lam,)))
                worst = max(worst, bracket_residual(phi, slope, expected, target, bindings))
            results.append(IdentityResult.numeric(f"{sector}: field table at numeric points", anchor, worst, TOLERANCE))
        return results

    def dirac(anchor: str) -> list[IdentityResult]:
        mode_id = lattice.modes[0].id
        absorbers, emitters = dressed_dirac_operators(lattice, mode_id)
        plus = to_scalar_rows(shell_projectors(_on_shell(lattice, mode_id))[0])
        target = space(*absorbers, *emitters)
        worst = 0.0
        for beta in range(4):
            for alpha in range(4):
                expected = _unit(plus[beta][alpha])
                worst = max(worst, bracket_residual(absorbers[beta], emitters[alpha], expected, target))
        results = [IdentityResult.numeric("{a^b, adag_a} = Pi+^b_a as matrices", anchor, worst, TOLERANCE)]

        bindings = _numeric_points(rng)
        psibar = [conjugate_field("dirac", alpha, x, lattice).operator for alpha in range(4)]
        psi = [free_field("dirac", beta, y, lattice).operator for beta in range(4)]
        target = space(*psibar, *psi)
        worst = 0.0
        for alpha in range(4):
            for beta in range(4):
                expected = super_bracket(psibar[alpha], psi[beta])
                worst = max(worst, bracket_residual(psibar[alpha], psi[beta], expected, target, bindings))
        results.append(IdentityResult.numeric("{psibar_a(x), psi^b(y)} as matrices", anchor, worst, TOLERANCE))
        return results

    def functionals(anchor: str) -> list[IdentityResult]:
        bindings = _numeric_points(rng, "x")
        results = []
        for result in (
            dirac_charge(lattice),
            free_hamiltonian("scalar", lattice),
            free_hamiltonian("ghost", lattice),
        ):
            target = space(result.density, result.target)
            worst = integral_residual(result.density, result.target, target, "x", bindings)
            results.append(
                IdentityResult.numeric(f"{result.name}: spatial average of the density", anchor, worst, TOLERANCE)
            )
            results.append(
                IdentityResult.numeric(
                    f"{result.name}: hermitian", anchor, hermiticity_residual(result.target, target), TOLERANCE
                )
            )
        return results

    def spectra(anchor: str) -> list[IdentityResult]:
        mode_id = single.modes[0].id
        energy = single.energy_scalar(mode_id, "scalar").to_complex().real
        hamiltonian = free_hamiltonian("scalar", single).target
        charge = dirac_charge(single).target
        inverse_two_m = 1.0 / (2 * float(Rational(config.dirac_mass)))
        results = []
        for title, expr, unit in (
            ("scalar H has eigenvalues k p0 / 2", hamiltonian, energy / 2),
            ("dirac charge has eigenvalues k / 2m", charge, inverse_two_m),
        ):
            values = spectrum(expr, space(expr)) / unit
            deviation = float(np.abs(values - np.round(values)).max()) if values.size else 0.0
            results.append(IdentityResult.numeric(title, anchor, deviation, 1e-9))
        return results

    def control(anchor: str) -> IdentityResult:
        return IdentityResult.numeric(
            "sign-flipped anti-ghost is detected", anchor, negative_control(lattice, n_max, dim_cap), 0.1, at_least=True
        )

    ctx.check("elementary brackets", elementary)
    ctx.check("product homomorphism", homomorphism)
    ctx.check("field table", fields)
    ctx.check("dirac brackets", dirac)
    ctx.check("functionals", functionals)
    ctx.check("spectra", spectra)
    ctx.check("negative control", control)
