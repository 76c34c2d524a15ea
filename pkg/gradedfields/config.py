# -*- coding: utf-8 -*-
"""Run configuration.

A run is described by dotted settings keys::

    theory.lie = su2
    theory.xi = 1
    lattice.modes = [["1", "2", "2"], ["-2", "2", "1"]]
    lattice.scalar_mass = 1
    lattice.dirac_mass = 4
    suites = ["algebra", "brst"]
    oracle.n_max = 3
    seed = 0

They come either from a TOML or JSON file, whose nested tables are flattened
into dotted keys, or from pyramid settings under the ``gradedfields.`` prefix.
"""

__all__ = [
    "DEFAULT_MODES",
    "RunConfig",
    "SUITE_NAMES",
    "flatten",
    "select_suites",
]

import json
import logging
import re
import tomllib
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

from pyramid.path import DottedNameResolver
from pyramid.settings import asbool, aslist
from zope.interface import implementer

from gradedfields.exceptions import ConfigError, UnknownSuiteError
from gradedfields.interfaces import IRunConfig
from gradedfields.lattice import ModeLattice
from gradedfields.lie import PRESETS, LieData, preset
from gradedfields.scalar import ScalarExpr, rational

logger = logging.getLogger(__name__)

#: Suites in the order they are run.
SUITE_NAMES = ("algebra", "propagators", "equal_time", "functionals", "dirac", "bv", "brst", "oracle")

#: Two modes with ``|p|**2 = 9``: rational energies for the Dirac mass 4 and the massless sectors.
DEFAULT_MODES: tuple[tuple[str, str, str], ...] = (("1", "2", "2"), ("-2", "2", "1"))

_resolver = DottedNameResolver()

_TOML_POSITION = re.compile(r"\(at line (\d+), column (\d+)\)")


def flatten(data: Mapping[str, Any], prefix: str = "") -> dict[str, Any]:
    """Flatten nested tables into dotted keys; lists are kept as values."""
    flat: dict[str, Any] = {}
    for key, value in data.items():
        dotted = f"{prefix}{key}"
        if isinstance(value, Mapping):
            flat.update(flatten(value, f"{dotted}."))
        else:
            flat[dotted] = value
    return flat


def _as_list(value: Any) -> list[Any]:
    if isinstance(value, str):
        return aslist(value.replace(",", " "))
    return list(value)


def _parse_modes(value: Any) -> tuple[tuple[str, str, str], ...]:
    if isinstance(value, str):
        try:
            value = json.loads(value)
        except json.JSONDecodeError as error:
            raise ConfigError(f"lattice.modes is not a list of triples: {error.msg}") from None
    modes = []
    for entry in value:
        triple = tuple(str(c) for c in entry)
        if len(triple) != 3:
            raise ConfigError(f"Lattice mode {entry!r} is not a spatial triple")
        try:
            for component in triple:
                rational(component)
        except (TypeError, ValueError):
            raise ConfigError(f"Lattice mode {entry!r} has a non-rational component") from None
        modes.append(triple)
    if not modes:
        raise ConfigError("lattice.modes must name at least one mode")
    return tuple(modes)  # type: ignore[return-value]


def _parse_corruption(value: Any) -> tuple[int, int, int, str | None] | None:
    """``"I,J,H"`` or ``"I,J,H=value"``."""
    if value in (None, "", False):
        return None
    text = str(value)
    indices, _, replacement = text.partition("=")
    try:
        i, j, h = (int(part) for part in indices.split(","))
    except ValueError:
        raise ConfigError(f"theory.corrupt must read 'I,J,H' or 'I,J,H=value', got {text!r}") from None
    return (i, j, h, replacement.strip() or None)


@implementer(IRunConfig)
@dataclass(frozen=True)
class RunConfig:
    """Validated settings of one verification run."""

    lie: str = "su2"
    xi: str = "1"
    corrupt: tuple[int, int, int, str | None] | None = None
    modes: tuple[tuple[str, str, str], ...] = DEFAULT_MODES
    scalar_mass: str = "1"
    dirac_mass: str = "4"
    internal_dim: int = 2
    suites: tuple[str, ...] = SUITE_NAMES
    oracle_enabled: bool = True
    n_max: int = 3
    dim_cap: int = 4096
    output: str | None = None
    seed: int = 0
    timing: bool = False

    def __post_init__(self) -> None:
        unknown = [s for s in self.suites if s not in SUITE_NAMES]
        if unknown:
            raise UnknownSuiteError(f"Unknown suites {', '.join(unknown)}; known: {', '.join(SUITE_NAMES)}")
        if self.internal_dim < 1:
            raise ConfigError(f"lattice.internal_dim must be positive, got {self.internal_dim}")
        if self.n_max < 1:
            raise ConfigError(f"oracle.n_max must be positive, got {self.n_max}")

    @classmethod
    def from_mapping(cls, settings: Mapping[str, Any], prefix: str = "") -> "RunConfig":
        """Build from dotted keys, ignoring keys outside ``prefix``.

        :raises ConfigError: for malformed values
        :raises UnknownSuiteError: for unknown suite names
        """
        values = {k[len(prefix) :]: v for k, v in settings.items() if k.startswith(prefix)}

        def get(key: str, default: Any) -> Any:
            return values.get(key, default)

        try:
            suites = get("suites", SUITE_NAMES)
            config = cls(
                lie=str(get("theory.lie", "su2")),
                xi=str(get("theory.xi", "1")),
                corrupt=_parse_corruption(get("theory.corrupt", None)),
                modes=_parse_modes(get("lattice.modes", DEFAULT_MODES)),
                scalar_mass=str(get("lattice.scalar_mass", "1")),
                dirac_mass=str(get("lattice.dirac_mass", "4")),
                internal_dim=int(get("lattice.internal_dim", 2)),
                suites=tuple(str(s) for s in _as_list(suites)),
                oracle_enabled=asbool(get("oracle.enabled", True)),
                n_max=int(get("oracle.n_max", 3)),
                dim_cap=int(get("oracle.dim_cap", 4096)),
                output=get("output", None) or None,
                seed=int(get("seed", 0)),
                timing=asbool(get("timing", False)),
            )
        except (TypeError, ValueError) as error:
            if isinstance(error, ConfigError):
                raise
            raise ConfigError(f"Invalid setting: {error}") from error
        for key in ("xi", "scalar_mass", "dirac_mass"):
            try:
                rational(getattr(config, key))
            except (TypeError, ValueError):
                raise ConfigError(f"{key} must be a rational number, got {getattr(config, key)!r}") from None
        logger.debug("Loaded run configuration %r", config)
        return config

    @classmethod
    def from_text(cls, text: str, *, json_format: bool | None = None) -> "RunConfig":
        """Parse TOML, or JSON when ``json_format`` is set or the text starts with ``{``.

        :raises ConfigError: with the line and column of a syntax error
        """
        if json_format is None:
            json_format = text.lstrip().startswith("{")
        if json_format:
            try:
                data = json.loads(text)
            except json.JSONDecodeError as error:
                raise ConfigError(f"Malformed JSON: {error.msg}", error.lineno, error.colno) from None
        else:
            try:
                data = tomllib.loads(text)
            except tomllib.TOMLDecodeError as error:
                match = _TOML_POSITION.search(str(error))
                line, column = (int(match.group(1)), int(match.group(2))) if match else (None, None)
                message = _TOML_POSITION.sub("", str(error)).strip()
                raise ConfigError(f"Malformed TOML: {message}", line, column) from None
        if not isinstance(data, Mapping):
            raise ConfigError("The configuration must be a table of settings")
        return cls.from_mapping(flatten(data))

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        """Read a ``.toml`` or ``.json`` file."""
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as error:
            raise ConfigError(f"Cannot read {path}: {error.strerror}") from None
        json_format = True if path.suffix == ".json" else (False if path.suffix == ".toml" else None)
        return cls.from_text(text, json_format=json_format)

    def with_overrides(self, **changes: Any) -> "RunConfig":
        """Copy with some fields replaced, e.g. from command-line flags."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    def lattice(self) -> ModeLattice:
        """Configured mode lattice with the scalar and Dirac masses."""
        return ModeLattice.build(self.modes, scalar=self.scalar_mass, dirac=self.dirac_mass)

    def gauge_parameter(self) -> ScalarExpr:
        """Configured ``xi`` as an exact scalar."""
        return ScalarExpr.number(rational(self.xi))

    def lie_data(self) -> LieData:
        """Configured Lie algebra, corrupted when ``theory.corrupt`` is set.

        A name that is not a preset is resolved as a dotted factory returning
        :class:`LieData`.
        """
        if self.lie in PRESETS:
            lie = preset(self.lie)
        else:
            try:
                factory = _resolver.resolve(self.lie)
            except (ImportError, ValueError) as error:
                raise ConfigError(f"theory.lie is neither a preset nor an importable factory: {self.lie}") from error
            lie = factory() if callable(factory) else factory
            if not isinstance(lie, LieData):
                raise ConfigError(f"theory.lie factory {self.lie} did not return Lie algebra data")
        if self.corrupt is not None:
            i, j, h, value = self.corrupt
            lie = lie.corrupted(i, j, h, value)
        return lie

    def describe(self) -> dict[str, Any]:
        """Plain-data form, recorded in reports."""
        return {
            "theory": {"lie": self.lie, "xi": self.xi, "corrupt": self.corrupt},
            "lattice": {
                "modes": [list(m) for m in self.modes],
                "scalar_mass": self.scalar_mass,
                "dirac_mass": self.dirac_mass,
                "internal_dim": self.internal_dim,
            },
            "suites": list(self.suites),
            "oracle": {"enabled": self.oracle_enabled, "n_max": self.n_max, "dim_cap": self.dim_cap},
            "seed": self.seed,
        }


def select_suites(config: RunConfig, names: Sequence[str]) -> RunConfig:
    """Restrict a run to ``names``; an empty selection keeps the configured suites."""
    if not names:
        return config
    return replace(config, suites=tuple(names))
