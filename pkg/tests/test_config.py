"""Tests for run configuration loading."""

from pathlib import Path

import pytest
from sympy import QQ

from gradedfields.config import DEFAULT_MODES, SUITE_NAMES, RunConfig, flatten, select_suites
from gradedfields.exceptions import ConfigError, UnknownSuiteError
from gradedfields.interfaces import IRunConfig
from gradedfields.scalar import ScalarExpr

TOML = """
seed = 7
suites = ["algebra", "brst"]

[theory]
lie = "su3"
corrupt = "0,1,2=5"

[lattice]
modes = [["1", "0", "0"], ["0", "1/2", "0"]]
dirac_mass = "2"

[oracle]
enabled = false
"""


def test_defaults() -> None:
    """A bare configuration runs every suite on the default lattice."""
    config = RunConfig()
    assert IRunConfig.providedBy(config)
    assert config.suites == SUITE_NAMES
    assert config.modes == DEFAULT_MODES
    assert config.lattice().energy_scalar(0, "dirac") == 5
    assert config.lie_data().name == "su2"


def test_flatten() -> None:
    """Nested tables become dotted keys."""
    assert flatten({"a": {"b": 1, "c": {"d": [1, 2]}}, "e": "x"}) == {"a.b": 1, "a.c.d": [1, 2], "e": "x"}


def test_from_toml() -> None:
    """TOML tables map to the settings."""
    config = RunConfig.from_text(TOML)
    assert config.seed == 7
    assert config.suites == ("algebra", "brst")
    assert config.lie == "su3"
    assert config.corrupt == (0, 1, 2, "5")
    assert config.modes == (("1", "0", "0"), ("0", "1/2", "0"))
    assert not config.oracle_enabled
    lie = config.lie_data()
    assert lie.name == "su3-corrupted"
    assert lie.constant(0, 1, 2) == 5


def test_from_json() -> None:
    """JSON is recognised by its leading brace."""
    config = RunConfig.from_text('{"theory": {"lie": "u1"}, "timing": true}')
    assert config.lie == "u1"
    assert config.timing


def test_syntax_errors_carry_positions() -> None:
    """Malformed files report the line and column."""
    with pytest.raises(ConfigError) as info:
        RunConfig.from_text("seed = \n[theory")
    assert info.value.line == 1
    with pytest.raises(ConfigError) as info:
        RunConfig.from_text('{"seed": }')
    assert info.value.line == 1
    assert "column" in str(info.value)


@pytest.mark.parametrize(
    "text",
    [
        'lattice = {modes = [["1", "0"]]}',
        'lattice = {modes = [["1", "0", "x"]]}',
        "lattice = {modes = []}",
        'lattice = {scalar_mass = "heavy"}',
        'theory = {corrupt = "0,1"}',
        "seed = \"seven\"",
        "oracle = {n_max = 0}",
    ],
)
def test_invalid_values(text: str) -> None:
    """Bad values become configuration errors."""
    with pytest.raises(ConfigError):
        RunConfig.from_text(text)


def test_unknown_suite() -> None:
    """Unknown suite names are refused with the list of known ones."""
    with pytest.raises(UnknownSuiteError, match="algebra"):
        RunConfig.from_text('suites = ["algebra", "gravity"]')


def test_from_mapping_with_prefix() -> None:
    """Pyramid-style string settings are parsed under a prefix."""
    settings = {
        "gradedfields.suites": "algebra, bv",
        "gradedfields.oracle.enabled": "false",
        "gradedfields.lattice.modes": '[["3", "0", "0"]]',
        "other.seed": "9",
    }
    config = RunConfig.from_mapping(settings, "gradedfields.")
    assert config.suites == ("algebra", "bv")
    assert not config.oracle_enabled
    assert config.modes == (("3", "0", "0"),)
    assert config.seed == 0


def test_from_file(tmp_path: Path) -> None:
    """Files are read by suffix; missing ones are configuration errors."""
    path = tmp_path / "run.toml"
    path.write_text("seed = 3\n", encoding="utf-8")
    assert RunConfig.from_file(path).seed == 3
    with pytest.raises(ConfigError):
        RunConfig.from_file(tmp_path / "missing.toml")


def test_gauge_parameter() -> None:
    """theory.xi is read as an exact rational."""
    config = RunConfig.from_text('[theory]\nxi = "1/2"\n')
    assert config.gauge_parameter() == ScalarExpr.number(QQ(1, 2))


def test_dotted_lie_factory() -> None:
    """Non-preset names resolve to factories returning Lie data."""
    assert RunConfig(lie="gradedfields.lie._u1").lie_data().name == "u1"
    with pytest.raises(ConfigError):
        RunConfig(lie="gradedfields.config.SUITE_NAMES").lie_data()
    with pytest.raises(ConfigError):
        RunConfig(lie="nowhere.to_be.found").lie_data()


def test_overrides_and_selection() -> None:
    """None leaves a field alone; an empty selection keeps the suites."""
    config = RunConfig().with_overrides(seed=5, output=None, timing=True)
    assert (config.seed, config.output, config.timing) == (5, None, True)
    assert select_suites(config, ()) is config
    assert select_suites(config, ["bv"]).suites == ("bv",)


def test_describe() -> None:
    """The description is plain data."""
    data = RunConfig().describe()
    assert data["theory"]["lie"] == "su2"
    assert data["lattice"]["modes"] == [["1", "2", "2"], ["-2", "2", "1"]]
    assert data["oracle"]["enabled"] is True
