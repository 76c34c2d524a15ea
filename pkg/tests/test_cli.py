"""Tests for the command line."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from gradedfields import __version__
from gradedfields.cli import main
from gradedfields.config import SUITE_NAMES

SMALL = """
[theory]
lie = "u1"

[lattice]
modes = [["0", "0", "3"]]
scalar_mass = "4"
internal_dim = 1
"""


@pytest.fixture
def runner() -> CliRunner:
    """Click test runner."""
    return CliRunner()


@pytest.fixture
def small_config(tmp_path: Path) -> Path:
    """One-mode abelian run file."""
    path = tmp_path / "run.toml"
    path.write_text(SMALL, encoding="utf-8")
    return path


def test_version(runner: CliRunner) -> None:
    """--version prints the package version."""
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_list_identities(runner: CliRunner) -> None:
    """Every suite is listed with its identity families."""
    result = runner.invoke(main, ["list-identities"])
    assert result.exit_code == 0
    for name in SUITE_NAMES:
        assert f"{name}: " in result.output

    result = runner.invoke(main, ["list-identities", "--format", "json"])
    data = json.loads(result.output)
    assert tuple(data) == SUITE_NAMES
    assert all(entry["identities"] for entry in data.values())


def test_dump_lattice(runner: CliRunner) -> None:
    """The default lattice has two modes, four once symmetrized."""
    result = runner.invoke(main, ["dump-lattice"])
    assert result.exit_code == 0
    rows = json.loads(result.output)
    assert [row["momentum"] for row in rows] == [["1", "2", "2"], ["-2", "2", "1"]]
    assert rows[0]["energy.dirac"] == "5"

    result = runner.invoke(main, ["dump-lattice", "--symmetric"])
    assert len(json.loads(result.output)) == 4


def test_eval(runner: CliRunner) -> None:
    """The canonical form and the propagator basis are printed."""
    result = runner.invoke(main, ["eval", "scomm(field(scalar, a, x), conj(scalar, a, y))"])
    assert result.exit_code == 0
    assert "= D+" in result.output


def test_eval_syntax_error(runner: CliRunner) -> None:
    """A caret points at the offending position and the exit status is 1."""
    result = runner.invoke(main, ["eval", "scomm(p, q"])
    assert result.exit_code == 1
    assert "scomm(p, q\n          ^" in result.output
    assert "Expected ')'" in result.output


def test_eval_unknown_function(runner: CliRunner) -> None:
    """Unknown identifiers are reported without a traceback."""
    result = runner.invoke(main, ["eval", "frobnicate(1)"])
    assert result.exit_code == 1
    assert "frobnicate" in result.output
    assert "Traceback" not in result.output


def test_eval_matrix(runner: CliRunner) -> None:
    """--matrix prints the truncated Fock representation."""
    result = runner.invoke(main, ["eval", "--matrix", "prod(emit(p, 0), absorb(p, 0))"])
    assert result.exit_code == 0
    assert result.output.splitlines()[0] == "a†_0(p0) a^0(p0)"
    assert "[[" in result.output


def test_verify_passes(runner: CliRunner, small_config: Path, tmp_path: Path) -> None:
    """A passing suite exits with 0 and writes the JSON report."""
    output = tmp_path / "report.json"
    result = runner.invoke(
        main,
        ["--config", str(small_config), "verify", "--suite", "algebra", "--format", "json", "--output", str(output)],
    )
    assert result.exit_code == 0, result.output
    report = json.loads(output.read_text(encoding="utf-8"))
    assert report["suites"] == [{"name": "algebra", "passed": True}]
    assert report["summary"]["passed"]
    assert {entry["suite"] for entry in report["entries"]} == {"algebra"}


def test_verify_seed_is_recorded(runner: CliRunner, small_config: Path, tmp_path: Path) -> None:
    """--seed overrides the configured seed."""
    output = tmp_path / "report.json"
    runner.invoke(
        main,
        ["--config", str(small_config), "verify", "--suite", "bv", "--seed", "11", "--output", str(output)],
    )
    assert json.loads(output.read_text(encoding="utf-8"))["seed"] == 11


def test_verify_fails_on_corrupted_constants(runner: CliRunner, tmp_path: Path) -> None:
    """A flipped structure constant makes the BRST suite fail."""
    path = tmp_path / "corrupt.toml"
    path.write_text(SMALL.replace('lie = "u1"', 'lie = "su2"\ncorrupt = "0,1,2"'), encoding="utf-8")
    result = runner.invoke(main, ["--config", str(path), "verify", "--suite", "brst"])
    assert result.exit_code == 1
    assert "FAIL" in result.output


def test_bad_config(runner: CliRunner, tmp_path: Path) -> None:
    """A malformed run file is a usage error."""
    path = tmp_path / "bad.toml"
    path.write_text("seed = \n[theory", encoding="utf-8")
    result = runner.invoke(main, ["--config", str(path), "dump-lattice"])
    assert result.exit_code == 1
    assert "Malformed TOML" in result.output
