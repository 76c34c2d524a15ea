"""Tests for identity results and report rendering."""

import json

from gradedfields.graded import GradedExpr, absorb
from gradedfields.report import IdentityResult, Report, SuiteReport


def _failing() -> IdentityResult:
    return IdentityResult.symbolic("a = 0", "algebra / test", GradedExpr.generator(absorb("scalar", 0)))


def test_symbolic_results() -> None:
    """Zero differences pass; others count their terms and keep a detail."""
    assert IdentityResult.symbolic("0 = 0", "x", GradedExpr.zero()).passed
    failing = _failing()
    assert not failing.passed
    assert failing.residual == 1
    assert failing.detail == "a^0(p0)"


def test_combined_results() -> None:
    """A family passes only when every member does."""
    a = GradedExpr.generator(absorb("scalar", 0))
    result = IdentityResult.combined("family", "x", [GradedExpr.zero(), a, a * 2])
    assert not result.passed
    assert result.residual == 2
    assert IdentityResult.combined("empty", "x", []).passed


def test_numeric_results() -> None:
    """Tolerances bound from above, or from below for negative controls."""
    assert IdentityResult.numeric("close", "x", 1e-13, 1e-12).passed
    assert not IdentityResult.numeric("far", "x", 1e-3, 1e-12).passed
    assert IdentityResult.numeric("control", "x", 0.5, 0.1, at_least=True).passed


def test_slug_and_timing() -> None:
    """Ids are slugs of the identity; timing is rounded."""
    result = IdentityResult.informative("Pi+^2 = Pi+ (symmetric lattice)", "x", "note").timed(1.23456)
    assert result.slug == "pi-2-pi-symmetric-lattice"
    assert result.millis == 1.235
    assert result.as_dict()["status"] == "info"


def test_report_summary() -> None:
    """The summary counts identities and failures in words."""
    ok = IdentityResult.numeric("close", "x", 0.0, 1e-12)
    report = Report(seed=3, suites=[SuiteReport("algebra", [ok, _failing()]), SuiteReport("bv", [ok])])
    assert not report.passed
    assert report.summary() == "3 identities checked, one failure"
    assert Report(suites=[SuiteReport("bv", [ok])]).summary() == "1 identity checked, zero failures"


def test_informational_results_never_fail() -> None:
    """Informational failures are shown but do not count."""
    note = IdentityResult("note", "x", False, 4, informational=True)
    suite = SuiteReport("functionals", [note])
    assert suite.passed
    assert suite.failures == []


def test_json_is_sorted() -> None:
    """Entries are sorted by suite and identity."""
    ok = IdentityResult.numeric("b", "x", 0.0, 1.0)
    report = Report(seed=1, suites=[SuiteReport("oracle", [ok]), SuiteReport("algebra", [ok, _failing()])])
    data = json.loads(report.to_json())
    assert [(e["suite"], e["identity"]) for e in data["entries"]] == [
        ("algebra", "a = 0"),
        ("algebra", "b"),
        ("oracle", "b"),
    ]
    assert data["entries"][0]["status"] == "fail"
    assert data["summary"]["passed"] is False
    assert data["seed"] == 1


def test_text_rendering() -> None:
    """Failures show their detail; passing details only when verbose."""
    ok = IdentityResult("b", "anchor", True, 0, detail="hidden")
    report = Report(suites=[SuiteReport("algebra", [ok, _failing()])])
    text = report.to_text()
    assert text.splitlines()[0] == "[FAIL] algebra"
    assert "a^0(p0)" in text
    assert "hidden" not in text
    assert "hidden" in report.to_text(verbose=True)
