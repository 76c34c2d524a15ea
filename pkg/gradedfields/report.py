# -*- coding: utf-8 -*-
"""Identity results and their JSON or text rendering."""

__all__ = [
    "IdentityResult",
    "Report",
    "SuiteReport",
]

import json
import logging
from collections.abc import Iterable
from dataclasses import dataclass, field, replace
from typing import Any

import inflect
from slugify import slugify

logger = logging.getLogger(__name__)

_inflect = inflect.engine()


@dataclass(frozen=True)
class IdentityResult:
    """Outcome of checking one identity.

    ``residual`` counts the surviving terms of a symbolic difference, or is the
    largest absolute deviation of a numeric one.
    """

    identity: str
    anchor: str
    passed: bool
    residual: float | int
    informational: bool = False
    millis: float | None = None
    detail: str = ""

    @property
    def slug(self) -> str:
        """Stable identifier derived from the identity text."""
        return slugify(self.identity, max_length=80, word_boundary=True)

    @classmethod
    def symbolic(cls, identity: str, anchor: str, difference: Any, *, informational: bool = False) -> "IdentityResult":
        """Result of an exact check; it passes when ``difference`` is zero.

        :param difference: anything exposing ``is_zero()`` and ``terms``
        """
        passed = difference.is_zero()
        detail = "" if passed else _truncate(str(difference))
        if not passed:
            logger.debug("Identity failed: %s", identity)
        return cls(identity, anchor, passed, len(difference.terms), informational, detail=detail)

    @classmethod
    def combined(
        cls, identity: str, anchor: str, differences: Iterable[Any], *, informational: bool = False
    ) -> "IdentityResult":
        """One result for a family of exact checks; the residual adds up the surviving terms."""
        residual = 0
        first_failure = ""
        for difference in differences:
            if difference.is_zero():
                continue
            residual += len(difference.terms)
            first_failure = first_failure or _truncate(str(difference))
        if residual:
            logger.debug("Identity failed: %s", identity)
        return cls(identity, anchor, not residual, residual, informational, detail=first_failure)

    @classmethod
    def numeric(
        cls, identity: str, anchor: str, value: float, tolerance: float, *, at_least: bool = False
    ) -> "IdentityResult":
        """Result of a numeric check.

        :param at_least: pass when ``value >= tolerance`` (negative controls)
        """
        passed = value >= tolerance if at_least else value <= tolerance
        return cls(identity, anchor, passed, float(value))

    @classmethod
    def informative(cls, identity: str, anchor: str, detail: str) -> "IdentityResult":
        """Result that is shown but never fails a run."""
        return cls(identity, anchor, True, 0, informational=True, detail=detail)

    def timed(self, millis: float) -> "IdentityResult":
        """Copy carrying its evaluation time."""
        return replace(self, millis=round(millis, 3))

    def as_dict(self) -> dict[str, Any]:
        """Plain-data form for JSON output."""
        data: dict[str, Any] = {
            "id": self.slug,
            "identity": self.identity,
            "anchor": self.anchor,
            "status": "info" if self.informational else ("pass" if self.passed else "fail"),
            "residual": self.residual,
            "millis": self.millis,
        }
        if self.detail:
            data["detail"] = self.detail
        return data


def _truncate(text: str, limit: int = 400) -> str:
    return text if len(text) <= limit else f"{text[:limit]}..."


@dataclass
class SuiteReport:
    """Results of one suite."""

    name: str
    results: list[IdentityResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Whether every non-informational result passed."""
        return all(r.passed for r in self.results if not r.informational)

    @property
    def failures(self) -> list[IdentityResult]:
        """Failed results that count against the run."""
        return [r for r in self.results if not r.passed and not r.informational]


@dataclass
class Report:
    """Results of a verification run."""

    seed: int | None = None
    suites: list[SuiteReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Whether all suites passed."""
        return all(s.passed for s in self.suites)

    def summary(self) -> str:
        """One-line summary, e.g. ``12 identities checked, 1 failure``."""
        checked = sum(len(s.results) for s in self.suites)
        failed = sum(len(s.failures) for s in self.suites)
        return (
            f"{checked} {_inflect.plural_noun('identity', checked)} checked, "
            f"{_inflect.number_to_words(failed) if failed < 10 else failed} "
            f"{_inflect.plural_noun('failure', failed)}"
        )

    def as_dict(self) -> dict[str, Any]:
        """Plain-data form of the whole run; entries are sorted by suite and identity."""
        entries = []
        for suite in sorted(self.suites, key=lambda s: s.name):
            for result in sorted(suite.results, key=lambda r: r.identity):
                entries.append({"suite": suite.name, **result.as_dict()})
        return {
            "seed": self.seed,
            "suites": [{"name": s.name, "passed": s.passed} for s in sorted(self.suites, key=lambda s: s.name)],
            "entries": entries,
            "summary": {"passed": self.passed, "text": self.summary()},
        }

    def to_json(self) -> str:
        """Render as indented JSON."""
        return json.dumps(self.as_dict(), indent=2, sort_keys=False)

    def to_text(self, *, verbose: bool = False) -> str:
        """Render as a human-readable listing; failures always show their detail."""
        lines = []
        for suite in self.suites:
            lines.append(f"[{'PASS' if suite.passed else 'FAIL'}] {suite.name}")
            for result in suite.results:
                mark = "info" if result.informational else ("ok" if result.passed else "FAILED")
                timing = f" ({result.millis} ms)" if result.millis is not None else ""
                lines.append(f"  {mark:6} {result.identity} [{result.anchor}] residual={result.residual}{timing}")
                if result.detail and (verbose or not result.passed or result.informational):
                    lines.append(f"         {result.detail}")
        lines.append(self.summary())
        return "\n".join(lines)
