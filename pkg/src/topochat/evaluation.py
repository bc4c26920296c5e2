"""Evaluation harness: triplicate trials, pass if at least two of
three are correct, accuracy reported per task category to two
decimals.  Checkers are mechanical (substring, result cell, citation
url), so a scripted backend makes the whole run deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Optional, Sequence, Tuple

from .llm import LlmError
from .pipeline import ChatAnswer, ChatRequest, CypherGenerationFailed
from .records import FileUnreadableError

CATEGORIES = ("entity_selection", "relationship_selection", "property_selection")

_CATEGORY_LABELS = {
    "entity_selection": "Entity Selection",
    "relationship_selection": "Relationship Selection",
    "property_selection": "Property Selection",
}

_CHECKER_KINDS = (
    "answer_contains_all",
    "answer_contains_any",
    "cypher_result_contains",
    "citation_url_present",
)


@dataclass(frozen=True)
class CheckerSpec:
    kind: str
    texts: Tuple[str, ...] = ()
    column: str = ""
    value: object = None
    url: str = ""

    def __post_init__(self):
        if self.kind not in _CHECKER_KINDS:
            raise ValueError(f"unknown checker kind {self.kind!r}")
        if self.kind in ("answer_contains_all", "answer_contains_any") and not self.texts:
            raise ValueError(f"{self.kind} needs at least one text")
        if self.kind == "cypher_result_contains" and not self.column:
            raise ValueError("cypher_result_contains needs a column")
        if self.kind == "citation_url_present" and not self.url:
            raise ValueError("citation_url_present needs a url")


@dataclass(frozen=True)
class TestCase:
    __test__ = False  # keep pytest from collecting this as a test class

    id: str
    category: str
    question: str
    check: CheckerSpec

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")
        if not self.question.strip():
            raise ValueError("question must be non-empty")


@dataclass
class TrialResult:
    index: int
    correct: bool
    answer: Optional[ChatAnswer] = None
    error: Optional[str] = None


@dataclass
class CaseResult:
    case: TestCase
    trials: list
    passed: bool


@dataclass
class CategoryResult:
    category: str
    passed: int
    total: int
    accuracy: Decimal


@dataclass
class EvalReport:
    backend: str
    categories: list
    case_results: list
    iterations: int = 3


def apply_checker(spec: CheckerSpec, ans: ChatAnswer) -> bool:
    if spec.kind == "answer_contains_all":
        text = ans.text.lower()
        return all(t.lower() in text for t in spec.texts)
    if spec.kind == "answer_contains_any":
        text = ans.text.lower()
        return any(t.lower() in text for t in spec.texts)
    if spec.kind == "cypher_result_contains":
        table = ans.trace.kg_table
        if table is None or spec.column not in table.columns:
            return False
        col = table.columns.index(spec.column)
        return any(row[col] == spec.value for row in table.rows)
    if spec.kind == "citation_url_present":
        return any(c.url == spec.url for c in ans.citations)
    raise ValueError(f"unknown checker kind {spec.kind!r}")


def run_case(case: TestCase, system, trials: int = 3) -> CaseResult:
    """Runs the case `trials` times; backend failures count as
    incorrect trials, never abort the case."""
    if trials < 1:
        raise ValueError("trials must be positive")
    results = []
    for i in range(trials):
        try:
            ans = system.answer(ChatRequest(question=case.question))
        except (LlmError, CypherGenerationFailed) as exc:
            results.append(TrialResult(index=i, correct=False, error=str(exc)))
            continue
        results.append(
            TrialResult(index=i, correct=apply_checker(case.check, ans), answer=ans)
        )
    correct = sum(1 for t in results if t.correct)
    return CaseResult(case=case, trials=results, passed=correct * 2 > trials)


def _round_accuracy(passed: int, total: int) -> Decimal:
    if total == 0:
        return Decimal("0.00")
    ratio = Decimal(passed) / Decimal(total)
    return ratio.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)


def format_accuracy(accuracy: Decimal) -> str:
    """Two-decimal accuracy printed the way the tables do: trailing
    zeros dropped (1, 0.8, 0.89)."""
    text = format(accuracy.normalize(), "f")
    return text


def run_suite(cases: Sequence[TestCase], system, backend: str = "", trials: int = 3) -> EvalReport:
    case_results = [run_case(case, system, trials=trials) for case in cases]
    categories = []
    for category in CATEGORIES:
        in_cat = [r for r in case_results if r.case.category == category]
        if not in_cat:
            continue
        passed = sum(1 for r in in_cat if r.passed)
        categories.append(
            CategoryResult(
                category=category,
                passed=passed,
                total=len(in_cat),
                accuracy=_round_accuracy(passed, len(in_cat)),
            )
        )
    return EvalReport(backend=backend, categories=categories,
                      case_results=case_results, iterations=trials)


def format_report(report: EvalReport) -> str:
    """Plain-text table shaped like the performance tables: Task /
    Backend / Passed / Total / Accuracy / Iterations."""
    headers = ("Task", "Backend", "Passed test cases", "Total test cases",
               "Accuracy", "Iterations")
    rows = [
        (
            _CATEGORY_LABELS[c.category],
            report.backend or "-",
            str(c.passed),
            str(c.total),
            format_accuracy(c.accuracy),
            str(report.iterations),
        )
        for c in report.categories
    ]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    def line(cells):
        return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(cells)).rstrip()
    out = [line(headers), line(tuple("-" * w for w in widths))]
    out.extend(line(r) for r in rows)
    return "\n".join(out)


def _checker_from_obj(obj: dict) -> CheckerSpec:
    kind = obj.get("kind", "")
    return CheckerSpec(
        kind=kind,
        texts=tuple(obj.get("texts", ())),
        column=obj.get("column", ""),
        value=obj.get("value"),
        url=obj.get("url", ""),
    )


def load_cases(path: str | Path) -> list[TestCase]:
    """Case file: JSON array of {id, category, question, check}."""
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileUnreadableError(f"cannot read {path}: {exc}") from exc
    data = json.loads(raw)
    if not isinstance(data, list):
        raise ValueError("case file must hold a JSON array")
    cases = []
    for i, obj in enumerate(data):
        try:
            cases.append(
                TestCase(
                    id=str(obj["id"]),
                    category=obj["category"],
                    question=obj["question"],
                    check=_checker_from_obj(obj["check"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"case {i}: {exc}") from exc
    return cases


def save_cases(cases: Sequence[TestCase], path: str | Path) -> None:
    data = []
    for case in cases:
        check: dict = {"kind": case.check.kind}
        if case.check.texts:
            check["texts"] = list(case.check.texts)
        if case.check.column:
            check["column"] = case.check.column
            check["value"] = case.check.value
        if case.check.url:
            check["url"] = case.check.url
        data.append({"id": case.id, "category": case.category,
                     "question": case.question, "check": check})
    Path(path).write_text(json.dumps(data, indent=1, ensure_ascii=False) + "\n",
                          encoding="utf-8")


def default_suites() -> list[TestCase]:
    """The built-in 5 + 9 + 9 cases authored against the bundled
    fixture dataset."""
    from .sampledata import fixture_cases

    return fixture_cases()
