import itertools
import json
from decimal import Decimal

import pytest

from topochat.cypher import ResultTable
from topochat.evaluation import (
    CATEGORIES,
    CheckerSpec,
    EvalReport,
    TestCase,
    apply_checker,
    default_suites,
    format_accuracy,
    format_report,
    load_cases,
    run_case,
    run_suite,
    save_cases,
    _round_accuracy,
)
from topochat.llm import LlmError
from topochat.pipeline import ChatAnswer, Citation, PipelineTrace
from topochat.sampledata import fixture_cases, fixture_records, golden_backend
from topochat.pipeline import Pipeline


def answer_with(text="", columns=None, rows=None, citations=()):
    trace = PipelineTrace(trace_id="t000001", question="q?")
    if columns is not None:
        trace.kg_table = ResultTable(columns=columns, rows=rows or [])
    return ChatAnswer(text=text, citations=list(citations), trace=trace)


class ScriptedSystem:
    """answer() pops one prepared ChatAnswer (or exception) per call."""

    def __init__(self, outcomes):
        self.outcomes = list(outcomes)

    def answer(self, req):
        outcome = self.outcomes.pop(0)
        if isinstance(outcome, Exception):
            raise outcome
        return outcome


YES_CASE = TestCase(
    id="c1",
    category="entity_selection",
    question="does it pass?",
    check=CheckerSpec(kind="answer_contains_all", texts=("yes",)),
)


def scripted(*pattern):
    # True -> correct answer, False -> wrong answer, "err" -> LlmError
    outcomes = []
    for p in pattern:
        if p == "err":
            outcomes.append(LlmError("backend down"))
        else:
            outcomes.append(answer_with(text="yes!" if p else "no"))
    return ScriptedSystem(outcomes)


class TestCheckers:
    def test_answer_contains_all_case_insensitive(self):
        spec = CheckerSpec(kind="answer_contains_all", texts=("Bi2Se3", "BaSn2"))
        assert apply_checker(spec, answer_with(text="bi2se3 and basn2 made the cut"))
        assert not apply_checker(spec, answer_with(text="only bi2se3 here"))

    def test_answer_contains_any(self):
        spec = CheckerSpec(kind="answer_contains_any", texts=("Bi", "Te"))
        assert apply_checker(spec, answer_with(text="mentions te only"))
        assert not apply_checker(spec, answer_with(text="neither one"))

    def test_cypher_result_contains(self):
        spec = CheckerSpec(kind="cypher_result_contains", column="n.matID",
                           value="MAT00028452")
        good = answer_with(columns=["n.name", "n.matID"],
                           rows=[["BaSn2", "MAT00028452"]])
        assert apply_checker(spec, good)
        wrong_value = answer_with(columns=["n.matID"], rows=[["MAT00000001"]])
        assert not apply_checker(spec, wrong_value)
        missing_column = answer_with(columns=["n.name"], rows=[["BaSn2"]])
        assert not apply_checker(spec, missing_column)
        assert not apply_checker(spec, answer_with(text="no table at all"))

    def test_cypher_result_value_not_coerced(self):
        spec = CheckerSpec(kind="cypher_result_contains", column="g", value=0.201)
        assert apply_checker(spec, answer_with(columns=["g"], rows=[[0.201]]))
        assert not apply_checker(spec, answer_with(columns=["g"], rows=[["0.201"]]))

    def test_citation_url_present(self):
        url = "http://materiae.iphy.ac.cn/materials/MAT00028452"
        spec = CheckerSpec(kind="citation_url_present", url=url)
        hit = answer_with(citations=[Citation(kind="material",
                                              value="MAT00028452", url=url)])
        assert apply_checker(spec, hit)
        assert not apply_checker(spec, answer_with(citations=[]))

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"kind": "regex_match"},
            {"kind": "answer_contains_all"},
            {"kind": "answer_contains_any", "texts": ()},
            {"kind": "cypher_result_contains"},
            {"kind": "citation_url_present"},
        ],
    )
    def test_spec_validation(self, kwargs):
        with pytest.raises(ValueError):
            CheckerSpec(**kwargs)

    def test_case_validation(self):
        check = CheckerSpec(kind="answer_contains_any", texts=("x",))
        with pytest.raises(ValueError):
            TestCase(id="x", category="vibes", question="q?", check=check)
        with pytest.raises(ValueError):
            TestCase(id="x", category="entity_selection", question=" ", check=check)


class TestRunCase:
    def test_two_of_three_passes(self):
        result = run_case(YES_CASE, scripted(True, True, False))
        assert result.passed
        assert [t.correct for t in result.trials] == [True, True, False]

    def test_one_of_three_fails(self):
        result = run_case(YES_CASE, scripted(False, True, False))
        assert not result.passed

    def test_exhaustive_majority_rule(self):
        for combo in itertools.product([True, False], repeat=3):
            result = run_case(YES_CASE, scripted(*combo))
            assert result.passed == (sum(combo) >= 2)

    def test_backend_failures_count_as_incorrect(self):
        result = run_case(YES_CASE, scripted("err", "err", "err"))
        assert not result.passed
        assert len(result.trials) == 3
        assert all(t.error for t in result.trials)
        assert all(not t.correct for t in result.trials)

    def test_failure_does_not_abort_remaining_trials(self):
        result = run_case(YES_CASE, scripted("err", True, True))
        assert result.passed

    def test_custom_trial_count(self):
        result = run_case(YES_CASE, scripted(True, False), trials=2)
        assert not result.passed  # 1 of 2 is not a majority

    def test_trials_must_be_positive(self):
        with pytest.raises(ValueError):
            run_case(YES_CASE, scripted(), trials=0)


class TestAccuracy:
    @pytest.mark.parametrize(
        "passed,total,text",
        [
            (5, 5, "1"),
            (4, 5, "0.8"),
            (8, 9, "0.89"),
            (6, 9, "0.67"),
            (3, 9, "0.33"),
            (4, 9, "0.44"),
            (0, 5, "0"),
            (0, 0, "0"),
        ],
    )
    def test_printed_form(self, passed, total, text):
        assert format_accuracy(_round_accuracy(passed, total)) == text

    def test_rounded_half_up(self):
        assert _round_accuracy(1, 8) == Decimal("0.13")  # 0.125 rounds up


class TestRunSuite:
    def make_cases(self, n, category):
        return [
            TestCase(
                id=f"{category}-{i}",
                category=category,
                question=f"case {i}?",
                check=CheckerSpec(kind="answer_contains_all", texts=("yes",)),
            )
            for i in range(n)
        ]

    def test_categories_grouped_in_canonical_order(self):
        cases = (
            self.make_cases(1, "property_selection")
            + self.make_cases(1, "entity_selection")
        )
        system = scripted(*([True] * 6))
        report = run_suite(cases, system)
        assert [c.category for c in report.categories] == [
            "entity_selection",
            "property_selection",
        ]

    def test_empty_categories_skipped(self):
        cases = self.make_cases(2, "entity_selection")
        report = run_suite(cases, scripted(*[True] * 6))
        assert len(report.categories) == 1
        assert report.categories[0].passed == 2
        assert report.categories[0].total == 2

    def test_iterations_and_backend_recorded(self):
        cases = self.make_cases(1, "entity_selection")
        report = run_suite(cases, scripted(True), backend="mock:golden", trials=1)
        assert report.backend == "mock:golden"
        assert report.iterations == 1

    def test_report_per_case_results_kept(self):
        cases = self.make_cases(3, "relationship_selection")
        report = run_suite(cases, scripted(*[True] * 9))
        assert len(report.case_results) == 3


class TestFormatReport:
    def test_header_row(self):
        report = EvalReport(backend="mock:golden", categories=[],
                            case_results=[], iterations=3)
        lines = format_report(report).splitlines()
        for header in ("Task", "Backend", "Passed test cases",
                       "Total test cases", "Accuracy", "Iterations"):
            assert header in lines[0]

    def test_category_rows(self):
        cases = [
            TestCase(id=f"e{i}", category="entity_selection", question="q?",
                     check=CheckerSpec(kind="answer_contains_all", texts=("yes",)))
            for i in range(5)
        ]
        report = run_suite(cases, scripted(*[True] * 15), backend="mock:golden")
        text = format_report(report)
        row = next(l for l in text.splitlines() if l.startswith("Entity Selection"))
        cells = row.split()
        assert "mock:golden" in cells
        assert cells[-4:] == ["5", "5", "1", "3"]


class TestDefaultSuites:
    def test_sizes(self):
        cases = default_suites()
        by_cat = {c: 0 for c in CATEGORIES}
        for case in cases:
            by_cat[case.category] += 1
        assert by_cat == {
            "entity_selection": 5,
            "relationship_selection": 9,
            "property_selection": 9,
        }

    def test_matches_bundled_cases(self):
        assert default_suites() == fixture_cases()

    def test_every_question_names_a_fixture_entity(self):
        names = set()
        for r in fixture_records():
            names.add(r.formula)
            names.update(r.elements)
            names.add(r.crystal_system)
            names.add(r.spacegroup_symbol)
            names.add(r.pointgroup)
            names.update(c for c in (r.topo_class_soc, r.topo_class_nsoc) if c)
        for case in default_suites():
            assert any(n in case.question for n in names), case.id

    def test_ids_unique(self):
        ids = [c.id for c in default_suites()]
        assert len(set(ids)) == len(ids)

    def test_golden_system_passes_everything(self, graph, index):
        system = Pipeline(graph, index, golden_backend())
        report = run_suite(default_suites(), system, backend="mock:golden")
        for cat in report.categories:
            assert cat.passed == cat.total, cat.category
            assert format_accuracy(cat.accuracy) == "1"

    def test_rerun_produces_identical_report_text(self, graph, index):
        def run():
            system = Pipeline(graph, index, golden_backend())
            return format_report(run_suite(default_suites(), system,
                                           backend="mock:golden"))
        assert run() == run()


class TestCasesFile:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "cases.json"
        save_cases(fixture_cases(), path)
        assert load_cases(path) == fixture_cases()

    def test_rejects_bad_checker(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps([{
            "id": "x", "category": "entity_selection", "question": "q?",
            "check": {"kind": "regex_match"},
        }]))
        with pytest.raises(ValueError):
            load_cases(path)
