import json
from pathlib import Path

import pytest

from topochat.analytics import (
    element_heights,
    export_periodic_table,
    import_periodic_table,
)
from topochat.cli import main
from topochat.cypher import execute, format_results, parse
from topochat.graph import load_graph
from topochat.literature import load_index, load_pairs
from topochat.llm import MockBackend, MockRule
from topochat.sampledata import TABLE3_CYPHER, TABLE3_QUESTION, fixture_pairs

SEED_TASK = "Extract standalone questions"
ANSWER_TASK = "Answer questions using only"
FISSION_TASK = "Generate new question-answer pairs"


@pytest.fixture(scope="module")
def demo(tmp_path_factory):
    out = tmp_path_factory.mktemp("demo")
    assert main(["demo-data", "--out", str(out)]) == 0
    return {p.stem.replace("qa_pairs", "pairs"): p for p in out.iterdir()}


def fission_doc(tmp_path):
    path = tmp_path / "doc.txt"
    path.write_text("10.1000/demo.9\nOxide gap survey\n"
                    "Band gaps were tabulated for a family of oxides "
                    "under strain.\n")
    return path


class TestDemoData:
    def test_writes_all_files(self, tmp_path, capsys):
        assert main(["demo-data", "--out", str(tmp_path / "d")]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 6
        names = {line.split(":", 1)[0] for line in lines}
        assert names == {"materials", "graph", "pairs", "index", "cases",
                         "config"}
        for line in lines:
            assert Path(line.split(": ", 1)[1]).exists()


class TestIngest:
    def test_builds_graph_snapshot(self, demo, tmp_path, capsys):
        out = tmp_path / "rebuilt.json"
        code = main(["ingest", "--materials", str(demo["materials"]),
                     "--out", str(out)])
        assert code == 0
        line = capsys.readouterr().out.strip()
        assert line == f"ingested 19 records -> {out} (79 nodes, 124 edges)"
        assert out.read_bytes() == demo["graph"].read_bytes()

    def test_missing_file_exit_1(self, tmp_path, capsys):
        code = main(["ingest", "--materials", str(tmp_path / "nope.jsonl"),
                     "--out", str(tmp_path / "g.json")])
        assert code == 1
        assert capsys.readouterr().err.startswith("error:")


class TestQuery:
    def test_prints_formatted_rows(self, demo, capsys):
        code = main(["query", "--graph", str(demo["graph"]),
                     "--cypher", TABLE3_CYPHER])
        assert code == 0
        out = capsys.readouterr().out
        graph = load_graph(demo["graph"])
        assert out == format_results(execute(graph, parse(TABLE3_CYPHER))) + "\n"
        assert "Bi3(TeCl5)2" in out

    def test_empty_result(self, demo, capsys):
        code = main(["query", "--graph", str(demo["graph"]),
                     "--cypher", "MATCH (n:Formula {name: 'Kryptonite'}) "
                                 "RETURN n.name"])
        assert code == 0
        assert capsys.readouterr().out.strip() == "[]"

    def test_bad_cypher_exit_1(self, demo, capsys):
        code = main(["query", "--graph", str(demo["graph"]),
                     "--cypher", "CREATE (n:Formula {name: 'X'})"])
        assert code == 1
        assert "error:" in capsys.readouterr().err


class TestIndex:
    def test_build_index(self, demo, tmp_path, capsys):
        out = tmp_path / "idx.json"
        code = main(["build-index", "--pairs", str(demo["pairs"]),
                     "--out", str(out)])
        assert code == 0
        assert capsys.readouterr().out.strip() == f"indexed 15 pairs -> {out}"
        assert out.read_bytes() == demo["index"].read_bytes()

    def test_search_ranks_stored_question_first(self, demo, capsys):
        pair = fixture_pairs()[0]
        code = main(["search", "--index", str(demo["index"]),
                     "--q", pair.question, "-k", "2"])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 4  # two hits, two lines each
        assert lines[0].startswith(f"1. [0.000000] {pair.doi}")
        assert lines[1] == f"   Q: {pair.question}"
        assert lines[2].startswith("2. [")

    def test_search_no_results(self, demo, capsys):
        code = main(["search", "--index", str(demo["index"]),
                     "--q", "anything", "-k", "0"])
        assert code == 0
        assert capsys.readouterr().out.strip() == "no results"


class TestAsk:
    def test_answer_with_citations(self, demo, capsys):
        code = main(["ask", "--graph", str(demo["graph"]),
                     "--index", str(demo["index"]),
                     "--backend", "mock:golden", TABLE3_QUESTION])
        assert code == 0
        out = capsys.readouterr().out
        assert "Bi2Se3" in out
        assert "Citations:" in out
        assert "doi: 1103.1580v2" in out
        assert "material: MAT00028452 " \
               "(http://materiae.iphy.ac.cn/materials/MAT00028452)" in out

    def test_trace_prints_deterministic_view(self, demo, capsys):
        code = main(["ask", "--graph", str(demo["graph"]),
                     "--index", str(demo["index"]),
                     "--backend", "mock:golden", "--trace", TABLE3_QUESTION])
        assert code == 0
        out = capsys.readouterr().out
        trace = json.loads(out.split("Trace:\n", 1)[1])
        assert trace["question"] == TABLE3_QUESTION
        assert trace["cypher"] == TABLE3_CYPHER
        assert "stage_seconds" in trace

    def test_unknown_backend_exit_1(self, demo, capsys):
        code = main(["ask", "--graph", str(demo["graph"]),
                     "--index", str(demo["index"]),
                     "--backend", "mock:nope", "hello"])
        assert code == 1
        err = capsys.readouterr().err
        assert "unknown backend" in err
        assert "mock:echo" in err and "mock:golden" in err

    def test_missing_graph_exit_1(self, demo, tmp_path, capsys):
        code = main(["ask", "--graph", str(tmp_path / "missing.json"),
                     "--index", str(demo["index"]),
                     "--backend", "mock:golden", "hello"])
        assert code == 1
        assert capsys.readouterr().err.startswith("error:")


class TestAnalyze:
    def test_exports_heights(self, demo, tmp_path, capsys):
        out = tmp_path / "heights.json"
        code = main(["analyze", "--graph", str(demo["graph"]),
                     "--out", str(out)])
        assert code == 0
        assert capsys.readouterr().out.strip() == \
            f"wrote 14 element heights -> {out}"
        graph = load_graph(demo["graph"])
        assert import_periodic_table(out) == element_heights(graph)

    def test_nsoc_coupling(self, demo, tmp_path, capsys):
        out = tmp_path / "nsoc.json"
        direct = tmp_path / "direct.json"
        assert main(["analyze", "--graph", str(demo["graph"]),
                     "--out", str(out), "--coupling", "NSOC"]) == 0
        graph = load_graph(demo["graph"])
        export_periodic_table(element_heights(graph, coupling="NSOC"), direct)
        assert out.read_bytes() == direct.read_bytes()

    def test_bad_coupling_rejected_by_parser(self, demo, tmp_path):
        with pytest.raises(SystemExit):
            main(["analyze", "--graph", str(demo["graph"]),
                  "--out", str(tmp_path / "x.json"), "--coupling", "maybe"])


class TestEval:
    def test_golden_backend_all_pass(self, demo, capsys):
        code = main(["eval", "--graph", str(demo["graph"]),
                     "--index", str(demo["index"]),
                     "--backend", "mock:golden"])
        assert code == 0
        out = capsys.readouterr().out
        for label, total in [("Entity Selection", 5),
                             ("Relationship Selection", 9),
                             ("Property Selection", 9)]:
            row = next(l for l in out.splitlines() if l.startswith(label))
            assert row.split()[-4:] == [str(total), str(total), "1", "3"]

    def test_cases_file_flag(self, demo, capsys):
        code = main(["eval", "--graph", str(demo["graph"]),
                     "--index", str(demo["index"]),
                     "--backend", "mock:golden",
                     "--cases", str(demo["cases"]),
                     "--iterations", "1"])
        assert code == 0
        assert "Entity Selection" in capsys.readouterr().out


class TestLlmProbe:
    def test_echo_backend(self, capsys):
        assert main(["llm-probe", "--backend", "mock:echo",
                     "--prompt", "repeat this"]) == 0
        assert capsys.readouterr().out.strip() == "repeat this"

    def test_config_declared_mock(self, tmp_path, capsys):
        config = tmp_path / "cfg.json"
        config.write_text(json.dumps(
            {"backends": {"lab": {"kind": "mock", "script": "echo"}}}))
        assert main(["llm-probe", "--backend", "lab",
                     "--config", str(config), "--prompt", "ping"]) == 0
        assert capsys.readouterr().out.strip() == "ping"

    def test_unknown_mock_script_exit_1(self, tmp_path, capsys):
        config = tmp_path / "cfg.json"
        config.write_text(json.dumps(
            {"backends": {"lab": {"kind": "mock", "script": "vibes"}}}))
        assert main(["llm-probe", "--backend", "lab",
                     "--config", str(config), "--prompt", "ping"]) == 1
        assert "unknown mock script" in capsys.readouterr().err

    def test_config_not_object_exit_1(self, tmp_path, capsys):
        config = tmp_path / "cfg.json"
        config.write_text("[1, 2]")
        assert main(["llm-probe", "--backend", "lab",
                     "--config", str(config), "--prompt", "ping"]) == 1
        assert "JSON object" in capsys.readouterr().err


class TestFission:
    def scripted(self, with_round=False):
        seeds = json.dumps(["What was measured?", "Which oxides were used?"])
        answered = json.dumps([
            {"question": "What was measured?", "answer": "Band gaps."},
            {"question": "Which oxides were used?", "answer": "A strained family."},
        ])
        rules = [
            MockRule(response=seeds, contains=SEED_TASK),
            MockRule(response=answered, contains=ANSWER_TASK),
        ]
        if with_round:
            rules.append(MockRule(response="no json here", contains=FISSION_TASK))
        return MockBackend(rules)

    def test_generates_pairs(self, tmp_path, monkeypatch, capsys):
        backend = self.scripted()
        monkeypatch.setattr("topochat.cli._resolve_backend",
                            lambda name, config: backend)
        out = tmp_path / "pairs.json"
        code = main(["fission", "--doc", str(fission_doc(tmp_path)),
                     "--out", str(out), "--rounds", "0"])
        assert code == 0
        assert capsys.readouterr().out.strip() == \
            f"generated 2 QA pairs -> {out}"
        pairs = load_pairs(out)
        assert [p.id for p in pairs] == [0, 1]
        assert pairs[0].doi == "10.1000/demo.9"

    def test_partial_save_on_round_failure(self, tmp_path, monkeypatch, capsys):
        backend = self.scripted(with_round=True)  # round output unparseable
        monkeypatch.setattr("topochat.cli._resolve_backend",
                            lambda name, config: backend)
        out = tmp_path / "pairs.json"
        code = main(["fission", "--doc", str(fission_doc(tmp_path)),
                     "--out", str(out), "--rounds", "1"])
        assert code == 1
        err = capsys.readouterr().err
        assert f"saved 2 pairs before the failure -> {out}" in err
        assert "error:" in err
        assert len(load_pairs(out)) == 2

    def test_unparseable_seeds_exit_1(self, tmp_path, capsys):
        out = tmp_path / "pairs.json"
        code = main(["fission", "--doc", str(fission_doc(tmp_path)),
                     "--out", str(out), "--backend", "mock:echo"])
        assert code == 1
        assert "error:" in capsys.readouterr().err
        assert not out.exists()


class TestParser:
    def test_no_command_exits(self):
        with pytest.raises(SystemExit):
            main([])

    def test_unknown_command_exits(self):
        with pytest.raises(SystemExit):
            main(["frobnicate"])
