"""Command line entry point.

Subcommands cover the whole stack: corpus ingestion, graph queries,
literature index building and search, QA-pair generation, backend
probing, end-to-end questions, periodic-table analytics, the eval
harness, and the HTTP server.

Backends are named. `mock:golden` and `mock:echo` are built in; any
other name must appear under "backends" in the JSON config file given
with --config. Remote backends read their API key from the environment
variable named in their config entry, never from the file itself.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analytics import element_heights, export_periodic_table
from .cypher import CypherError, execute, format_results, parse
from .evaluation import format_report, load_cases, run_suite
from .fission import FissionConfig, UnparseableLlmOutput, load_document, run_fission
from .graph import GraphError, build_graph, load_graph, save_graph, stats
from .literature import build_index, load_index, load_pairs, save_index, save_pairs
from .llm import BackendConfig, ChatMessage, LlmError, complete, make_backend
from .pipeline import ChatRequest, Pipeline, deterministic_view
from .records import FileUnreadableError, load_materials


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        config = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as err:
        raise FileUnreadableError(f"{path}: {err}") from err
    if not isinstance(config, dict):
        raise ValueError("config file must hold a JSON object")
    return config


def _resolve_backend(name: str, config: dict):
    """A backend object for a builtin name or a config-declared one."""
    from . import sampledata

    if name == "mock:golden":
        return sampledata.golden_backend()
    if name == "mock:echo":
        return sampledata.EchoBackend()
    declared = config.get("backends", {})
    if name not in declared:
        known = sorted(["mock:golden", "mock:echo", *declared])
        raise ValueError(f"unknown backend {name!r}; known: {', '.join(known)}")
    entry = dict(declared[name])
    kind = entry.pop("kind", "remote")
    if kind == "mock":
        script = entry.get("script", "golden")
        if script == "golden":
            return sampledata.golden_backend()
        if script == "echo":
            return sampledata.EchoBackend()
        raise ValueError(f"unknown mock script {script!r}")
    return make_backend(BackendConfig(kind=kind, **entry))


def _cmd_ingest(args) -> int:
    records = load_materials(args.materials)
    graph = build_graph(records)
    save_graph(graph, args.out)
    totals = stats(graph)
    print(f"ingested {len(records)} records -> {args.out} "
          f"({totals['total_nodes']} nodes, {totals['total_edges']} edges)")
    return 0


def _cmd_query(args) -> int:
    graph = load_graph(args.graph)
    table = execute(graph, parse(args.cypher))
    print(format_results(table))
    return 0


def _cmd_build_index(args) -> int:
    pairs = load_pairs(args.pairs)
    index = build_index(pairs)
    save_index(index, args.out)
    print(f"indexed {len(pairs)} pairs -> {args.out}")
    return 0


def _cmd_search(args) -> int:
    index = load_index(args.index)
    hits = index.search(args.q, k=args.k)
    for rank, hit in enumerate(hits, start=1):
        print(f"{rank}. [{hit.distance:.6f}] {hit.pair.doi}  {hit.pair.title}")
        print(f"   Q: {hit.pair.question}")
    if not hits:
        print("no results")
    return 0


def _cmd_fission(args) -> int:
    config = _load_config(args.config)
    backend = _resolve_backend(args.backend, config)
    doc = load_document(args.doc)
    cfg = FissionConfig(seeds_per_doc=args.seeds, rounds=args.rounds)
    try:
        pairs = run_fission(doc, backend, cfg)
    except UnparseableLlmOutput as err:
        partial = getattr(err, "partial", []) or []
        if partial:
            save_pairs(partial, args.out)
            print(f"saved {len(partial)} pairs before the failure -> {args.out}",
                  file=sys.stderr)
        print(f"error: {err}", file=sys.stderr)
        return 1
    save_pairs(pairs, args.out)
    print(f"generated {len(pairs)} QA pairs -> {args.out}")
    return 0


def _cmd_llm_probe(args) -> int:
    config = _load_config(args.config)
    backend = _resolve_backend(args.backend, config)
    print(complete(backend, [ChatMessage(role="user", content=args.prompt)]))
    return 0


def _cmd_ask(args) -> int:
    config = _load_config(args.config)
    backend = _resolve_backend(args.backend, config)
    graph = load_graph(args.graph)
    index = load_index(args.index)
    pipeline = Pipeline(graph, index, backend)
    ans = pipeline.answer(ChatRequest(question=args.question,
                                      session_id=args.session))
    print(ans.text)
    if ans.citations:
        print("\nCitations:")
        for c in ans.citations:
            suffix = f" ({c.url})" if c.url else ""
            print(f"  {c.kind}: {c.value}{suffix}")
    if args.trace:
        view = deterministic_view(ans)
        view["stage_seconds"] = dict(ans.trace.stage_seconds)
        print("\nTrace:")
        print(json.dumps(view, indent=1))
    return 0


def _cmd_analyze(args) -> int:
    graph = load_graph(args.graph)
    heights = element_heights(graph, coupling=args.coupling)
    export_periodic_table(heights, args.out)
    print(f"wrote {len(heights)} element heights -> {args.out}")
    return 0


def _cmd_eval(args) -> int:
    config = _load_config(args.config)
    backend = _resolve_backend(args.backend, config)
    graph = load_graph(args.graph)
    index = load_index(args.index)
    if args.cases:
        cases = load_cases(args.cases)
    else:
        from .evaluation import default_suites

        cases = default_suites()
    pipeline = Pipeline(graph, index, backend)
    report = run_suite(cases, pipeline, backend=args.backend,
                       trials=args.iterations)
    print(format_report(report))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    config = _load_config(args.config)
    server_cfg = config.get("server", {})
    if not isinstance(server_cfg, dict):
        raise ValueError('"server" section must be a JSON object')

    graph_path = server_cfg.get("graph", "")
    index_path = server_cfg.get("index", "")
    if graph_path:
        graph = load_graph(graph_path)
    else:
        from .sampledata import fixture_records

        graph = build_graph(fixture_records())
    if index_path:
        index = load_index(index_path)
    else:
        from .sampledata import fixture_pairs

        index = build_index(fixture_pairs())
    backend = _resolve_backend(server_cfg.get("backend", "mock:golden"), config)

    app = create_app(
        graph, index, backend,
        queue_capacity=int(server_cfg.get("queue_capacity", 64)),
        workers=int(server_cfg.get("workers", 2)),
        job_timeout=float(server_cfg.get("job_timeout", 60.0)),
        session_limit=int(server_cfg.get("session_limit", 100)),
        recommended=server_cfg.get("recommended_questions"),
    )
    host = args.host or server_cfg.get("host", "127.0.0.1")
    port = args.port if args.port is not None else int(server_cfg.get("port", 8077))
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


def _cmd_demo_data(args) -> int:
    from .sampledata import write_demo_data

    paths = write_demo_data(args.out)
    for name, path in paths.items():
        print(f"{name}: {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topochat",
        description="Materials knowledge-graph QA toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="build a graph snapshot from a materials file")
    p.add_argument("--materials", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("query", help="run a Cypher query against a graph snapshot")
    p.add_argument("--graph", required=True)
    p.add_argument("--cypher", required=True)
    p.set_defaults(func=_cmd_query)

    p = sub.add_parser("build-index", help="embed QA pairs into an index snapshot")
    p.add_argument("--pairs", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_build_index)

    p = sub.add_parser("search", help="nearest-neighbor search over an index")
    p.add_argument("--index", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("-k", type=int, default=3)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("fission", help="generate QA pairs from a document")
    p.add_argument("--doc", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--rounds", type=int, default=2)
    p.add_argument("--backend", default="mock:golden")
    p.add_argument("--config")
    p.set_defaults(func=_cmd_fission)

    p = sub.add_parser("llm-probe", help="send one prompt to a backend")
    p.add_argument("--backend", required=True)
    p.add_argument("--prompt", required=True)
    p.add_argument("--config")
    p.set_defaults(func=_cmd_llm_probe)

    p = sub.add_parser("ask", help="answer a question with the full pipeline")
    p.add_argument("--graph", required=True)
    p.add_argument("--index", required=True)
    p.add_argument("--backend", required=True)
    p.add_argument("--config")
    p.add_argument("--session", default="")
    p.add_argument("--trace", action="store_true")
    p.add_argument("question")
    p.set_defaults(func=_cmd_ask)

    p = sub.add_parser("analyze", help="export periodic-table element heights")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--coupling", default="SOC", choices=["SOC", "NSOC"])
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("eval", help="run the accuracy suite against a backend")
    p.add_argument("--graph", required=True)
    p.add_argument("--index", required=True)
    p.add_argument("--backend", required=True)
    p.add_argument("--cases")
    p.add_argument("--iterations", type=int, default=3)
    p.add_argument("--config")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--config")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("demo-data", help="write the bundled fixture files")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_demo_data)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FileUnreadableError, FileNotFoundError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (CypherError, GraphError, LlmError, ValueError,
            json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
