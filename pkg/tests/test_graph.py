import random

import pytest

from topochat.graph import (
    DuplicateFormulaError,
    EdgeType,
    GraphBuilder,
    GraphError,
    NodeCategory,
    UnknownNodeError,
    build_graph,
    get_node,
    load_graph,
    neighbors,
    save_graph,
    stats,
)

from cypher_oracle import random_records


class TestTrioFixture:
    def test_node_counts(self, trio_graph):
        s = stats(trio_graph)
        assert s["nodes"]["Formula"] == 3
        assert s["nodes"]["TopoClass"] == 1
        assert s["nodes"]["Lattice"] == 2  # monoclinic, trigonal
        assert s["edges"]["BELONGS_TO_TOPOCLASS"] == 3

    def test_class_edges_carry_soc(self, trio_graph):
        rels = [e for e in trio_graph.edges if e.etype is EdgeType.BELONGS_TO_TOPOCLASS]
        assert len(rels) == 3
        assert all(e.rel_value == "SOC" for e in rels)

    def test_other_edges_carry_no_rel_value(self, trio_graph):
        for e in trio_graph.edges:
            if e.etype is not EdgeType.BELONGS_TO_TOPOCLASS:
                assert e.rel_value is None

    def test_get_node_by_name(self, trio_graph):
        node = get_node(trio_graph, NodeCategory.Formula, "BaSn2")
        assert node is not None
        assert node.attrs["matID"] == "MAT00028452"
        assert node.attrs["name"] == "BaSn2"
        assert node.attrs["cate"] == "Formula"

    def test_get_node_accepts_category_string(self, trio_graph):
        assert get_node(trio_graph, "Formula", "Bi") is not None
        with pytest.raises(ValueError):
            get_node(trio_graph, "Planet", "Bi")

    def test_get_node_absent(self, trio_graph):
        assert get_node(trio_graph, NodeCategory.Formula, "Unobtanium") is None

    def test_class_node_has_three_incoming(self, trio_graph):
        ti = get_node(trio_graph, NodeCategory.TopoClass, "topological insulator")
        sources = {trio_graph.node(e.src).name for e in trio_graph.in_edges(ti.id)}
        assert sources == {"Bi3(TeCl5)2", "BaSn2", "Bi"}

    def test_absent_record_fields_missing_from_attrs(self, trio_graph):
        bi = get_node(trio_graph, NodeCategory.Formula, "Bi")
        assert "indirect_gap" not in bi.attrs
        assert bi.attrs["soc_dos_gap"] == 0.014


class TestBuilderInvariants:
    def test_duplicate_formula_matid_pair(self, records):
        with pytest.raises(DuplicateFormulaError):
            build_graph(records + [records[0]])

    def test_same_formula_different_matid_renamed(self, records):
        import dataclasses

        twin = dataclasses.replace(records[1], matID="MAT99999999")
        g = build_graph(records + [twin])
        assert get_node(g, NodeCategory.Formula, "BaSn2") is not None
        renamed = get_node(g, NodeCategory.Formula, "BaSn2 (MAT99999999)")
        assert renamed is not None
        assert renamed.attrs["matID"] == "MAT99999999"

    def test_class_edge_requires_rel_value(self):
        b = GraphBuilder()
        f = b.add_node(NodeCategory.Formula, "X")
        c = b.add_node(NodeCategory.TopoClass, "topological insulator")
        with pytest.raises(GraphError):
            b.add_edge(f, c, EdgeType.BELONGS_TO_TOPOCLASS)
        with pytest.raises(GraphError):
            b.add_edge(f, c, EdgeType.BELONGS_TO_TOPOCLASS, "sometimes")

    def test_non_class_edge_rejects_rel_value(self):
        b = GraphBuilder()
        f = b.add_node(NodeCategory.Formula, "X")
        e = b.add_node(NodeCategory.Element, "Bi")
        with pytest.raises(GraphError):
            b.add_edge(f, e, EdgeType.HAS_ELEMENT, "SOC")

    def test_edge_target_category_checked(self):
        b = GraphBuilder()
        f = b.add_node(NodeCategory.Formula, "X")
        lat = b.add_node(NodeCategory.Lattice, "cubic")
        with pytest.raises(GraphError):
            b.add_edge(f, lat, EdgeType.HAS_ELEMENT)

    def test_unknown_endpoint(self):
        b = GraphBuilder()
        f = b.add_node(NodeCategory.Formula, "X")
        with pytest.raises(GraphError):
            b.add_edge(f, 999, EdgeType.HAS_LATTICE)

    def test_duplicate_node_name_within_category(self):
        b = GraphBuilder()
        b.add_node(NodeCategory.Element, "Bi")
        with pytest.raises(GraphError):
            b.add_node(NodeCategory.Element, "Bi")

    def test_empty_name_rejected(self):
        with pytest.raises(GraphError):
            GraphBuilder().add_node(NodeCategory.Element, "  ")

    def test_unknown_node_id(self, trio_graph):
        with pytest.raises(UnknownNodeError):
            trio_graph.node(10_000)


class TestCountsAgainstBruteForce:
    def test_random_records_match_set_arithmetic(self):
        rng = random.Random(4242)
        records = random_records(rng, 100)
        g = build_graph(records)

        # independent recount straight from the records
        formulas = {(r.formula, r.matID) for r in records}
        categories = {
            "Element": {s for r in records for s in r.elements},
            "Lattice": {r.crystal_system for r in records},
            "Spacegroup": {r.spacegroup_symbol for r in records},
            "Pointgroup": {r.pointgroup for r in records},
            "TopoClass": {
                c
                for r in records
                for c in (r.topo_class_soc, r.topo_class_nsoc)
                if c is not None
            },
        }
        expected_edges = sum(
            len(set(r.elements))
            + 3
            + (r.topo_class_soc is not None)
            + (r.topo_class_nsoc is not None)
            for r in records
        )

        s = stats(g)
        assert s["nodes"]["Formula"] == len(formulas)
        for cate, names in categories.items():
            assert s["nodes"][cate] == len(names)
        assert s["total_edges"] == expected_edges

    def test_build_is_deterministic(self):
        rng1, rng2 = random.Random(7), random.Random(7)
        g1 = build_graph(random_records(rng1, 50))
        g2 = build_graph(random_records(rng2, 50))
        assert [(n.id, n.cate, n.name) for n in g1.nodes.values()] == [
            (n.id, n.cate, n.name) for n in g2.nodes.values()
        ]
        assert [(e.id, e.src, e.dst, e.etype, e.rel_value) for e in g1.edges] == [
            (e.id, e.src, e.dst, e.etype, e.rel_value) for e in g2.edges
        ]


class TestNeighbors:
    def test_trio_class_node(self, trio_graph):
        ti = get_node(trio_graph, NodeCategory.TopoClass, "topological insulator")
        got = neighbors(trio_graph, ti.id)
        assert [node.name for _, node in got] == ["BaSn2", "Bi", "Bi3(TeCl5)2"]
        assert all(edge.rel_value == "SOC" for edge, _ in got)

    def test_matches_full_edge_scan(self, graph):
        for node in list(graph.nodes.values()):
            expected = []
            for e in graph.edges:
                if e.src == node.id:
                    expected.append((e, graph.node(e.dst)))
                elif e.dst == node.id:
                    expected.append((e, graph.node(e.src)))
            got = neighbors(graph, node.id)
            assert sorted(got, key=lambda p: p[0].id) == sorted(
                expected, key=lambda p: p[0].id
            )

    def test_isolated_node(self):
        b = GraphBuilder()
        b.add_node(NodeCategory.Element, "Xe")
        g = b.build()
        assert neighbors(g, 0) == []

    def test_edge_index_consistency(self, graph):
        for e in graph.edges:
            assert e in graph.out_edges(e.src)
            assert e in graph.in_edges(e.dst)


class TestSnapshot:
    def test_roundtrip(self, graph, tmp_path):
        path = tmp_path / "graph.json"
        save_graph(graph, path)
        loaded = load_graph(path)
        assert stats(loaded) == stats(graph)
        assert [(n.id, n.cate, n.name, n.attrs) for n in loaded.nodes.values()] == [
            (n.id, n.cate, n.name, n.attrs) for n in graph.nodes.values()
        ]
        assert [(e.id, e.src, e.dst, e.etype, e.rel_value) for e in loaded.edges] == [
            (e.id, e.src, e.dst, e.etype, e.rel_value) for e in graph.edges
        ]

    def test_snapshot_bytes_stable(self, graph, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        save_graph(graph, a)
        save_graph(graph, b)
        assert a.read_bytes() == b.read_bytes()

    def test_rejects_non_snapshot(self, tmp_path):
        path = tmp_path / "junk.json"
        path.write_text('{"hello": 1}')
        with pytest.raises(GraphError):
            load_graph(path)

    def test_rejects_missing_file(self, tmp_path):
        with pytest.raises(GraphError):
            load_graph(tmp_path / "nope.json")
