import random

import pytest

from topochat.cypher import compare, execute, format_results, parse
from topochat.graph import EdgeType, GraphBuilder, NodeCategory, build_graph
from topochat.sampledata import TABLE3_CYPHER

from cypher_oracle import random_graph, random_query, ref_execute


def run(g, text):
    return execute(g, parse(text))


def chain_graph():
    # Bi -HAS_ELEMENT-> Bi(elem), Bi -BELONGS_TO_TOPOCLASS(SOC)-> TI
    b = GraphBuilder()
    f = b.add_node(NodeCategory.Formula, "Bi", {"matID": "M1", "soc_dos_gap": 0.014})
    e = b.add_node(NodeCategory.Element, "Bi")
    c = b.add_node(NodeCategory.TopoClass, "topological insulator")
    b.add_edge(f, e, EdgeType.HAS_ELEMENT)
    b.add_edge(f, c, EdgeType.BELONGS_TO_TOPOCLASS, "SOC")
    return b.build()


class TestCanonicalQuery:
    def test_trio_rows_in_order(self, trio_graph):
        table = run(trio_graph, TABLE3_CYPHER)
        assert table.columns == ["n.name", "n.matID"]
        assert table.rows == [
            ["Bi3(TeCl5)2", "MAT00000859"],
            ["BaSn2", "MAT00028452"],
            ["Bi", "MAT00028196"],
        ]

    def test_same_rows_on_full_fixture(self, graph):
        # LIMIT 3 keeps the three oldest records, which are the demo trio
        table = run(graph, TABLE3_CYPHER)
        assert table.rows == [
            ["Bi3(TeCl5)2", "MAT00000859"],
            ["BaSn2", "MAT00028452"],
            ["Bi", "MAT00028196"],
        ]

    def test_formatted_like_the_demo(self, trio_graph):
        table = run(trio_graph, TABLE3_CYPHER)
        assert format_results(table, 20) == (
            "[{'n.name': 'Bi3(TeCl5)2', 'n.matID': 'MAT00000859'}, "
            "{'n.name': 'BaSn2', 'n.matID': 'MAT00028452'}, "
            "{'n.name': 'Bi', 'n.matID': 'MAT00028196'}]"
        )

    def test_gap_filter_excludes_gapless_rows(self, graph):
        # CsPbI3 is a SOC trivial insulator with no soc_dos_gap attr
        table = run(
            graph,
            "MATCH (n:Formula) WHERE n.soc_dos_gap <> \"\" RETURN n.name",
        )
        names = [row[0] for row in table.rows]
        assert "CsPbI3" not in names
        assert "Bi2Se3" in names

    def test_empty_graph(self):
        g = build_graph([])
        assert run(g, TABLE3_CYPHER).rows == []
        assert run(g, "MATCH (n) RETURN n.name").rows == []


class TestCompare:
    @pytest.mark.parametrize("op", ["=", "<>", "<", "<=", ">", ">=", "CONTAINS"])
    def test_absent_is_never_true(self, op):
        assert compare(op, None, 1) is False
        assert compare(op, "x", None) is False
        assert compare(op, None, None) is False

    def test_number_order(self):
        assert compare("<", 0.014, 0.2)
        assert compare(">=", 0.2, 0.2)
        assert not compare("<>", 0.2, 0.2)
        assert compare("=", 2, 2.0)

    def test_text_order(self):
        assert compare("<", "Ba", "Bi")
        assert compare("=", "Bi", "Bi")
        assert not compare("<", "Bi", "Ba")

    def test_number_against_parsable_text(self):
        assert compare("=", 0.201, "0.201")
        assert compare(">", "10", 2)
        assert compare("<=", 2, "10")

    def test_number_against_unparsable_text(self):
        assert compare("<>", 0.103, "")
        assert compare("<>", 0.103, "abc")
        assert not compare("=", 0.103, "abc")
        assert not compare("<", 0.103, "abc")
        assert not compare(">=", 0.103, "abc")

    @pytest.mark.parametrize("text", ["nan", "inf", "-inf", "Infinity"])
    def test_non_finite_spellings_stay_text(self, text):
        assert compare("<>", 1.0, text)
        assert not compare("=", float("inf"), "inf")

    def test_booleans(self):
        assert compare("=", True, True)
        assert compare("<>", True, False)
        assert not compare("<", False, True)
        assert compare("<>", True, 1)
        assert compare("<>", False, "false")
        assert not compare("=", True, 1)

    def test_contains_is_strict_text(self):
        assert compare("CONTAINS", "Bi2Se3", "Se")
        assert not compare("CONTAINS", "Bi2Se3", "se")
        assert not compare("CONTAINS", 123, "2")
        assert not compare("CONTAINS", "123", 2)


class TestMatching:
    def test_where_keeps_only_boolean_true(self):
        g = chain_graph()
        # a bare text property is not a boolean, so every row drops
        assert run(g, "MATCH (n:Formula) WHERE n.matID RETURN n.name").rows == []

    def test_unknown_label_matches_nothing(self):
        g = chain_graph()
        assert run(g, "MATCH (n:Planet) RETURN n.name").rows == []
        assert run(g, "MATCH (a)-[r:KNOWS]->(b) RETURN a.name").rows == []

    def test_edge_not_reused_within_pattern(self):
        b = GraphBuilder()
        f = b.add_node(NodeCategory.Formula, "X")
        e = b.add_node(NodeCategory.Element, "Te")
        b.add_edge(f, e, EdgeType.HAS_ELEMENT)
        g = b.build()
        # the one edge cannot serve both hops
        table = run(g, "MATCH (x)-[r1]-(y)-[r2]-(z) RETURN x.name")
        assert table.rows == []

    def test_edge_not_reused_across_patterns(self):
        g = chain_graph()
        table = run(
            g,
            "MATCH (a)-[r1:HAS_ELEMENT]->(b) MATCH (c)-[r2:HAS_ELEMENT]->(d) "
            "RETURN a.name",
        )
        assert table.rows == []

    def test_two_edges_allow_two_hops(self):
        g = chain_graph()
        table = run(
            g,
            "MATCH (e:Element)<-[r1]-(f:Formula)-[r2]->(c:TopoClass) "
            "RETURN e.name, f.name, c.name",
        )
        assert table.rows == [["Bi", "Bi", "topological insulator"]]

    def test_shared_variable_joins_patterns(self, trio_graph):
        table = run(
            trio_graph,
            "MATCH (n:Formula)-[r:HAS_ELEMENT]->(e:Element), "
            "(n)-[s:HAS_LATTICE]->(l:Lattice) RETURN n.name, e.name, l.name",
        )
        # one row per (formula, element): 3 + 2 + 1
        assert len(table.rows) == 6

    def test_node_may_repeat_within_match(self):
        b = GraphBuilder()
        f1 = b.add_node(NodeCategory.Formula, "A")
        f2 = b.add_node(NodeCategory.Formula, "B")
        e = b.add_node(NodeCategory.Element, "Te")
        b.add_edge(f1, e, EdgeType.HAS_ELEMENT)
        b.add_edge(f2, e, EdgeType.HAS_ELEMENT)
        g = b.build()
        # distinct edges, same middle node visited twice
        table = run(g, "MATCH (a)-[r1]->(e)<-[r2]-(b) RETURN a.name, b.name")
        assert sorted(tuple(r) for r in table.rows) == [("A", "B"), ("B", "A")]

    def test_undirected_matches_both_ways(self):
        g = chain_graph()
        table = run(g, "MATCH (a:Formula)-[r:HAS_ELEMENT]-(b) RETURN b.name")
        assert table.rows == [["Bi"]]
        table = run(g, "MATCH (a:Element)-[r:HAS_ELEMENT]-(b) RETURN b.name")
        assert table.rows == [["Bi"]]

    def test_rel_property_filter(self, graph):
        soc = run(
            graph,
            "MATCH (n:Formula)-[r:BELONGS_TO_TOPOCLASS {rel_value: 'SOC'}]->"
            "(c:TopoClass {name: 'topological insulator'}) RETURN n.name",
        )
        nsoc = run(
            graph,
            "MATCH (n:Formula)-[r:BELONGS_TO_TOPOCLASS {rel_value: 'NSOC'}]->"
            "(c:TopoClass {name: 'topological insulator'}) RETURN n.name",
        )
        assert ["CsPbI3"] in nsoc.rows
        assert ["CsPbI3"] not in soc.rows
        assert ["Bi"] in soc.rows

    def test_rel_projection(self):
        g = chain_graph()
        table = run(
            g,
            "MATCH (a:Formula)-[r:BELONGS_TO_TOPOCLASS]->(b) "
            "RETURN r.rel_value, r.etype, r.missing",
        )
        assert table.rows == [["SOC", "BELONGS_TO_TOPOCLASS", None]]

    def test_node_property_map_with_number(self, graph):
        table = run(
            graph, "MATCH (n:Formula {soc_dos_gap: 0.201}) RETURN n.name"
        )
        assert table.rows == [["BaSn2"]]


class TestProjection:
    def test_base_order_follows_entity_ids(self, graph):
        table = run(graph, "MATCH (n:Formula) RETURN n.name")
        ids = [
            next(
                n.id
                for n in graph.nodes.values()
                if n.cate is NodeCategory.Formula and n.name == row[0]
            )
            for row in table.rows
        ]
        assert ids == sorted(ids)

    def test_distinct_keeps_first(self, trio_graph):
        table = run(
            trio_graph,
            "MATCH (n:Formula)-[r]->(l:Lattice) RETURN DISTINCT l.name",
        )
        assert table.rows == [["monoclinic"], ["trigonal"]]

    def test_count_star_groups_by_other_columns(self, trio_graph):
        table = run(
            trio_graph,
            "MATCH (n:Formula)-[r]->(l:Lattice) RETURN l.name, count(*)",
        )
        assert table.rows == [["monoclinic", 1], ["trigonal", 2]]

    def test_count_of_property_skips_absent(self, graph):
        table = run(graph, "MATCH (n:Formula) RETURN count(n.soc_dos_gap)")
        with_gap = sum(
            1
            for n in graph.nodes.values()
            if n.cate is NodeCategory.Formula and "soc_dos_gap" in n.attrs
        )
        assert table.rows == [[with_gap]]

    def test_count_of_var_counts_rows(self, trio_graph):
        table = run(trio_graph, "MATCH (n:Formula) RETURN count(n)")
        assert table.rows == [[3]]

    def test_count_over_no_bindings_yields_no_rows(self):
        g = build_graph([])
        assert run(g, "MATCH (n:Formula) RETURN count(*)").rows == []

    def test_order_by_alias(self, trio_graph):
        table = run(
            trio_graph,
            "MATCH (n:Formula) RETURN n.name AS who ORDER BY who",
        )
        assert [r[0] for r in table.rows] == ["BaSn2", "Bi", "Bi3(TeCl5)2"]

    def test_order_by_descending_number(self, trio_graph):
        table = run(
            trio_graph,
            "MATCH (n:Formula) RETURN n.name, n.soc_dos_gap ORDER BY n.soc_dos_gap DESC",
        )
        assert [r[1] for r in table.rows] == [0.201, 0.103, 0.014]

    def test_order_is_stable_across_keys(self, graph):
        table = run(
            graph,
            "MATCH (n:Formula)-[r]->(l:Lattice) "
            "RETURN l.name, n.name ORDER BY l.name",
        )
        by_lattice = {}
        for lattice, name in table.rows:
            by_lattice.setdefault(lattice, []).append(name)
        base = run(
            graph,
            "MATCH (n:Formula)-[r]->(l:Lattice) RETURN l.name, n.name",
        )
        for lattice, names in by_lattice.items():
            assert names == [n for l, n in base.rows if l == lattice]

    def test_mixed_type_sort_ranks(self):
        b = GraphBuilder()
        b.add_node(NodeCategory.Formula, "A", {"x": "text"})
        b.add_node(NodeCategory.Formula, "B", {"x": 5})
        b.add_node(NodeCategory.Formula, "C", {"x": True})
        b.add_node(NodeCategory.Formula, "D")
        g = b.build()
        table = run(g, "MATCH (n:Formula) RETURN n.x ORDER BY n.x")
        assert table.rows == [[5], ["text"], [True], [None]]

    def test_order_by_free_expression(self, trio_graph):
        table = run(
            trio_graph,
            "MATCH (n:Formula) RETURN n.name ORDER BY n.soc_dos_gap DESC",
        )
        assert [r[0] for r in table.rows] == ["BaSn2", "Bi3(TeCl5)2", "Bi"]

    def test_limit_zero(self, trio_graph):
        assert run(trio_graph, "MATCH (n) RETURN n.name LIMIT 0").rows == []

    def test_limit_beyond_rows(self, trio_graph):
        table = run(trio_graph, "MATCH (n:Formula) RETURN n.name LIMIT 99")
        assert len(table.rows) == 3

    def test_absent_property_projects_none(self):
        g = chain_graph()
        table = run(g, "MATCH (n:Formula) RETURN n.nope")
        assert table.rows == [[None]]


class TestFormatResults:
    def test_empty(self, trio_graph):
        table = run(trio_graph, "MATCH (n:Planet) RETURN n.name")
        assert format_results(table, 10) == "[]"

    def test_truncation_note(self, graph):
        table = run(graph, "MATCH (n:Formula) RETURN n.name")
        text = format_results(table, 3)
        assert text.count("'n.name'") == 3
        assert f"(+{len(table.rows) - 3} more rows)" in text

    def test_ten_rows_max_three(self):
        b = GraphBuilder()
        for i in range(10):
            b.add_node(NodeCategory.Formula, f"F{i}")
        table = run(b.build(), "MATCH (n:Formula) RETURN n.name")
        assert "(+7 more rows)" in format_results(table, 3)

    def test_absent_rendered_as_empty_text(self):
        g = chain_graph()
        table = run(g, "MATCH (n:Formula) RETURN n.nope")
        assert format_results(table, 5) == "[{'n.nope': ''}]"


class TestAgainstOracle:
    def test_random_queries_agree(self):
        rng = random.Random(20260816)
        for _ in range(300):
            g = random_graph(rng)
            query = random_query(rng, g)
            columns, rows = ref_execute(g, query)
            table = execute(g, query)
            assert table.columns == columns
            assert table.rows == rows

    def test_rows_are_multisets_of_oracle_rows(self):
        # weaker restatement, guards the equality test above against
        # accidental shared ordering assumptions
        rng = random.Random(77)
        for _ in range(100):
            g = random_graph(rng)
            query = random_query(rng, g)
            _, rows = ref_execute(g, query)
            table = execute(g, query)
            assert sorted(map(repr, table.rows)) == sorted(map(repr, rows))
