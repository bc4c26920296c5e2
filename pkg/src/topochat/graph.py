"""MaterialsKG property graph: six node categories, five relation types.

Nodes carry a flat attribute map (always including ``name`` and ``cate``).
Formula nodes link out to Element, Lattice, Spacegroup, Pointgroup, and
TopoClass nodes; BELONGS_TO_TOPOCLASS edges carry a SOC or NSOC relation
value. The graph is immutable once built and safe for concurrent readers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .records import MaterialRecord

AttrValue = str | int | float | None


class NodeCategory(str, Enum):
    Formula = "Formula"
    Element = "Element"
    Lattice = "Lattice"
    Spacegroup = "Spacegroup"
    Pointgroup = "Pointgroup"
    TopoClass = "TopoClass"


class EdgeType(str, Enum):
    HAS_ELEMENT = "HAS_ELEMENT"
    HAS_LATTICE = "HAS_LATTICE"
    BELONGS_TO_SPACEGROUP = "BELONGS_TO_SPACEGROUP"
    BELONGS_TO_POINTGROUP = "BELONGS_TO_POINTGROUP"
    BELONGS_TO_TOPOCLASS = "BELONGS_TO_TOPOCLASS"


EDGE_TARGET_CATEGORY = {
    EdgeType.HAS_ELEMENT: NodeCategory.Element,
    EdgeType.HAS_LATTICE: NodeCategory.Lattice,
    EdgeType.BELONGS_TO_SPACEGROUP: NodeCategory.Spacegroup,
    EdgeType.BELONGS_TO_POINTGROUP: NodeCategory.Pointgroup,
    EdgeType.BELONGS_TO_TOPOCLASS: NodeCategory.TopoClass,
}

_ETYPE_ORDER = {etype: i for i, etype in enumerate(EdgeType)}


class GraphError(Exception):
    pass


class DuplicateFormulaError(GraphError):
    def __init__(self, name: str, mat_id: str):
        self.name = name
        self.mat_id = mat_id
        super().__init__(f"duplicate formula record: {name} ({mat_id})")


class UnknownNodeError(GraphError):
    pass


@dataclass(frozen=True)
class GraphNode:
    id: int
    cate: NodeCategory
    name: str
    attrs: dict[str, AttrValue]


@dataclass(frozen=True)
class GraphEdge:
    id: int
    src: int
    dst: int
    etype: EdgeType
    rel_value: str | None = None


class PropertyGraph:
    """Immutable property graph with (cate, name) and adjacency indexes."""

    def __init__(self, nodes: dict[int, GraphNode], edges: list[GraphEdge]):
        self._nodes = nodes
        self._edges = edges
        self._by_name: dict[tuple[NodeCategory, str], int] = {}
        self._by_cate: dict[NodeCategory, list[int]] = {c: [] for c in NodeCategory}
        self._out: dict[int, list[GraphEdge]] = {i: [] for i in nodes}
        self._in: dict[int, list[GraphEdge]] = {i: [] for i in nodes}
        for node in nodes.values():
            self._by_name[(node.cate, node.name)] = node.id
            self._by_cate[node.cate].append(node.id)
        for edge in edges:
            self._out[edge.src].append(edge)
            self._in[edge.dst].append(edge)

    @property
    def nodes(self) -> dict[int, GraphNode]:
        return self._nodes

    @property
    def edges(self) -> list[GraphEdge]:
        return self._edges

    def node(self, node_id: int) -> GraphNode:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise UnknownNodeError(f"no node with id {node_id}") from None

    def nodes_in_category(self, cate: NodeCategory) -> list[GraphNode]:
        return [self._nodes[i] for i in self._by_cate[cate]]

    def out_edges(self, node_id: int) -> list[GraphEdge]:
        return self._out[node_id]

    def in_edges(self, node_id: int) -> list[GraphEdge]:
        return self._in[node_id]


class GraphBuilder:
    """Accumulates nodes and edges, enforcing graph invariants, then
    freezes into a PropertyGraph."""

    def __init__(self):
        self._nodes: dict[int, GraphNode] = {}
        self._edges: list[GraphEdge] = []
        self._by_name: dict[tuple[NodeCategory, str], int] = {}

    def node_id(self, cate: NodeCategory, name: str) -> int | None:
        return self._by_name.get((cate, name))

    def add_node(self, cate: NodeCategory, name: str,
                 attrs: dict[str, AttrValue] | None = None) -> int:
        if not name.strip():
            raise GraphError("node name must be non-empty")
        if (cate, name) in self._by_name:
            raise GraphError(f"duplicate node ({cate.value}, {name})")
        node_id = len(self._nodes)
        full_attrs: dict[str, AttrValue] = {"name": name, "cate": cate.value}
        if attrs:
            for key, value in attrs.items():
                if value is not None:
                    full_attrs[key] = value
        self._nodes[node_id] = GraphNode(node_id, cate, name, full_attrs)
        self._by_name[(cate, name)] = node_id
        return node_id

    def ensure_node(self, cate: NodeCategory, name: str) -> int:
        existing = self._by_name.get((cate, name))
        if existing is not None:
            return existing
        return self.add_node(cate, name)

    def add_edge(self, src: int, dst: int, etype: EdgeType,
                 rel_value: str | None = None) -> int:
        if src not in self._nodes or dst not in self._nodes:
            raise GraphError("edge endpoint does not exist")
        if etype is EdgeType.BELONGS_TO_TOPOCLASS:
            if rel_value not in ("SOC", "NSOC"):
                raise GraphError("BELONGS_TO_TOPOCLASS requires rel_value SOC or NSOC")
        elif rel_value is not None:
            raise GraphError(f"{etype.value} edges carry no rel_value")
        if self._nodes[dst].cate is not EDGE_TARGET_CATEGORY[etype]:
            raise GraphError(f"{etype.value} must point at "
                             f"{EDGE_TARGET_CATEGORY[etype].value} nodes")
        edge_id = len(self._edges)
        self._edges.append(GraphEdge(edge_id, src, dst, etype, rel_value))
        return edge_id

    def build(self) -> PropertyGraph:
        return PropertyGraph(self._nodes, self._edges)


_FORMULA_ATTR_FIELDS = (
    "matID", "soc_dos_gap", "nsoc_dos_gap", "indirect_gap", "fermi_energy",
    "density", "cell_a", "cell_b", "cell_c", "cell_alpha", "cell_beta",
    "cell_gamma", "proto", "lines", "ring_pts", "weyl_pts",
)


def build_graph(records: list[MaterialRecord]) -> PropertyGraph:
    """Build the MaterialsKG graph from validated records.

    One Formula node per (formula, matID) pair; category nodes are
    deduplicated by name. A formula name that is already taken by a record
    with a different matID is disambiguated as "formula (matID)".
    """
    builder = GraphBuilder()
    seen: set[tuple[str, str]] = set()
    for r in records:
        key = (r.formula, r.matID)
        if key in seen:
            raise DuplicateFormulaError(r.formula, r.matID)
        seen.add(key)

        name = r.formula
        if builder.node_id(NodeCategory.Formula, name) is not None:
            name = f"{r.formula} ({r.matID})"
        attrs = {f: getattr(r, f) for f in _FORMULA_ATTR_FIELDS}
        formula_id = builder.add_node(NodeCategory.Formula, name, attrs)

        for symbol in sorted(set(r.elements)):
            target = builder.ensure_node(NodeCategory.Element, symbol)
            builder.add_edge(formula_id, target, EdgeType.HAS_ELEMENT)
        target = builder.ensure_node(NodeCategory.Lattice, r.crystal_system)
        builder.add_edge(formula_id, target, EdgeType.HAS_LATTICE)
        target = builder.ensure_node(NodeCategory.Spacegroup, r.spacegroup_symbol)
        builder.add_edge(formula_id, target, EdgeType.BELONGS_TO_SPACEGROUP)
        target = builder.ensure_node(NodeCategory.Pointgroup, r.pointgroup)
        builder.add_edge(formula_id, target, EdgeType.BELONGS_TO_POINTGROUP)
        if r.topo_class_soc is not None:
            target = builder.ensure_node(NodeCategory.TopoClass, r.topo_class_soc)
            builder.add_edge(formula_id, target, EdgeType.BELONGS_TO_TOPOCLASS, "SOC")
        if r.topo_class_nsoc is not None:
            target = builder.ensure_node(NodeCategory.TopoClass, r.topo_class_nsoc)
            builder.add_edge(formula_id, target, EdgeType.BELONGS_TO_TOPOCLASS, "NSOC")
    return builder.build()


def get_node(g: PropertyGraph, cate: NodeCategory | str, name: str) -> GraphNode | None:
    cate = NodeCategory(cate)
    node_id = g._by_name.get((cate, name))
    return None if node_id is None else g.nodes[node_id]


def neighbors(g: PropertyGraph, node_id: int) -> list[tuple[GraphEdge, GraphNode]]:
    """All incident edges with the opposite endpoint, ordered by edge type,
    then neighbor name."""
    node = g.node(node_id)
    incident = [(edge, g.nodes[edge.dst]) for edge in g.out_edges(node.id)]
    incident += [(edge, g.nodes[edge.src]) for edge in g.in_edges(node.id)]
    incident.sort(key=lambda pair: (_ETYPE_ORDER[pair[0].etype], pair[1].name, pair[0].id))
    return incident


def stats(g: PropertyGraph) -> dict:
    node_counts = {cate.value: 0 for cate in NodeCategory}
    for node in g.nodes.values():
        node_counts[node.cate.value] += 1
    edge_counts = {etype.value: 0 for etype in EdgeType}
    for edge in g.edges:
        edge_counts[edge.etype.value] += 1
    return {"nodes": node_counts, "edges": edge_counts,
            "total_nodes": len(g.nodes), "total_edges": len(g.edges)}


SNAPSHOT_FORMAT = "topochat-graph"
SNAPSHOT_VERSION = 1


def save_graph(g: PropertyGraph, path: str | Path) -> None:
    """Write a versioned JSON snapshot; save/load round-trips byte-identically."""
    doc = {
        "format": SNAPSHOT_FORMAT,
        "version": SNAPSHOT_VERSION,
        "nodes": [
            {"id": n.id, "cate": n.cate.value, "name": n.name,
             "attrs": {k: v for k, v in n.attrs.items() if k not in ("name", "cate")}}
            for n in sorted(g.nodes.values(), key=lambda n: n.id)
        ],
        "edges": [
            {"id": e.id, "src": e.src, "dst": e.dst, "etype": e.etype.value,
             "rel_value": e.rel_value}
            for e in g.edges
        ],
    }
    Path(path).write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n",
                          encoding="utf-8")


def load_graph(path: str | Path) -> PropertyGraph:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as err:
        raise GraphError(f"unreadable graph snapshot {path}: {err}") from err
    if doc.get("format") != SNAPSHOT_FORMAT:
        raise GraphError(f"{path} is not a graph snapshot")
    if doc.get("version") != SNAPSHOT_VERSION:
        raise GraphError(f"unsupported snapshot version {doc.get('version')}")
    nodes: dict[int, GraphNode] = {}
    for obj in doc["nodes"]:
        cate = NodeCategory(obj["cate"])
        attrs: dict[str, AttrValue] = {"name": obj["name"], "cate": cate.value}
        attrs.update(obj["attrs"])
        nodes[obj["id"]] = GraphNode(obj["id"], cate, obj["name"], attrs)
    edges = [GraphEdge(obj["id"], obj["src"], obj["dst"],
                       EdgeType(obj["etype"]), obj["rel_value"])
             for obj in doc["edges"]]
    return PropertyGraph(nodes, edges)
