"""Element-height analysis over the knowledge graph.

For each topological class take its five most frequent space groups;
for each (class, space group) cell take the ten most frequent
elements; an element's height is the number of cells whose top-10
contains it, so heights live in [0, 25].
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .graph import EdgeType, NodeCategory, PropertyGraph, get_node
from .periodic import ATOMIC_NUMBER, POSITION
from .records import TOPO_CLASSES

COUPLINGS = ("SOC", "NSOC")

# Fig. 5 uses the five non-trivial classes
DEFAULT_CLASSES = tuple(c for c in TOPO_CLASSES if c != "trivial insulator")


class UnknownClass(ValueError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"not a topological class: {name!r}")


class UnknownElement(ValueError):
    def __init__(self, symbol: str):
        self.symbol = symbol
        super().__init__(f"not an element symbol: {symbol!r}")


@dataclass(frozen=True)
class ElementHeight:
    element: str
    height: int


@dataclass(frozen=True)
class ClassSpacegroupStat:
    topo_class: str
    spacegroup: str
    material_count: int
    top_elements: tuple[tuple[str, int], ...]


def _check_coupling(coupling: str) -> None:
    if coupling not in COUPLINGS:
        raise ValueError(f"coupling must be one of {COUPLINGS}, got {coupling!r}")


def _class_members(g: PropertyGraph, topo_class: str, coupling: str) -> list[int]:
    """Formula node ids in the class under the given coupling."""
    if topo_class not in TOPO_CLASSES:
        raise UnknownClass(topo_class)
    _check_coupling(coupling)
    node = get_node(g, NodeCategory.TopoClass, topo_class)
    if node is None:
        return []
    return [
        e.src
        for e in g.in_edges(node.id)
        if e.etype is EdgeType.BELONGS_TO_TOPOCLASS and e.rel_value == coupling
    ]


def _member_spacegroup(g: PropertyGraph, formula_id: int) -> str | None:
    for e in g.out_edges(formula_id):
        if e.etype is EdgeType.BELONGS_TO_SPACEGROUP:
            return g.node(e.dst).name
    return None


def spacegroup_frequency(
    g: PropertyGraph, topo_class: str, coupling: str = "SOC"
) -> list[tuple[str, int]]:
    """Space groups of the class members, most frequent first, ties by
    symbol."""
    counts: dict[str, int] = {}
    for fid in _class_members(g, topo_class, coupling):
        sg = _member_spacegroup(g, fid)
        if sg is not None:
            counts[sg] = counts.get(sg, 0) + 1
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))


def top_elements(
    g: PropertyGraph,
    topo_class: str,
    spacegroup: str,
    n: int = 10,
    coupling: str = "SOC",
) -> list[tuple[str, int]]:
    """Element frequencies over the materials in one (class, space
    group) cell; each material counts each of its elements once."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if topo_class not in TOPO_CLASSES or n == 0:
        return []
    _check_coupling(coupling)
    counts: dict[str, int] = {}
    for fid in _class_members(g, topo_class, coupling):
        if _member_spacegroup(g, fid) != spacegroup:
            continue
        for e in g.out_edges(fid):
            if e.etype is EdgeType.HAS_ELEMENT:
                symbol = g.node(e.dst).name
                counts[symbol] = counts.get(symbol, 0) + 1
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:n]


def class_cells(
    g: PropertyGraph,
    classes: tuple[str, ...] | list[str] = DEFAULT_CLASSES,
    coupling: str = "SOC",
) -> list[ClassSpacegroupStat]:
    """The per-class top-5 space group cells with their top-10 elements."""
    cells = []
    for topo_class in classes:
        for sg, count in spacegroup_frequency(g, topo_class, coupling)[:5]:
            cells.append(
                ClassSpacegroupStat(
                    topo_class=topo_class,
                    spacegroup=sg,
                    material_count=count,
                    top_elements=tuple(top_elements(g, topo_class, sg, 10, coupling)),
                )
            )
    return cells


def element_heights(
    g: PropertyGraph,
    classes: tuple[str, ...] | list[str] | None = None,
    coupling: str = "SOC",
) -> list[ElementHeight]:
    """Height per element: in how many of the 25 cells it ranks top-10.
    Zero-height elements are omitted; result ordered by height
    descending then symbol."""
    chosen = DEFAULT_CLASSES if classes is None else tuple(classes)
    if len(chosen) != 5:
        raise ValueError(f"exactly 5 classes required, got {len(chosen)}")
    for topo_class in chosen:
        if topo_class not in TOPO_CLASSES:
            raise UnknownClass(topo_class)
    heights: dict[str, int] = {}
    for cell in class_cells(g, chosen, coupling):
        for symbol, _count in cell.top_elements:
            heights[symbol] = heights.get(symbol, 0) + 1
    ranked = sorted(heights.items(), key=lambda kv: (-kv[1], kv[0]))
    return [ElementHeight(element=s, height=h) for s, h in ranked]


def periodic_table_data(heights: list[ElementHeight]) -> list[dict]:
    """Rows for the 3D periodic-table figure, ordered by atomic number."""
    for eh in heights:
        if eh.element not in POSITION:
            raise UnknownElement(eh.element)
    ordered = sorted(heights, key=lambda eh: ATOMIC_NUMBER[eh.element])
    return [
        {
            "element": eh.element,
            "height": eh.height,
            "period": POSITION[eh.element][0],
            "group": POSITION[eh.element][1],
        }
        for eh in ordered
    ]


def export_periodic_table(heights: list[ElementHeight], path: str | Path) -> None:
    data = periodic_table_data(heights)
    Path(path).write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")


def import_periodic_table(path: str | Path) -> list[ElementHeight]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    # the file is ordered for the figure; restore the heights ordering
    data.sort(key=lambda row: (-row["height"], row["element"]))
    return [ElementHeight(element=row["element"], height=row["height"]) for row in data]
