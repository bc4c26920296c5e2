"""Bundled fixture dataset: a small material corpus, literature QA
pairs, a scripted mock backend covering the demo and eval questions,
and the built-in evaluation cases.  Everything here is deterministic
so the full stack runs offline.
"""

from __future__ import annotations

import json
from dataclasses import replace
from pathlib import Path

from .evaluation import CheckerSpec, TestCase
from .graph import build_graph, save_graph
from .literature import QAPair, build_index, save_index, save_pairs
from .llm import MockBackend, MockRule
from .pipeline import MATERIAL_URL_PREFIX
from .prompts import CYPHER_TASK, SYNTHESIS_TASK
from .records import MaterialRecord, save_materials

TABLE3_QUESTION = (
    "Please recommend three molecules that are topological insulators "
    "under spin-orbit coupling (SOC)."
)
TABLE3_CYPHER = (
    "MATCH(n:Formula)-[r]->(:TopoClass{name:'topological insulator'}) "
    'WHERE n.soc_dos_gap <> "" RETURN n.name , n.matID LIMIT 3'
)

_FALLBACK_CYPHER = "MATCH (n:Formula) RETURN n.name, n.matID LIMIT 5"
_FALLBACK_ANSWER = (
    "Here is what the knowledge graph returned for your question. "
    "See the cited references for full details."
)


def fixture_records() -> list[MaterialRecord]:
    """The bundled corpus.  The first three records are the canonical
    SOC topological insulators the demo flow returns, in this order."""
    return [
        MaterialRecord(
            formula="Bi3(TeCl5)2", matID="MAT00000859",
            elements=["Bi", "Te", "Cl"], crystal_system="monoclinic",
            spacegroup_symbol="C2/m", spacegroup_number=12, pointgroup="C2h",
            topo_class_soc="topological insulator",
            topo_class_nsoc="high-symmetry point semimetal",
            soc_dos_gap=0.103,
        ),
        MaterialRecord(
            formula="BaSn2", matID="MAT00028452",
            elements=["Ba", "Sn"], crystal_system="trigonal",
            spacegroup_symbol="P-3m1", spacegroup_number=164, pointgroup="D3d",
            topo_class_soc="topological insulator",
            topo_class_nsoc="trivial insulator",
            soc_dos_gap=0.201, nsoc_dos_gap=0.36,
        ),
        MaterialRecord(
            formula="Bi", matID="MAT00028196",
            elements=["Bi"], crystal_system="trigonal",
            spacegroup_symbol="R-3m", spacegroup_number=166, pointgroup="D3d",
            topo_class_soc="topological insulator",
            topo_class_nsoc="high-symmetry point semimetal",
            soc_dos_gap=0.014, density=9.78, fermi_energy=4.69,
        ),
        MaterialRecord(
            formula="Bi2Se3", matID="MAT00011001",
            elements=["Bi", "Se"], crystal_system="trigonal",
            spacegroup_symbol="R-3m", spacegroup_number=166, pointgroup="D3d",
            topo_class_soc="topological insulator",
            soc_dos_gap=0.3, density=6.82,
            cell_a=4.143, cell_c=28.636, cell_alpha=90.0, cell_gamma=120.0,
        ),
        MaterialRecord(
            formula="Bi2Te3", matID="MAT00011002",
            elements=["Bi", "Te"], crystal_system="trigonal",
            spacegroup_symbol="R-3m", spacegroup_number=166, pointgroup="D3d",
            topo_class_soc="topological insulator",
            soc_dos_gap=0.15,
        ),
        MaterialRecord(
            formula="Sb2Te3", matID="MAT00011003",
            elements=["Sb", "Te"], crystal_system="trigonal",
            spacegroup_symbol="R-3m", spacegroup_number=166, pointgroup="D3d",
            topo_class_soc="topological insulator",
            soc_dos_gap=0.15,
        ),
        MaterialRecord(
            formula="Cd3As2", matID="MAT00011004",
            elements=["Cd", "As"], crystal_system="cubic",
            spacegroup_symbol="Pn-3m", spacegroup_number=224, pointgroup="Oh",
            topo_class_soc="high-symmetry point semimetal",
            topo_class_nsoc="high-symmetry line semimetal",
        ),
        MaterialRecord(
            formula="CsPbI3", matID="MAT00011005",
            elements=["Cs", "Pb", "I"], crystal_system="cubic",
            spacegroup_symbol="Pm-3m", spacegroup_number=221, pointgroup="Oh",
            topo_class_soc="trivial insulator",
            topo_class_nsoc="topological insulator",
            nsoc_dos_gap=1.748, indirect_gap=1.4,
        ),
        MaterialRecord(
            formula="NdH3", matID="MAT00028457",
            elements=["Nd", "H"], crystal_system="hexagonal",
            spacegroup_symbol="P63/mmc", spacegroup_number=194, pointgroup="D6h",
            topo_class_soc="topological insulator",
            soc_dos_gap=0.16968,
        ),
        MaterialRecord(
            formula="KIO3", matID="MAT00025350",
            elements=["K", "I", "O"], crystal_system="trigonal",
            spacegroup_symbol="R3m", spacegroup_number=160, pointgroup="C3v",
            topo_class_soc="topological insulator",
            soc_dos_gap=0.285019,
        ),
        MaterialRecord(
            formula="CsGeBr3", matID="MAT00025343",
            elements=["Cs", "Ge", "Br"], crystal_system="cubic",
            spacegroup_symbol="Pm-3m", spacegroup_number=221, pointgroup="Oh",
            topo_class_soc="topological insulator",
            soc_dos_gap=0.207416979,
        ),
        MaterialRecord(
            formula="Ca(InP)2", matID="MAT00023640",
            elements=["Ca", "In", "P"], crystal_system="tetragonal",
            spacegroup_symbol="P4/nmm", spacegroup_number=129, pointgroup="D4h",
            topo_class_soc="topological insulator",
            topo_class_nsoc="topological insulator",
            soc_dos_gap=0.169942, nsoc_dos_gap=0.9,
        ),
        MaterialRecord(
            formula="Bi2Te2Se", matID="MAT00020545",
            elements=["Bi", "Te", "Se"], crystal_system="trigonal",
            spacegroup_symbol="R-3m", spacegroup_number=166, pointgroup="D3d",
            topo_class_soc="topological insulator",
            soc_dos_gap=0.285533,
        ),
        MaterialRecord(
            formula="TaAs", matID="MAT00011006",
            elements=["Ta", "As"], crystal_system="tetragonal",
            spacegroup_symbol="I41md", spacegroup_number=109, pointgroup="C4v",
            topo_class_soc="generic-momenta semimetal",
            density=11.84, proto="NbAs", weyl_pts="24",
        ),
        MaterialRecord(
            formula="Na3Bi", matID="MAT00011007",
            elements=["Na", "Bi"], crystal_system="hexagonal",
            spacegroup_symbol="P63/mmc", spacegroup_number=194, pointgroup="D6h",
            topo_class_soc="high-symmetry point semimetal",
            lines="2",
        ),
        MaterialRecord(
            formula="ZrTe5", matID="MAT00011008",
            elements=["Zr", "Te"], crystal_system="orthorhombic",
            spacegroup_symbol="Cmcm", spacegroup_number=63, pointgroup="D2h",
            topo_class_soc="topological insulator",
            soc_dos_gap=0.1, fermi_energy=5.42,
        ),
        MaterialRecord(
            formula="SnTe", matID="MAT00011009",
            elements=["Sn", "Te"], crystal_system="cubic",
            spacegroup_symbol="Fm-3m", spacegroup_number=225, pointgroup="Oh",
            topo_class_soc="topological crystalline insulator",
            cell_a=6.32,
        ),
        MaterialRecord(
            formula="C", matID="MAT00011010",
            elements=["C"], crystal_system="cubic",
            spacegroup_symbol="Fd-3m", spacegroup_number=227, pointgroup="Oh",
            topo_class_soc="high-symmetry line semimetal",
            proto="diamond", lines="4", ring_pts="0",
        ),
        MaterialRecord(
            formula="HgTe", matID="MAT00011011",
            elements=["Hg", "Te"], crystal_system="cubic",
            spacegroup_symbol="F-43m", spacegroup_number=216, pointgroup="Td",
            topo_class_soc="topological insulator",
            soc_dos_gap=0.0,
        ),
    ]


def table3_records() -> list[MaterialRecord]:
    """The three canonical demo rows reduced to their SOC classification.

    Useful as a minimal graph: 3 Formula nodes, one shared class node,
    exactly one class edge per material.
    """
    return [
        replace(rec, topo_class_nsoc=None, nsoc_dos_gap=None)
        for rec in fixture_records()[:3]
    ]


def fixture_pairs() -> list[QAPair]:
    """Literature QA corpus.  The first three entries carry the demo
    dois and are phrased so they rank closest to the demo question."""
    entries = [
        (
            "Which molecules are three-dimensional topological insulators "
            "under spin-orbit coupling?",
            "Three-dimensional topological insulators pair a bulk band gap "
            "with conducting surface states protected by time-reversal "
            "symmetry. The earliest confirmed examples are bismuth-based "
            "crystals such as Bi2Te3 and Bi2Se3.",
            "Induced spin texture in semiconductor/topological insulator "
            "heterostructures",
            "1103.1580v2",
        ),
        (
            "How can the surface Dirac fermions of topological insulators "
            "be tuned under spin-orbit coupling?",
            "The spin-orbit induced bulk gap of a three-dimensional "
            "topological insulator such as Bi2Te3 hosts surface states "
            "whose carrier density can be tuned systematically while time-"
            "reversal symmetry keeps them protected against scattering.",
            "Systematic control of topological insulator Dirac fermion "
            "density on the surface of Bi2Te3",
            "0907.3089v1",
        ),
        (
            "Can you recommend molecules that are three-dimensional "
            "topological insulators with a single Dirac cone?",
            "Bi2Se3, Bi2Te3, and Sb2Te3 are predicted to be three-"
            "dimensional topological insulators whose surface states reduce "
            "to a single Dirac cone, the simplest possible arrangement.",
            "Aharonov-Bohm interference in topological insulator nanoribbons",
            "0908.3314v1",
        ),
        (
            "What distinguishes a Weyl semimetal from a Dirac semimetal?",
            "A Weyl semimetal hosts pairs of non-degenerate band crossings "
            "with opposite chirality, while a Dirac semimetal keeps the "
            "crossings doubly degenerate; TaAs was the first crystal where "
            "Weyl nodes and Fermi arcs were observed.",
            "Fermi arc surface transport in Weyl semimetal crystals",
            "1408.0021v1",
        ),
        (
            "Why does Cd3As2 conduct so well at room temperature?",
            "Cd3As2 is a stable Dirac semimetal whose linearly dispersing "
            "bulk bands give carriers very high mobility, which survives at "
            "room temperature.",
            "Ultrahigh mobility in the Dirac semimetal Cd3As2",
            "1404.7794v2",
        ),
        (
            "What happens to SnTe at the crystal surface?",
            "SnTe realizes the crystalline variant of band inversion: mirror "
            "symmetry of the rocksalt lattice protects an even number of "
            "surface Dirac cones, unlike the single cone of Bi2Se3.",
            "Mirror-protected surface states in tin telluride",
            "1202.1003v1",
        ),
        (
            "How are phonon band crossings classified in real materials?",
            "High-throughput screening over ten thousand crystals tags each "
            "phonon spectrum with prototype labels, nodal line counts, ring "
            "points, and Weyl points, giving a catalogue of topological "
            "phonon candidates.",
            "A catalogue of topological phonon band crossings",
            "2006.1101v1",
        ),
        (
            "Does pressure change the band order of ZrTe5?",
            "Transport under hydrostatic pressure drives ZrTe5 from a weak "
            "to a strong band-inverted phase, with the resistivity anomaly "
            "tracking the gap closing.",
            "Pressure-driven band inversion in zirconium pentatelluride",
            "1607.0442v1",
        ),
        (
            "What makes diamond's phonon spectrum special?",
            "The diamond lattice of carbon enforces degenerate phonon "
            "crossings along high-symmetry lines, making it a textbook "
            "nodal-line phonon crystal.",
            "Nodal-line phonons in the diamond lattice",
            "1911.0523v1",
        ),
        (
            "How is the fermi energy of a semimetal measured?",
            "Quantum oscillation frequencies fix the Fermi surface cross "
            "sections, and together with cyclotron masses they locate the "
            "fermi energy without photoemission.",
            "Quantum oscillations as a fermi surface probe",
            "1501.0663v1",
        ),
        (
            "Why are halide perovskites like CsPbI3 good absorbers?",
            "Strong direct transitions near the gap and defect tolerance "
            "make CsPbI3 and related halide perovskites efficient "
            "photovoltaic absorbers.",
            "Defect tolerance in caesium lead halide perovskites",
            "1706.0881v1",
        ),
        (
            "How does one grow large single crystals of Na3Bi?",
            "Na3Bi crystals are grown from a sodium-rich flux in sealed "
            "niobium tubes; slow cooling yields millimetre hexagonal plates "
            "suitable for transport studies.",
            "Flux growth of alkali pnictide crystals",
            "1305.0774v1",
        ),
        (
            "What does ARPES reveal about band structure?",
            "Angle-resolved photoemission maps occupied bands directly in "
            "momentum space, resolving both bulk dispersions and surface "
            "state spin textures.",
            "A practical guide to angle-resolved photoemission",
            "0810.0337v1",
        ),
        (
            "Which crystal growth method suits layered chalcogenides?",
            "Chemical vapour transport with iodine moves layered "
            "chalcogenides down a temperature gradient and yields shiny "
            "cleavable platelets.",
            "Vapour transport growth of layered chalcogenides",
            "1209.0441v1",
        ),
        (
            "What limits thermoelectric efficiency in bismuth tellurides?",
            "The figure of merit of Bi2Te3-class thermoelectrics is capped "
            "by the coupled rise of electrical and thermal conductivity; "
            "nanostructuring scatters phonons to break the trade-off.",
            "Phonon engineering in bismuth telluride thermoelectrics",
            "0904.1166v1",
        ),
    ]
    return [
        QAPair(id=i, question=q, answer=a, title=t, doi=d)
        for i, (q, a, t, d) in enumerate(entries)
    ]


_TABLE3_ANSWER = (
    "Based on the retrieved literature and the MaterialsKG rows, here are "
    "three molecules that are topological insulators under spin-orbit "
    "coupling (SOC):\n\n"
    "1. Bi2Se3 (DOI: 0908.3314v1) - a three-dimensional topological "
    "insulator whose surface states form a single Dirac cone.\n"
    "2. Bi2Te3 (DOI: 1103.1580v2) - a bismuth-based topological insulator "
    "with surface states protected by time-reversal symmetry.\n"
    "3. Sb2Te3 (DOI: 0908.3314v1) - proposed as a three-dimensional "
    "topological insulator with a simple surface-state structure.\n\n"
    "References for the molecules found in MaterialsKG:\n"
    "1. Bi3(TeCl5)2 - http://materiae.iphy.ac.cn/materials/MAT00000859\n"
    "2. BaSn2 - http://materiae.iphy.ac.cn/materials/MAT00028452\n"
    "3. Bi - http://materiae.iphy.ac.cn/materials/MAT00028196"
)


def _golden_entries() -> list[dict]:
    """One entry per scripted question: the Cypher the mock emits in
    the query-writing call, the synthesized answer, and (for eval
    entries) the case metadata."""
    url = MATERIAL_URL_PREFIX
    return [
        # entity selection
        {
            "id": "entity-01", "category": "entity_selection",
            "question": "Which materials contain the element Bi?",
            "cypher": "MATCH (n:Formula)-[:HAS_ELEMENT]->(:Element {name: 'Bi'}) RETURN n.name",
            "answer": (
                "The knowledge graph lists these bismuth-bearing materials: "
                "Bi3(TeCl5)2, Bi, Bi2Se3, Bi2Te3, Bi2Te2Se, and Na3Bi."
            ),
            "check": CheckerSpec(kind="answer_contains_all", texts=("Bi2Se3", "Bi2Te3")),
        },
        {
            "id": "entity-02", "category": "entity_selection",
            "question": "What is the matID of BaSn2?",
            "cypher": "MATCH (n:Formula {name: 'BaSn2'}) RETURN n.name, n.matID",
            "answer": (
                "BaSn2 is registered as MAT00028452; see "
                "http://materiae.iphy.ac.cn/materials/MAT00028452 for the full entry."
            ),
            "check": CheckerSpec(kind="cypher_result_contains", column="n.matID",
                                 value="MAT00028452"),
        },
        {
            "id": "entity-03", "category": "entity_selection",
            "question": "List three materials in the trigonal crystal system.",
            "cypher": ("MATCH (n:Formula)-[:HAS_LATTICE]->(:Lattice {name: 'trigonal'}) "
                       "RETURN n.name LIMIT 3"),
            "answer": "Three trigonal materials are BaSn2, Bi, and Bi2Se3.",
            "check": CheckerSpec(kind="answer_contains_all", texts=("BaSn2", "Bi2Se3")),
        },
        {
            "id": "entity-04", "category": "entity_selection",
            "question": "Which material has the chemical formula SnTe?",
            "cypher": "MATCH (n:Formula {name: 'SnTe'}) RETURN n.name, n.matID",
            "answer": (
                "SnTe is the rocksalt tin telluride, catalogued as MAT00011009 "
                "(http://materiae.iphy.ac.cn/materials/MAT00011009)."
            ),
            "check": CheckerSpec(kind="citation_url_present", url=url + "MAT00011009"),
        },
        {
            "id": "entity-05", "category": "entity_selection",
            "question": TABLE3_QUESTION,
            "cypher": TABLE3_CYPHER,
            "answer": _TABLE3_ANSWER,
            "check": CheckerSpec(kind="citation_url_present", url=url + "MAT00028452"),
        },
        # relationship selection
        {
            "id": "relationship-01", "category": "relationship_selection",
            "question": "What topological classes does Cd3As2 belongs to?",
            "cypher": ("MATCH (n:Formula {name: 'Cd3As2'})-[r:BELONGS_TO_TOPOCLASS]->"
                       "(c:TopoClass) RETURN c.name, r.rel_value"),
            "answer": (
                "Cd3As2 belongs to the high-symmetry point semimetal class under "
                "SOC and to the high-symmetry line semimetal class under NSOC."
            ),
            "check": CheckerSpec(
                kind="answer_contains_all",
                texts=("high-symmetry line semimetal", "high-symmetry point semimetal"),
            ),
        },
        {
            "id": "relationship-02", "category": "relationship_selection",
            "question": "Which space group does Bi belong to?",
            "cypher": ("MATCH (n:Formula {name: 'Bi'})-[:BELONGS_TO_SPACEGROUP]->"
                       "(s:Spacegroup) RETURN s.name"),
            "answer": "Elemental bismuth crystallizes in space group R-3m.",
            "check": CheckerSpec(kind="cypher_result_contains", column="s.name", value="R-3m"),
        },
        {
            "id": "relationship-03", "category": "relationship_selection",
            "question": "Which point group does TaAs belong to?",
            "cypher": ("MATCH (n:Formula {name: 'TaAs'})-[:BELONGS_TO_POINTGROUP]->"
                       "(p:Pointgroup) RETURN p.name"),
            "answer": "TaAs has the polar point group C4v.",
            "check": CheckerSpec(kind="cypher_result_contains", column="p.name", value="C4v"),
        },
        {
            "id": "relationship-04", "category": "relationship_selection",
            "question": "Which elements make up Bi2Te2Se?",
            "cypher": ("MATCH (n:Formula {name: 'Bi2Te2Se'})-[:HAS_ELEMENT]->(e:Element) "
                       "RETURN e.name"),
            "answer": "Bi2Te2Se is composed of bismuth (Bi), tellurium (Te), and selenium (Se).",
            "check": CheckerSpec(kind="answer_contains_all", texts=("Bi", "Te", "Se")),
        },
        {
            "id": "relationship-05", "category": "relationship_selection",
            "question": "Which materials belong to the topological crystalline insulator class under SOC?",
            "cypher": ("MATCH (n:Formula)-[r:BELONGS_TO_TOPOCLASS {rel_value: 'SOC'}]->"
                       "(:TopoClass {name: 'topological crystalline insulator'}) "
                       "RETURN n.name, n.matID"),
            "answer": "Under SOC the only topological crystalline insulator in the graph is SnTe.",
            "check": CheckerSpec(kind="answer_contains_any", texts=("SnTe",)),
        },
        {
            "id": "relationship-06", "category": "relationship_selection",
            "question": "Which lattice does CsPbI3 crystallize in?",
            "cypher": ("MATCH (n:Formula {name: 'CsPbI3'})-[:HAS_LATTICE]->(l:Lattice) "
                       "RETURN l.name"),
            "answer": "CsPbI3 adopts the cubic lattice in its perovskite phase.",
            "check": CheckerSpec(kind="cypher_result_contains", column="l.name", value="cubic"),
        },
        {
            "id": "relationship-07", "category": "relationship_selection",
            "question": "Do Bi2Se3 and Bi2Te3 share the same space group?",
            "cypher": ("MATCH (a:Formula {name: 'Bi2Se3'})-[:BELONGS_TO_SPACEGROUP]->"
                       "(s:Spacegroup)<-[:BELONGS_TO_SPACEGROUP]-(b:Formula {name: 'Bi2Te3'}) "
                       "RETURN s.name"),
            "answer": "Yes. Both Bi2Se3 and Bi2Te3 crystallize in space group R-3m.",
            "check": CheckerSpec(kind="answer_contains_any", texts=("yes", "R-3m")),
        },
        {
            "id": "relationship-08", "category": "relationship_selection",
            "question": "Which materials belong to space group P63/mmc?",
            "cypher": ("MATCH (s:Spacegroup {name: 'P63/mmc'})<-[:BELONGS_TO_SPACEGROUP]-"
                       "(n:Formula) RETURN n.name"),
            "answer": "Space group P63/mmc contains NdH3 and Na3Bi.",
            "check": CheckerSpec(kind="answer_contains_all", texts=("NdH3", "Na3Bi")),
        },
        {
            "id": "relationship-09", "category": "relationship_selection",
            "question": "How many materials contain the element Te?",
            "cypher": ("MATCH (n:Formula)-[:HAS_ELEMENT]->(:Element {name: 'Te'}) "
                       "RETURN count(*)"),
            "answer": (
                "Seven materials contain tellurium: Bi3(TeCl5)2, Bi2Te3, Sb2Te3, "
                "Bi2Te2Se, ZrTe5, SnTe, and HgTe."
            ),
            "check": CheckerSpec(kind="cypher_result_contains", column="count(*)", value=7),
        },
        # property selection
        {
            "id": "property-01", "category": "property_selection",
            "question": "What is the maximum dos gap of topological insulators when non spin-orbit coupling(NSOC)?",
            "cypher": ("MATCH (n:Formula)-[r:BELONGS_TO_TOPOCLASS {rel_value: 'NSOC'}]->"
                       "(:TopoClass {name: 'topological insulator'}) "
                       "WHERE n.nsoc_dos_gap IS NOT NULL "
                       "RETURN n.name, n.nsoc_dos_gap ORDER BY n.nsoc_dos_gap DESC LIMIT 1"),
            "answer": (
                "The largest NSOC dos gap among topological insulators in the graph "
                "is 1.748 eV, found for CsPbI3."
            ),
            "check": CheckerSpec(kind="answer_contains_all", texts=("1.748", "CsPbI3")),
        },
        {
            "id": "property-02", "category": "property_selection",
            "question": "Can you recommend some topological insulators with energy gap greater than 0.1eV?",
            "cypher": ("MATCH (n:Formula)-[r:BELONGS_TO_TOPOCLASS {rel_value: 'SOC'}]->"
                       "(:TopoClass {name: 'topological insulator'}) "
                       "WHERE n.soc_dos_gap > 0.1 "
                       "RETURN n.name, n.matID, n.soc_dos_gap"),
            "answer": (
                "Recommended topological insulators with a gap above 0.1 eV:\n"
                "1. NdH3 (0.16968 eV) - http://materiae.iphy.ac.cn/materials/MAT00028457\n"
                "2. KIO3 (0.285019 eV) - http://materiae.iphy.ac.cn/materials/MAT00025350\n"
                "3. CsGeBr3 (0.207416979 eV) - http://materiae.iphy.ac.cn/materials/MAT00025343\n"
                "4. Ca(InP)2 (0.169942 eV) - http://materiae.iphy.ac.cn/materials/MAT00023640\n"
                "5. Bi2Te2Se (0.285533 eV) - http://materiae.iphy.ac.cn/materials/MAT00020545"
            ),
            "check": CheckerSpec(kind="citation_url_present", url=url + "MAT00028457"),
        },
        {
            "id": "property-03", "category": "property_selection",
            "question": "What is the soc dos gap of BaSn2?",
            "cypher": "MATCH (n:Formula {name: 'BaSn2'}) RETURN n.name, n.soc_dos_gap",
            "answer": "BaSn2 has an SOC dos gap of 0.201 eV.",
            "check": CheckerSpec(kind="cypher_result_contains", column="n.soc_dos_gap",
                                 value=0.201),
        },
        {
            "id": "property-04", "category": "property_selection",
            "question": "What is the density of Bi?",
            "cypher": "MATCH (n:Formula {name: 'Bi'}) RETURN n.name, n.density",
            "answer": "Elemental bismuth has a density of 9.78 g/cm3.",
            "check": CheckerSpec(kind="answer_contains_any", texts=("9.78",)),
        },
        {
            "id": "property-05", "category": "property_selection",
            "question": "How many Weyl points does TaAs have?",
            "cypher": "MATCH (n:Formula {name: 'TaAs'}) RETURN n.name, n.weyl_pts",
            "answer": "The phonon data for TaAs records 24 Weyl points.",
            "check": CheckerSpec(kind="cypher_result_contains", column="n.weyl_pts",
                                 value="24"),
        },
        {
            "id": "property-06", "category": "property_selection",
            "question": "Which material has a larger soc dos gap, Bi2Se3 or Bi2Te3?",
            "cypher": ("MATCH (n:Formula) WHERE n.soc_dos_gap IS NOT NULL "
                       "RETURN n.name, n.soc_dos_gap ORDER BY n.soc_dos_gap DESC LIMIT 1"),
            "answer": "Bi2Se3 wins with an SOC dos gap of 0.3 eV against 0.15 eV.",
            "check": CheckerSpec(kind="answer_contains_any", texts=("Bi2Se3",)),
        },
        {
            "id": "property-07", "category": "property_selection",
            "question": "What is the fermi energy of ZrTe5?",
            "cypher": "MATCH (n:Formula {name: 'ZrTe5'}) RETURN n.name, n.fermi_energy",
            "answer": "ZrTe5 has a fermi energy of 5.42 eV in the graph.",
            "check": CheckerSpec(kind="cypher_result_contains", column="n.fermi_energy",
                                 value=5.42),
        },
        {
            "id": "property-08", "category": "property_selection",
            "question": "Which trigonal materials have soc dos gap greater than 0.2?",
            "cypher": ("MATCH (n:Formula)-[:HAS_LATTICE]->(:Lattice {name: 'trigonal'}) "
                       "WHERE n.soc_dos_gap > 0.2 RETURN n.name, n.soc_dos_gap"),
            "answer": (
                "Trigonal materials with an SOC dos gap above 0.2 eV: BaSn2, "
                "Bi2Se3, KIO3, and Bi2Te2Se."
            ),
            "check": CheckerSpec(kind="answer_contains_all", texts=("BaSn2", "Bi2Se3")),
        },
        {
            "id": "property-09", "category": "property_selection",
            "question": "What is the proto attribute of the phonon data for C?",
            "cypher": "MATCH (n:Formula {name: 'C'}) RETURN n.name, n.proto",
            "answer": "Carbon's phonon entry carries the prototype label 'diamond'.",
            "check": CheckerSpec(kind="cypher_result_contains", column="n.proto",
                                 value="diamond"),
        },
    ]


def golden_backend() -> MockBackend:
    """Scripted backend answering every bundled question, with generic
    fallbacks for anything else."""
    rules = []
    for entry in _golden_entries():
        rules.append(MockRule(response=entry["cypher"],
                              contains=(CYPHER_TASK, entry["question"])))
        rules.append(MockRule(response=entry["answer"],
                              contains=(SYNTHESIS_TASK, entry["question"])))
    rules.append(MockRule(response=_FALLBACK_CYPHER, contains=CYPHER_TASK))
    rules.append(MockRule(response=_FALLBACK_ANSWER, contains=None))
    return MockBackend(rules)


class EchoBackend:
    """Returns the last user message; handy for probing prompt text."""

    def __init__(self):
        self.calls: list = []

    def complete(self, messages, temperature: float = 0.0) -> str:
        self.calls.append(list(messages))
        for message in reversed(messages):
            if message.role == "user":
                return message.content
        return messages[-1].content


def fixture_cases() -> list[TestCase]:
    return [
        TestCase(id=e["id"], category=e["category"], question=e["question"],
                 check=e["check"])
        for e in _golden_entries()
    ]


def recommended_questions() -> list[str]:
    return [
        TABLE3_QUESTION,
        "What topological classes does Cd3As2 belongs to?",
        "What is the maximum dos gap of topological insulators when non spin-orbit coupling(NSOC)?",
        "Can you recommend some topological insulators with energy gap greater than 0.1eV?",
        "Which materials contain the element Bi?",
        "Which space group does Bi belong to?",
    ]


def write_demo_data(out_dir: str | Path) -> dict:
    """Write the full fixture set to a directory and return the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    records = fixture_records()
    pairs = fixture_pairs()
    paths = {
        "materials": out / "materials.jsonl",
        "graph": out / "graph.json",
        "pairs": out / "qa_pairs.json",
        "index": out / "index.json",
        "cases": out / "cases.json",
        "config": out / "config.json",
    }
    save_materials(records, paths["materials"])
    save_graph(build_graph(records), paths["graph"])
    save_pairs(pairs, paths["pairs"])
    save_index(build_index(pairs), paths["index"])
    from .evaluation import save_cases

    save_cases(fixture_cases(), paths["cases"])
    config = {
        "backends": {
            "golden": {"kind": "mock", "script": "golden"},
            "echo": {"kind": "mock", "script": "echo"},
        }
    }
    paths["config"].write_text(json.dumps(config, indent=1) + "\n", encoding="utf-8")
    return {name: str(path) for name, path in paths.items()}
