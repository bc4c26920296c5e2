"""Material record schema, validation, and ingestion from JSON Lines files."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field, fields
from pathlib import Path

from .periodic import is_element

log = logging.getLogger(__name__)

CRYSTAL_SYSTEMS = frozenset({
    "triclinic", "monoclinic", "tetragonal", "cubic",
    "orthorhombic", "hexagonal", "trigonal",
})

TOPO_CLASSES = (
    "topological insulator",
    "topological crystalline insulator",
    "high-symmetry line semimetal",
    "high-symmetry point semimetal",
    "generic-momenta semimetal",
    "trivial insulator",
)

# The 32 crystallographic point groups in Schoenflies notation.
POINT_GROUPS = frozenset({
    "C1", "Ci", "C2", "Cs", "C2h", "D2", "C2v", "D2h",
    "C4", "S4", "C4h", "D4", "C4v", "D2d", "D4h",
    "C3", "S6", "D3", "C3v", "D3d",
    "C6", "C3h", "C6h", "D6", "C6v", "D3h", "D6h",
    "T", "Th", "O", "Td", "Oh",
})

_NUMERIC_FIELDS = (
    "soc_dos_gap", "nsoc_dos_gap", "indirect_gap", "fermi_energy", "density",
    "cell_a", "cell_b", "cell_c", "cell_alpha", "cell_beta", "cell_gamma",
)
_PHONON_FIELDS = ("proto", "lines", "ring_pts", "weyl_pts")


class FileUnreadableError(Exception):
    """The materials file could not be opened or decoded."""


@dataclass
class MaterialRecord:
    formula: str
    matID: str
    elements: list[str]
    crystal_system: str
    spacegroup_symbol: str
    spacegroup_number: int
    pointgroup: str
    topo_class_soc: str | None = None
    topo_class_nsoc: str | None = None
    soc_dos_gap: float | None = None
    nsoc_dos_gap: float | None = None
    indirect_gap: float | None = None
    fermi_energy: float | None = None
    density: float | None = None
    cell_a: float | None = None
    cell_b: float | None = None
    cell_c: float | None = None
    cell_alpha: float | None = None
    cell_beta: float | None = None
    cell_gamma: float | None = None
    proto: str | None = None
    lines: str | None = None
    ring_pts: str | None = None
    weyl_pts: str | None = None


@dataclass
class ValidationResult:
    ok: bool
    violations: list[str] = field(default_factory=list)


@dataclass
class MalformedRecord:
    line: int
    reason: str


def validate_record(r: MaterialRecord) -> ValidationResult:
    """Check every record invariant; violations name the offending field."""
    v: list[str] = []
    if not r.formula or not r.formula.strip():
        v.append("formula: empty")
    if not r.matID or not r.matID.strip():
        v.append("matID: empty")
    if not r.elements:
        v.append("elements: empty")
    else:
        for sym in r.elements:
            if not is_element(sym):
                v.append(f"elements: unknown symbol {sym!r}")
    if r.crystal_system not in CRYSTAL_SYSTEMS:
        v.append(f"crystal_system: {r.crystal_system!r} not one of the seven systems")
    if not r.spacegroup_symbol or not r.spacegroup_symbol.strip():
        v.append("spacegroup_symbol: empty")
    if not isinstance(r.spacegroup_number, int) or not 1 <= r.spacegroup_number <= 230:
        v.append(f"spacegroup_number: {r.spacegroup_number!r} outside [1, 230]")
    if r.pointgroup not in POINT_GROUPS:
        v.append(f"pointgroup: {r.pointgroup!r} not a crystallographic point group")
    for name in ("topo_class_soc", "topo_class_nsoc"):
        value = getattr(r, name)
        if value is not None and value not in TOPO_CLASSES:
            v.append(f"{name}: {value!r} not in the six-class taxonomy")
    for name in _NUMERIC_FIELDS:
        value = getattr(r, name)
        if value is None:
            continue
        if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
            v.append(f"{name}: {value!r} is not a finite number")
    for name in _PHONON_FIELDS:
        value = getattr(r, name)
        if value is not None and not isinstance(value, str):
            v.append(f"{name}: {value!r} is not text")
    return ValidationResult(ok=not v, violations=v)


_FIELD_NAMES = None


def _record_from_obj(obj: dict) -> MaterialRecord:
    global _FIELD_NAMES
    if _FIELD_NAMES is None:
        _FIELD_NAMES = {f.name for f in fields(MaterialRecord)}
    unknown = set(obj) - _FIELD_NAMES
    if unknown:
        raise ValueError(f"unknown fields: {sorted(unknown)}")
    for required in ("formula", "matID", "elements", "crystal_system",
                     "spacegroup_symbol", "spacegroup_number", "pointgroup"):
        if required not in obj:
            raise ValueError(f"missing field: {required}")
    if not isinstance(obj["elements"], list) or not all(isinstance(e, str) for e in obj["elements"]):
        raise ValueError("elements: must be an array of text")
    return MaterialRecord(**obj)


def scan_materials(path: str | Path) -> tuple[list[MaterialRecord], list[MalformedRecord]]:
    """Read a JSON Lines materials file, returning valid records and the
    malformed rows that the cleaning step skipped."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as err:
        raise FileUnreadableError(f"{p}: {err}") from err

    records: list[MaterialRecord] = []
    errors: list[MalformedRecord] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            if not isinstance(obj, dict):
                raise ValueError("line is not an object")
            record = _record_from_obj(obj)
        except (json.JSONDecodeError, TypeError, ValueError) as err:
            errors.append(MalformedRecord(lineno, str(err)))
            continue
        result = validate_record(record)
        if result.ok:
            records.append(record)
        else:
            errors.append(MalformedRecord(lineno, "; ".join(result.violations)))
    return records, errors


def load_materials(path: str | Path) -> list[MaterialRecord]:
    """scan_materials with skipped rows reported through logging."""
    records, errors = scan_materials(path)
    for err in errors:
        log.warning("skipping line %d: %s", err.line, err.reason)
    return records


def record_to_obj(r: MaterialRecord) -> dict:
    """Flat dict form of a record with absent fields omitted, for writing
    ingestion files."""
    obj: dict = {}
    for f in fields(MaterialRecord):
        value = getattr(r, f.name)
        if value is not None:
            obj[f.name] = value
    return obj


def save_materials(records: list[MaterialRecord], path: str | Path) -> None:
    lines = [json.dumps(record_to_obj(r), sort_keys=True) for r in records]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
