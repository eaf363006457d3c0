"""Curated spaces with expected bound intervals.

The catalog lives in ``data/catalog.json``; each entry points at a space file
in the same directory. Expected values carry a provenance tag: ``[RULE]`` for
values produced by the bound rules, ``[ORACLE]`` for values computed by an
internal oracle, ``[LITERATURE]`` for literature values. ``[LITERATURE]`` values are
kept under ``literature`` and never gate a run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .bounds import FactBase, Interval, Quantity, SpaceDescriptor, bounds_for
from .complexes import cohomology_ring_z2, zero_divisor_cup_length
from .errors import InputError
from .formats import load_json, space_from_json

DATA_DIR = Path(__file__).parent / "data"
CATALOG_PATH = DATA_DIR / "catalog.json"
_TAGS = ("[RULE]", "[ORACLE]", "[LITERATURE]")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    descriptor: SpaceDescriptor
    expected: dict[Quantity, Interval]
    provenance: dict[str, str]
    expected_zcl: int | None = None
    literature: dict[Quantity, Interval] = field(default_factory=dict)
    notes: tuple[str, ...] = ()


@dataclass
class EntryResult:
    name: str
    passed: bool
    mismatches: list[str]
    report: FactBase | None = None

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "mismatches": self.mismatches}


def _provenance(text: object, where: str) -> str:
    if not isinstance(text, str) or not text.startswith(_TAGS):
        raise InputError(f"{where}: every catalog value needs a provenance tag {_TAGS}")
    return text


def _intervals(data: dict, where: str, provenance: dict[str, str]) -> dict[Quantity, Interval]:
    out = {}
    for key, v in data.items():
        out[Quantity.parse(key)] = Interval.from_json(v)
        provenance[f"{where}:{key}"] = _provenance(v.get("provenance"), f"{where} {key}")
    return out


def load_catalog(path: str | Path = CATALOG_PATH) -> list[CatalogEntry]:
    path = Path(path)
    data = load_json(path)
    entries = []
    for raw in data.get("entries", []):
        name = raw["name"]
        prov: dict[str, str] = {}
        expected = _intervals(raw.get("expected", {}), "expected", prov)
        literature = _intervals(raw.get("literature", {}), "literature", prov)
        for k, v in prov.items():
            if k.startswith("expected:") and v.startswith("[LITERATURE]"):
                raise InputError(f"{name}: [LITERATURE] values belong under 'literature', not 'expected'")
        zcl = raw.get("zcl")
        if zcl is not None:
            prov["zcl"] = _provenance(zcl.get("provenance"), f"{name} zcl")
            zcl = zcl["value"]
        notes = tuple(_provenance(n, f"{name} note") for n in raw.get("notes", ()))
        entries.append(CatalogEntry(
            name, space_from_json(raw["space"], path.parent), expected, prov, zcl, literature, notes,
        ))
    return entries


def lookup(name: str, entries: list[CatalogEntry] | None = None) -> CatalogEntry:
    entries = load_catalog() if entries is None else entries
    for e in entries:
        if e.name == name:
            return e
    available = ", ".join(e.name for e in entries) or "(none)"
    raise InputError(f"unknown catalog entry {name!r}; available: {available}")


def run_entry(entry: CatalogEntry) -> EntryResult:
    report = bounds_for(entry.descriptor)
    mismatches = []
    for q, want in entry.expected.items():
        got = report.interval(q)
        if got != want:
            mismatches.append(f"{q.key}: expected {want}, got {got}")
    if entry.expected_zcl is not None:
        if entry.descriptor.complex is None:
            mismatches.append("zcl: expected a value but the entry has no complex")
        else:
            got = zero_divisor_cup_length(cohomology_ring_z2(entry.descriptor.complex))
            if got != entry.expected_zcl:
                mismatches.append(f"zcl: expected {entry.expected_zcl}, got {got}")
    return EntryResult(entry.name, not mismatches, mismatches, report)


def run_all(entries: list[CatalogEntry] | None = None) -> list[EntryResult]:
    """Compare the engine against every entry; an empty catalog passes vacuously."""
    entries = load_catalog() if entries is None else entries
    return [run_entry(e) for e in entries]
