"""Parse artifact inventories into a validated CultureGraph.

Accepts delimited text (CSV with header) and line-delimited JSON records with
the columns: source_link, state, artifact_name, descriptor, attribute.
Invalid rows are skipped with a diagnostic; ingest is fatal only when no
valid row remains.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from pathlib import Path

from .graph import CATEGORIES, Artifact, CultureGraph, EntityRef, Region
from .text import fold_diacritics, fold_text

INVENTORY_COLUMNS = ("source_link", "state", "artifact_name", "descriptor", "attribute")

# Explicit list separators in the state column mark a multi-region row, which
# the single-bridge path schema cannot represent. "and" stays legal: several
# region names contain it.
_MULTI_REGION_RE = re.compile(r"[;/,]|\band\s*/\s*or\b", re.IGNORECASE)

_NON_TOKEN_RE = re.compile(r"[^a-z0-9_]+")


class IngestError(Exception):
    """Fatal ingest failure (no valid rows)."""


class EmptyAfterNormalization(ValueError):
    """Display text normalizes to an empty slug."""


@dataclass(frozen=True, slots=True)
class InventoryRow:
    """One annotated artifact row in the inventory schema."""

    source_link: str
    state: str
    artifact_name: str
    descriptor: str
    attribute: str


@dataclass(frozen=True, slots=True)
class Diagnostic:
    """A skipped-row report: index into the input plus a machine-readable reason."""

    row_index: int
    reason: str
    detail: str = ""

    def render(self) -> str:
        msg = f"row {self.row_index}: {self.reason}"
        return f"{msg} ({self.detail})" if self.detail else msg


def normalize_slug(display: str) -> str:
    """Normalize display text to a lowercase underscore token.

    Diacritics fold to ASCII, spaces and hyphens become underscores, anything
    else non-alphanumeric is dropped. Idempotent.
    """
    text = fold_diacritics(display).lower()
    text = text.replace("-", " ")
    text = "_".join(text.split())
    text = _NON_TOKEN_RE.sub("", text)
    text = re.sub(r"_+", "_", text).strip("_")
    if not text:
        raise EmptyAfterNormalization(f"nothing survives normalization: {display!r}")
    return text


def build_region_table(entries: list[tuple[str, str]]) -> list[Region]:
    """Region objects from (display_name, kind) pairs."""
    return [
        Region(
            ref=EntityRef(category="state", slug=normalize_slug(name)),
            display_name=name,
            kind=kind,
        )
        for name, kind in entries
    ]


def ingest_inventory(
    rows: list[InventoryRow], region_table: list[Region]
) -> tuple[CultureGraph, list[Diagnostic]]:
    """Build a frozen graph from inventory rows.

    One artifact node per valid row; duplicates are first-wins. Deterministic:
    the same (rows, region_table) yields a byte-identical snapshot.
    """
    if not region_table:
        raise IngestError("region table is empty")

    graph = CultureGraph()
    for region in region_table:
        graph.add_region(region)
    region_by_name = {fold_text(r.display_name): r for r in region_table}
    region_by_slug = {r.ref.slug: r for r in region_table}

    diagnostics: list[Diagnostic] = []
    for index, row in enumerate(rows):
        diag = _validate_row(index, row, region_by_name, region_by_slug)
        if isinstance(diag, Diagnostic):
            diagnostics.append(diag)
            continue
        region, slug = diag
        ref = EntityRef(category=row.attribute.strip().lower(), slug=slug)
        if ref in graph.artifacts:
            diagnostics.append(
                Diagnostic(index, "duplicate_ref", f"{ref} already ingested; first row wins")
            )
            continue
        graph.add_artifact(
            Artifact(
                ref=ref,
                display_name=row.artifact_name.strip(),
                region=region.ref,
                descriptor=row.descriptor.strip(),
                source_url=row.source_link.strip() or None,
            )
        )

    if not graph.artifacts:
        raise IngestError("no valid rows in inventory")
    return graph.freeze(), diagnostics


def _validate_row(
    index: int,
    row: InventoryRow,
    region_by_name: dict[str, Region],
    region_by_slug: dict[str, Region],
) -> Diagnostic | tuple[Region, str]:
    for column in ("state", "artifact_name", "descriptor", "attribute"):
        if not getattr(row, column).strip():
            return Diagnostic(index, "empty_field", column)
    if _MULTI_REGION_RE.search(row.state):
        return Diagnostic(index, "multi_region", row.state.strip())
    attribute = row.attribute.strip().lower()
    if attribute not in CATEGORIES:
        return Diagnostic(index, "unknown_attribute", row.attribute.strip())
    region = region_by_name.get(fold_text(row.state))
    if region is None:
        try:
            region = region_by_slug.get(normalize_slug(row.state))
        except EmptyAfterNormalization:
            region = None
    if region is None:
        return Diagnostic(index, "unknown_region", row.state.strip())
    try:
        slug = normalize_slug(row.artifact_name)
    except EmptyAfterNormalization:
        return Diagnostic(index, "empty_after_normalization", row.artifact_name.strip())
    return region, slug


# -- file readers ---------------------------------------------------------


def read_inventory(path: str | Path) -> list[InventoryRow]:
    """Read inventory rows from CSV (``.csv``) or JSONL (anything else)."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return _read_inventory_csv(path)
    return _read_inventory_jsonl(path)


def _read_inventory_csv(path: Path) -> list[InventoryRow]:
    with path.open(encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        return [_row_from_mapping(rec) for rec in reader]


def _read_inventory_jsonl(path: Path) -> list[InventoryRow]:
    rows = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            rows.append(_row_from_mapping(json.loads(line)))
    return rows


def _row_from_mapping(rec: dict) -> InventoryRow:
    return InventoryRow(
        source_link=str(rec.get("source_link", "") or ""),
        state=str(rec.get("state", "") or ""),
        artifact_name=str(rec.get("artifact_name", "") or ""),
        descriptor=str(rec.get("descriptor", "") or ""),
        attribute=str(rec.get("attribute", "") or ""),
    )


def read_regions(path: str | Path) -> list[Region]:
    """Read the region table from CSV (columns: name, kind) or JSONL."""
    path = Path(path)
    entries: list[tuple[str, str]] = []
    if path.suffix.lower() == ".csv":
        with path.open(encoding="utf-8", newline="") as handle:
            for rec in csv.DictReader(handle):
                entries.append((rec["name"], rec["kind"]))
    else:
        for line in path.read_text(encoding="utf-8").splitlines():
            if line.strip():
                rec = json.loads(line)
                entries.append((rec["name"], rec["kind"]))
    return build_region_table(entries)


def write_inventory_csv(path: str | Path, rows: list[InventoryRow]) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(INVENTORY_COLUMNS)
        for row in rows:
            writer.writerow(
                [row.source_link, row.state, row.artifact_name, row.descriptor, row.attribute]
            )


def write_regions_csv(path: str | Path, regions: list[Region]) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["name", "kind"])
        for region in regions:
            writer.writerow([region.display_name, region.kind])
