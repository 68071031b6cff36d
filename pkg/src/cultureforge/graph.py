"""In-memory typed knowledge graph over cultural artifacts.

Nodes are regions and artifacts; every artifact carries exactly two canonical
relations: ``located_in`` (artifact -> region) and ``has_category``
(artifact -> category). Forward edges and reverse indexes are kept in lockstep.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .text import fold_text

CATEGORIES: tuple[str, ...] = (
    "history",
    "tourism",
    "cuisine",
    "costume",
    "language",
    "art",
    "festivals",
    "religion",
    "medicine",
    "transport",
    "cities",
    "sports",
    "personalities",
)

STATE_CATEGORY = "state"

_SLUG_FORBIDDEN = set("|:") | set(" \t\n\r")


class GraphError(Exception):
    """Base class for graph construction and lookup errors."""


class DuplicateRef(GraphError):
    """A node with the same ref already exists."""


class UnknownRegion(GraphError):
    """Referenced region is not present in the graph."""


class FrozenGraph(GraphError):
    """Mutation attempted after the graph was frozen."""


class InvalidRef(GraphError):
    """Ref string or components violate the ``category:slug`` contract."""


def _check_slug(slug: str) -> str:
    if not slug:
        raise InvalidRef("slug is empty")
    for ch in slug:
        if ch in _SLUG_FORBIDDEN:
            raise InvalidRef(f"slug contains forbidden character: {slug!r}")
        if not (ch.isascii() and (ch.isalnum() or ch == "_")):
            raise InvalidRef(f"slug contains non-token character: {slug!r}")
    return slug


@dataclass(frozen=True, slots=True)
class EntityRef:
    """Namespaced node identifier ``category:slug``."""

    category: str
    slug: str

    def __post_init__(self) -> None:
        if self.category not in CATEGORIES and self.category != STATE_CATEGORY:
            raise InvalidRef(f"unknown category: {self.category!r}")
        _check_slug(self.slug)

    def serialize(self) -> str:
        return f"{self.category}:{self.slug}"

    @classmethod
    def parse(cls, text: str) -> EntityRef:
        category, sep, slug = text.partition(":")
        if not sep:
            raise InvalidRef(f"ref has no ':' separator: {text!r}")
        return cls(category=category, slug=slug)

    def __str__(self) -> str:
        return self.serialize()


@dataclass(frozen=True, slots=True)
class Region:
    """A state or union territory node."""

    ref: EntityRef
    display_name: str
    kind: str  # "state" | "union_territory"

    def __post_init__(self) -> None:
        if self.ref.category != STATE_CATEGORY:
            raise InvalidRef(f"region ref must use the state namespace: {self.ref}")
        if self.kind not in ("state", "union_territory"):
            raise InvalidRef(f"unknown region kind: {self.kind!r}")


@dataclass(frozen=True, slots=True)
class Artifact:
    """A cultural artifact node with its descriptor text as metadata."""

    ref: EntityRef
    display_name: str
    region: EntityRef
    descriptor: str
    source_url: str | None = None

    def __post_init__(self) -> None:
        if self.ref.category == STATE_CATEGORY:
            raise InvalidRef(f"artifact ref may not use the state namespace: {self.ref}")
        if self.region.category != STATE_CATEGORY:
            raise InvalidRef(f"artifact region must use the state namespace: {self.region}")
        if not self.descriptor.strip():
            raise InvalidRef(f"artifact {self.ref} has an empty descriptor")

    @property
    def category(self) -> str:
        return self.ref.category

    @property
    def slug(self) -> str:
        return self.ref.slug


class NotFound:
    """Sentinel value for a lookup miss (a value, not an exception)."""

    _instance: NotFound | None = None

    def __new__(cls) -> NotFound:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NotFound"

    def __bool__(self) -> bool:
        return False


NOT_FOUND = NotFound()


@dataclass
class CultureGraph:
    """Typed graph with forward edges and exact reverse indexes.

    Build single-threaded, then :meth:`freeze`; a frozen graph is safe for
    unlimited concurrent readers.
    """

    regions: dict[EntityRef, Region] = field(default_factory=dict)
    artifacts: dict[EntityRef, Artifact] = field(default_factory=dict)
    located_in: dict[EntityRef, EntityRef] = field(default_factory=dict)
    has_category: dict[EntityRef, str] = field(default_factory=dict)
    _by_region: dict[EntityRef, set[EntityRef]] = field(default_factory=dict)
    _by_region_category: dict[tuple[EntityRef, str], set[EntityRef]] = field(default_factory=dict)
    _frozen: bool = False

    # -- construction ---------------------------------------------------

    def add_region(self, region: Region) -> None:
        self._check_mutable()
        if region.ref in self.regions:
            raise DuplicateRef(f"region already present: {region.ref}")
        self.regions[region.ref] = region
        self._by_region.setdefault(region.ref, set())

    def add_artifact(self, artifact: Artifact) -> None:
        """Store an artifact and update both edges and both reverse indexes."""
        self._check_mutable()
        if artifact.ref in self.artifacts or artifact.ref in self.regions:
            raise DuplicateRef(f"ref already present: {artifact.ref}")
        if artifact.region not in self.regions:
            raise UnknownRegion(f"unknown region: {artifact.region}")
        self.artifacts[artifact.ref] = artifact
        self.located_in[artifact.ref] = artifact.region
        self.has_category[artifact.ref] = artifact.category
        self._by_region[artifact.region].add(artifact.ref)
        self._by_region_category.setdefault((artifact.region, artifact.category), set()).add(
            artifact.ref
        )

    def freeze(self) -> CultureGraph:
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    def _check_mutable(self) -> None:
        if self._frozen:
            raise FrozenGraph("graph is frozen; no mutation after freeze")

    # -- queries ----------------------------------------------------------

    def lookup_by_ref(self, ref: EntityRef) -> Artifact | Region | NotFound:
        node = self.artifacts.get(ref)
        if node is not None:
            return node
        region = self.regions.get(ref)
        if region is not None:
            return region
        return NOT_FOUND

    def artifacts_in(self, region: EntityRef, category: str | None = None) -> list[Artifact]:
        """Artifacts located in ``region``, optionally filtered by category.

        Ordered by slug ascending so candidate lists are reproducible.
        """
        if region not in self.regions:
            raise UnknownRegion(f"unknown region: {region}")
        if category is None:
            refs = self._by_region.get(region, set())
        else:
            refs = self._by_region_category.get((region, category), set())
        return sorted((self.artifacts[r] for r in refs), key=lambda a: a.slug)

    @property
    def edge_count(self) -> int:
        return len(self.located_in) + len(self.has_category)

    def region_of(self, artifact_ref: EntityRef) -> Region:
        return self.regions[self.located_in[artifact_ref]]

    def regions_sorted(self) -> list[Region]:
        return sorted(self.regions.values(), key=lambda r: r.ref.slug)

    def artifacts_sorted(self) -> list[Artifact]:
        return sorted(self.artifacts.values(), key=lambda a: a.ref.serialize())

    def in_category(self, category: str) -> list[Artifact]:
        return sorted(
            (a for a in self.artifacts.values() if a.category == category),
            key=lambda a: a.ref.serialize(),
        )

    def find_region_by_name(self, name: str) -> Region | None:
        """Resolve a region by display name: exact, then case-insensitive."""
        for region in self.regions.values():
            if region.display_name == name:
                return region
        folded = fold_text(name)
        for region in self.regions_sorted():
            if fold_text(region.display_name) == folded:
                return region
        return None

    # -- snapshot serialization -------------------------------------------

    def snapshot_lines(self) -> list[str]:
        """Line-delimited snapshot: one node or edge record per line.

        Ordering is fully determined by refs, so equal graphs serialize to
        identical bytes regardless of insertion order. The format is stable
        and covered by golden tests.
        """
        lines: list[str] = []
        for region in self.regions_sorted():
            lines.append(
                _record(
                    kind="region",
                    ref=region.ref.serialize(),
                    display_name=region.display_name,
                    region_kind=region.kind,
                )
            )
        for artifact in self.artifacts_sorted():
            lines.append(
                _record(
                    kind="artifact",
                    ref=artifact.ref.serialize(),
                    display_name=artifact.display_name,
                    region=artifact.region.serialize(),
                    descriptor=artifact.descriptor,
                    source_url=artifact.source_url,
                )
            )
        for artifact in self.artifacts_sorted():
            lines.append(
                _record(
                    kind="edge",
                    rel="located_in",
                    source=artifact.ref.serialize(),
                    target=artifact.region.serialize(),
                )
            )
        for artifact in self.artifacts_sorted():
            lines.append(
                _record(
                    kind="edge",
                    rel="has_category",
                    source=artifact.ref.serialize(),
                    target=artifact.category,
                )
            )
        return lines

    def write_snapshot(self, path: str | Path) -> None:
        Path(path).write_text("".join(line + "\n" for line in self.snapshot_lines()), encoding="utf-8")

    @classmethod
    def from_snapshot_lines(cls, lines: list[str]) -> CultureGraph:
        graph = cls()
        for line in lines:
            if not line.strip():
                continue
            rec = json.loads(line)
            kind = rec["kind"]
            if kind == "region":
                graph.add_region(
                    Region(
                        ref=EntityRef.parse(rec["ref"]),
                        display_name=rec["display_name"],
                        kind=rec["region_kind"],
                    )
                )
            elif kind == "artifact":
                graph.add_artifact(
                    Artifact(
                        ref=EntityRef.parse(rec["ref"]),
                        display_name=rec["display_name"],
                        region=EntityRef.parse(rec["region"]),
                        descriptor=rec["descriptor"],
                        source_url=rec.get("source_url"),
                    )
                )
            # edge records are redundant with artifact records; validated on read
            elif kind != "edge":
                raise GraphError(f"unknown snapshot record kind: {kind!r}")
        return graph.freeze()

    @classmethod
    def read_snapshot(cls, path: str | Path) -> CultureGraph:
        return cls.from_snapshot_lines(Path(path).read_text(encoding="utf-8").splitlines())


def _record(**fields: object) -> str:
    return json.dumps({k: v for k, v in fields.items() if v is not None}, ensure_ascii=False)
