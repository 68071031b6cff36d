"""Deterministic 2-hop bridge question generation.

Pairs an anchor artifact with a target artifact from the same state under a
cross-attribute constraint, extracts clues from descriptors, renders templated
question text, and assigns seeded train/val/test splits. Everything is a pure
function of (graph, config): reruns yield byte-identical corpora.
"""

from __future__ import annotations

import hashlib
import json
import random
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path

from .clues import CluelessDescriptor, check_nonspecificity, extract_clue
from .graph import Artifact, CultureGraph, EntityRef
from .templates import render_question_text
from .text import contains_phrase, content_stems

SPLITS = ("train", "val", "test")

# Split counts reported for the reference 3218-question corpus; plain
# largest-remainder rounding of 0.70/0.10/0.20 would give 2253/322/643.
_REFERENCE_SPLIT = {3218: (2252, 323, 643)}
_REFERENCE_RATIOS = (0.70, 0.10, 0.20)


class SupplyExhausted(Exception):
    """Admissible pair supply ran out before the target count."""


class Exhausted:
    """Sentinel: no admissible pair remains under the occurrence caps."""

    def __repr__(self) -> str:
        return "Exhausted"


EXHAUSTED = Exhausted()


@dataclass(frozen=True, slots=True)
class GraphPath:
    """Ground-truth 2-hop chain: anchor -> bridge state -> target."""

    anchor: EntityRef
    bridge: EntityRef
    target: EntityRef

    def __post_init__(self) -> None:
        if self.bridge.category != "state":
            raise ValueError(f"bridge must be a state ref: {self.bridge}")
        if self.anchor.category == self.target.category:
            raise ValueError(f"anchor and target share a category: {self.anchor}, {self.target}")

    def serialize(self) -> str:
        return f"{self.anchor.serialize()}|{self.bridge.serialize()}|{self.target.serialize()}"

    @classmethod
    def parse(cls, text: str) -> GraphPath:
        parts = text.split("|")
        if len(parts) != 3:
            raise ValueError(f"path must have three segments: {text!r}")
        return cls(
            anchor=EntityRef.parse(parts[0]),
            bridge=EntityRef.parse(parts[1]),
            target=EntityRef.parse(parts[2]),
        )

    def question_id(self) -> str:
        return hashlib.sha256(self.serialize().encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True, slots=True)
class QuestionInstance:
    id: str
    text: str
    anchor_clue: str
    target_clue: str
    answer: str
    path: GraphPath
    split: str = "train"


@dataclass(frozen=True, slots=True)
class GenConfig:
    seed: int = 7
    per_artifact_cap: int = 12
    split_ratios: tuple[float, float, float] = _REFERENCE_RATIOS
    target_count: int = 3218
    overlap_threshold: float = 0.6
    artifact_disjoint: bool = False

    def __post_init__(self) -> None:
        if self.per_artifact_cap < 1:
            raise ValueError("per_artifact_cap must be positive")
        if self.target_count < 1:
            raise ValueError("target_count must be positive")
        if abs(sum(self.split_ratios) - 1.0) > 1e-9 or any(
            not 0 < r < 1 for r in self.split_ratios
        ):
            raise ValueError(f"split ratios must lie in (0,1) and sum to 1: {self.split_ratios}")


@dataclass
class GenReport:
    n: int = 0
    supply: int = 0
    per_region: dict[str, int] = field(default_factory=dict)
    per_category: dict[str, int] = field(default_factory=dict)
    split_counts: dict[str, int] = field(default_factory=dict)
    skipped: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "supply": self.supply,
                "per_region": dict(sorted(self.per_region.items())),
                "per_category": dict(sorted(self.per_category.items())),
                "split_counts": {s: self.split_counts.get(s, 0) for s in SPLITS},
                "skipped": dict(sorted(self.skipped.items())),
            },
            ensure_ascii=False,
            indent=2,
        )


class PairSampler:
    """Seeded sampler over admissible (anchor, target) pairs with occurrence caps.

    Admissibility is topological: same region, different category, plus an
    optional per-target predicate. All admissible ordered pairs are enumerated
    up front in slug order and shuffled once, so draws are deterministic for a
    given seed and cap bookkeeping is exact.
    """

    def __init__(
        self,
        graph: CultureGraph,
        rng: random.Random,
        per_artifact_cap: int,
        target_ok=None,
    ) -> None:
        self._cap = per_artifact_cap
        self.counts: Counter[EntityRef] = Counter()
        pairs: list[tuple[Artifact, Artifact]] = []
        for region in graph.regions_sorted():
            members = graph.artifacts_in(region.ref)
            eligible_targets = [a for a in members if target_ok is None or target_ok(a)]
            for anchor in members:
                for target in eligible_targets:
                    if anchor.ref != target.ref and anchor.category != target.category:
                        pairs.append((anchor, target))
        self.supply = len(pairs)
        rng.shuffle(pairs)
        self._pool = pairs

    def sample(self) -> GraphPath | Exhausted:
        # A pair blocked by caps can never become admissible again, so pool
        # entries are discarded permanently as they fail.
        while self._pool:
            anchor, target = self._pool.pop()
            if self.counts[anchor.ref] >= self._cap or self.counts[target.ref] >= self._cap:
                continue
            self.counts[anchor.ref] += 1
            self.counts[target.ref] += 1
            return GraphPath(anchor=anchor.ref, bridge=anchor.region, target=target.ref)
        return EXHAUSTED

    def rollback(self, path: GraphPath) -> None:
        self.counts[path.anchor] -= 1
        self.counts[path.target] -= 1


def sample_pair(graph: CultureGraph, sampler: PairSampler) -> GraphPath | Exhausted:
    """Draw the next admissible path from ``sampler`` (thin spec-facing wrapper)."""
    del graph
    return sampler.sample()


@dataclass(frozen=True, slots=True)
class ClueTable:
    """Per-artifact clue extraction and vetting results."""

    clues: dict[EntityRef, str]
    target_ok: dict[EntityRef, bool]
    skipped: dict[str, int]


def build_clue_table(graph: CultureGraph, threshold: float) -> ClueTable:
    """Extract and vet clues for every artifact.

    A clueless artifact can still anchor a question (it is referenced by name)
    but never serve as a target; a clue failing non-specificity likewise
    blocks only the target role.
    """
    clues: dict[EntityRef, str] = {}
    target_ok: dict[EntityRef, bool] = {}
    skipped: Counter[str] = Counter()
    for artifact in graph.artifacts_sorted():
        region_name = graph.region_of(artifact.ref).display_name
        try:
            clue = extract_clue(artifact, region_name)
        except CluelessDescriptor:
            target_ok[artifact.ref] = False
            skipped["clueless_descriptor"] += 1
            continue
        clues[artifact.ref] = clue
        check = check_nonspecificity(graph, clue, artifact, threshold)
        target_ok[artifact.ref] = check.passed
        if not check.passed:
            skipped[f"clue_{check.reason}"] += 1
    return ClueTable(clues=clues, target_ok=target_ok, skipped=dict(skipped))


def render_question(
    graph: CultureGraph, path: GraphPath, anchor_clue: str | None, target_clue: str
) -> str:
    anchor = graph.artifacts[path.anchor]
    return render_question_text(
        target_category=path.target.category,
        target_clue=target_clue,
        anchor_category=path.anchor.category,
        anchor_display=anchor.display_name,
        anchor_clue=anchor_clue,
    )


def generate_corpus(
    graph: CultureGraph, config: GenConfig
) -> tuple[list[QuestionInstance], GenReport]:
    """Generate min(target_count, supply) questions with splits assigned."""
    rng = random.Random(config.seed)
    table = build_clue_table(graph, config.overlap_threshold)
    sampler = PairSampler(
        graph,
        rng,
        config.per_artifact_cap,
        target_ok=lambda a: table.target_ok.get(a.ref, False),
    )
    if sampler.supply == 0:
        raise SupplyExhausted("no admissible pairs in graph")

    questions: list[QuestionInstance] = []
    skipped = Counter(table.skipped)
    while len(questions) < config.target_count:
        path = sampler.sample()
        if path is EXHAUSTED:
            break
        target = graph.artifacts[path.target]
        text = render_question(
            graph, path, table.clues.get(path.anchor), table.clues[path.target]
        )
        if contains_phrase(text, target.display_name):
            # Leakage: the rendered text names the answer; release the pair.
            sampler.rollback(path)
            skipped["answer_leakage"] += 1
            continue
        questions.append(
            QuestionInstance(
                id=path.question_id(),
                text=text,
                anchor_clue=table.clues.get(path.anchor, ""),
                target_clue=table.clues[path.target],
                answer=target.display_name,
                path=path,
            )
        )

    questions = assign_splits(questions, config)
    report = GenReport(
        n=len(questions),
        supply=sampler.supply,
        per_region={},
        per_category={},
        split_counts=Counter(q.split for q in questions),
        skipped=dict(skipped),
    )
    for q in questions:
        region_name = graph.regions[q.path.bridge].display_name
        report.per_region[region_name] = report.per_region.get(region_name, 0) + 1
        category = q.path.target.category
        report.per_category[category] = report.per_category.get(category, 0) + 1
    return questions, report


def split_counts(n: int, ratios: tuple[float, float, float]) -> tuple[int, int, int]:
    """Partition sizes for n questions: largest-remainder rounding, except the
    reference corpus size keeps its published 2252/323/643 breakdown."""
    if ratios == _REFERENCE_RATIOS and n in _REFERENCE_SPLIT:
        return _REFERENCE_SPLIT[n]
    quotas = [n * r for r in ratios]
    floors = [int(q) for q in quotas]
    leftover = n - sum(floors)
    order = sorted(range(3), key=lambda i: (quotas[i] - floors[i], -i), reverse=True)
    for i in order[:leftover]:
        floors[i] += 1
    return floors[0], floors[1], floors[2]


def assign_splits(questions: list[QuestionInstance], config: GenConfig) -> list[QuestionInstance]:
    """Seeded shuffle then partition by ratios; original order is preserved."""
    if not questions:
        return []
    rng = random.Random(_derive_seed(config.seed, "split"))
    if config.artifact_disjoint:
        assignment = _artifact_disjoint_assignment(questions, config, rng)
    else:
        order = list(range(len(questions)))
        rng.shuffle(order)
        n_train, n_val, _ = split_counts(len(questions), config.split_ratios)
        assignment = {}
        for position, index in enumerate(order):
            if position < n_train:
                assignment[index] = "train"
            elif position < n_train + n_val:
                assignment[index] = "val"
            else:
                assignment[index] = "test"
    return [replace(q, split=assignment[i]) for i, q in enumerate(questions)]


def _artifact_disjoint_assignment(
    questions: list[QuestionInstance], config: GenConfig, rng: random.Random
) -> dict[int, str]:
    # Best-effort variant: artifacts are partitioned by the ratios and a
    # question follows its endpoints; mixed-endpoint questions fall to train.
    # Counts are approximate by construction.
    artifact_refs = sorted(
        {q.path.anchor for q in questions} | {q.path.target for q in questions},
        key=lambda r: r.serialize(),
    )
    rng.shuffle(artifact_refs)
    n_train, n_val, _ = split_counts(len(artifact_refs), config.split_ratios)
    split_of: dict[EntityRef, str] = {}
    for position, ref in enumerate(artifact_refs):
        split_of[ref] = "train" if position < n_train else "val" if position < n_train + n_val else "test"
    assignment = {}
    for i, q in enumerate(questions):
        a, b = split_of[q.path.anchor], split_of[q.path.target]
        assignment[i] = a if a == b else "train"
    return assignment


def _derive_seed(seed: int, label: str) -> int:
    digest = hashlib.sha256(f"{seed}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


# -- review sidecar ---------------------------------------------------------

MIN_CLUE_STEMS = 4


def review_flags(questions: list[QuestionInstance]) -> list[dict]:
    """Heuristic triage list for human review (clue too short, duplicate text)."""
    flagged = []
    seen_text: set[str] = set()
    for q in questions:
        flags = []
        if len(content_stems(q.target_clue)) < MIN_CLUE_STEMS:
            flags.append("clue_too_short")
        folded = " ".join(q.text.casefold().split())
        if folded in seen_text:
            flags.append("duplicate_text")
        seen_text.add(folded)
        if flags:
            flagged.append({"id": q.id, "flags": flags})
    return flagged


# -- corpus file io ---------------------------------------------------------


def write_corpus(path: str | Path, questions: list[QuestionInstance]) -> None:
    with Path(path).open("w", encoding="utf-8") as handle:
        for q in questions:
            handle.write(
                json.dumps(
                    {
                        "id": q.id,
                        "question": q.text,
                        "answer": q.answer,
                        "graph_path": q.path.serialize(),
                        "split": q.split,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def read_corpus(path: str | Path) -> list[QuestionInstance]:
    questions = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        questions.append(
            QuestionInstance(
                id=rec["id"],
                text=rec["question"],
                anchor_clue="",
                target_clue="",
                answer=rec["answer"],
                path=GraphPath.parse(rec["graph_path"]),
                split=rec["split"],
            )
        )
    return questions
