"""Parametric knowledge-graph environment: the three atomic manipulations,
trace step types, the step-sequence grammar, and trace serialization.

The environment is pure given a frozen graph: replaying any recorded tool
call yields an identical observation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .graph import CATEGORIES, Artifact, CultureGraph, Region
from .ingest import EmptyAfterNormalization, normalize_slug
from .qgen import GraphPath, QuestionInstance
from .text import fold_text, overlap_score

TOOLS = (
    "lookup_entity_by_name",
    "resolve_entity_by_description",
    "get_artifacts_in_state",
)

TOOL_ARGS: dict[str, tuple[str, ...]] = {
    "lookup_entity_by_name": ("name",),
    "resolve_entity_by_description": ("description",),
    "get_artifacts_in_state": ("state", "target_type"),
}

STEP_KINDS = ("THOUGHT", "ACTION", "OBSERVATION", "REFLECTION", "ORACLE_INTERVENTION", "FINAL")

# Singular labels used in prompts and tool arguments, per category.
CATEGORY_LABEL: dict[str, str] = {
    "history": "History",
    "tourism": "Tourism",
    "cuisine": "Cuisine",
    "costume": "Costume",
    "language": "Language",
    "art": "Art",
    "festivals": "Festival",
    "religion": "Religion",
    "medicine": "Medicine",
    "transport": "Transport",
    "cities": "City",
    "sports": "Sport",
    "personalities": "Personality",
}

DEFAULT_RECORD_CAP = 40
DEFAULT_BUDGET = 5
RESOLVE_TOP_K = 5
RESOLVE_THRESHOLD = 0.6


class ProtocolViolation(Exception):
    """Actor output carries neither a parseable action nor a final answer."""


@dataclass(frozen=True, slots=True)
class ToolCall:
    tool: str
    args: dict[str, str]

    def __post_init__(self) -> None:
        if self.tool not in TOOLS:
            raise ValueError(f"unknown tool: {self.tool!r}")
        expected = TOOL_ARGS[self.tool]
        if tuple(sorted(self.args)) != tuple(sorted(expected)):
            raise ValueError(f"{self.tool} takes exactly {expected}, got {tuple(self.args)}")

    def render(self) -> str:
        inner = ", ".join(f'{key}={json.dumps(self.args[key])}' for key in TOOL_ARGS[self.tool])
        return f"{self.tool}({inner})"


@dataclass(frozen=True, slots=True)
class Observation:
    records: tuple[dict, ...]
    truncated: bool = False
    reason: str | None = None

    def payload(self) -> dict:
        out: dict = {"records": list(self.records), "truncated": self.truncated}
        if self.reason:
            out["reason"] = self.reason
        return out

    def render(self) -> str:
        return json.dumps(self.payload(), ensure_ascii=False)

    @property
    def empty(self) -> bool:
        return not self.records


@dataclass(frozen=True, slots=True)
class TraceStep:
    kind: str
    payload: object  # str | ToolCall | Observation | dict

    def __post_init__(self) -> None:
        if self.kind not in STEP_KINDS:
            raise ValueError(f"unknown step kind: {self.kind!r}")


@dataclass
class Session:
    """One actor run over one question; the step list is the trace."""

    question: QuestionInstance
    budget: int = DEFAULT_BUDGET
    steps: list[TraceStep] = field(default_factory=list)
    turns_used: int = 0
    status: str = "running"  # running | answered | exhausted
    interventions_used: int = 0
    tags: list[str] = field(default_factory=list)
    violations: int = 0

    @property
    def session_id(self) -> str:
        return self.question.id

    @property
    def path(self) -> GraphPath:
        return self.question.path

    def add_tag(self, tag: str) -> None:
        if tag not in self.tags:
            self.tags.append(tag)

    def action_count(self) -> int:
        return sum(1 for s in self.steps if s.kind == "ACTION")

    def final_answer(self) -> str | None:
        for s in reversed(self.steps):
            if s.kind == "FINAL":
                return s.payload  # type: ignore[return-value]
        return None

    def last_step(self) -> TraceStep | None:
        return self.steps[-1] if self.steps else None


# -- the three atomic manipulations -----------------------------------------


def _region_by_name(graph: CultureGraph, name: str) -> Region | None:
    region = graph.find_region_by_name(name)
    if region is not None:
        return region
    try:
        slug = normalize_slug(name)
    except EmptyAfterNormalization:
        return None
    for candidate in graph.regions_sorted():
        if candidate.ref.slug == slug:
            return candidate
    return None


def _artifact_record(graph: CultureGraph, artifact: Artifact, with_state: bool = True) -> dict:
    record: dict = {"name": artifact.display_name}
    if with_state:
        record["state"] = graph.region_of(artifact.ref).display_name
    record["description"] = artifact.descriptor
    return record


def lookup_entity_by_name(
    graph: CultureGraph, name: str, record_cap: int = DEFAULT_RECORD_CAP
) -> Observation:
    """Find artifacts by name: exact, then case-insensitive, then slug-equal.

    The first non-empty tier wins; an empty observation is a miss, not an error.
    """
    artifacts = graph.artifacts_sorted()
    tiers: list[list[Artifact]] = [
        [a for a in artifacts if a.display_name == name],
        [a for a in artifacts if fold_text(a.display_name) == fold_text(name)],
    ]
    try:
        slug = normalize_slug(name)
        tiers.append([a for a in artifacts if a.slug == slug])
    except EmptyAfterNormalization:
        pass
    for tier in tiers:
        if tier:
            matches = sorted(tier, key=lambda a: a.slug)
            return _capped(
                [_artifact_record(graph, a) for a in matches], record_cap
            )
    return Observation(records=())


def resolve_entity_by_description(
    graph: CultureGraph,
    description: str,
    top_k: int = RESOLVE_TOP_K,
    threshold: float = RESOLVE_THRESHOLD,
) -> Observation:
    """Ground an entity from descriptor text by token-overlap ranking."""
    scored = []
    for artifact in graph.artifacts_sorted():
        score = overlap_score(description, artifact.descriptor)
        if score >= threshold:
            scored.append((score, artifact))
    scored.sort(key=lambda pair: (-pair[0], pair[1].slug))
    records = []
    for score, artifact in scored[:top_k]:
        record = _artifact_record(graph, artifact)
        record["score"] = round(score, 4)
        records.append(record)
    return Observation(records=tuple(records))


def map_target_type(target_type: str) -> str | None:
    """Map a tool argument onto the category enum; singular labels are aliases."""
    folded = fold_text(target_type)
    alias: dict[str, str] = {}
    for category in CATEGORIES:
        alias[category] = category
        alias[fold_text(CATEGORY_LABEL[category])] = category
        alias[category + "s"] = category
    return alias.get(folded)


def get_artifacts_in_state(
    graph: CultureGraph,
    state: str,
    target_type: str,
    record_cap: int = DEFAULT_RECORD_CAP,
) -> Observation:
    """State-conditioned candidate retrieval by category."""
    region = _region_by_name(graph, state)
    if region is None:
        return Observation(records=(), reason="unknown_state")
    category = map_target_type(target_type)
    if category is None:
        return Observation(records=(), reason="unknown_type")
    members = graph.artifacts_in(region.ref, category)
    return _capped([_artifact_record(graph, a, with_state=False) for a in members], record_cap)


def _capped(records: list[dict], record_cap: int) -> Observation:
    if len(records) > record_cap:
        return Observation(records=tuple(records[:record_cap]), truncated=True)
    return Observation(records=tuple(records))


def execute(graph: CultureGraph, call: ToolCall, record_cap: int = DEFAULT_RECORD_CAP) -> Observation:
    if call.tool == "lookup_entity_by_name":
        return lookup_entity_by_name(graph, call.args["name"], record_cap)
    if call.tool == "resolve_entity_by_description":
        return resolve_entity_by_description(graph, call.args["description"])
    return get_artifacts_in_state(graph, call.args["state"], call.args["target_type"], record_cap)


# -- step-sequence grammar ----------------------------------------------------


def validate_trace(kinds: list[str]) -> tuple[bool, str]:
    """Check a step-kind sequence against the trace grammar.

    Units are either an executed action block (THOUGHT? ACTION OBSERVATION
    REFLECTION?) or an intervention block (ORACLE_INTERVENTION OBSERVATION?),
    with free-floating THOUGHT steps and an optional terminal FINAL.
    """
    for index, kind in enumerate(kinds):
        if kind not in STEP_KINDS:
            return False, f"unknown kind at {index}: {kind}"
        previous = kinds[index - 1] if index else None
        if kind == "OBSERVATION" and previous not in ("ACTION", "ORACLE_INTERVENTION"):
            return False, f"OBSERVATION at {index} does not follow ACTION or ORACLE_INTERVENTION"
        if kind == "ACTION" and (index + 1 >= len(kinds) or kinds[index + 1] != "OBSERVATION"):
            return False, f"ACTION at {index} is not followed by OBSERVATION"
        if kind == "REFLECTION" and previous != "OBSERVATION":
            return False, f"REFLECTION at {index} does not follow OBSERVATION"
        if previous == "FINAL":
            return False, f"step at {index} follows FINAL"
    return True, "ok"


# -- trace serialization ------------------------------------------------------

_LINE_PREFIX = {
    "THOUGHT": "THOUGHT",
    "ACTION": "ACTION",
    "OBSERVATION": "OBSERVATION",
    "REFLECTION": "REFLECTION",
    "ORACLE_INTERVENTION": "ORACLE INTERVENTION",
    "FINAL": "FINAL ANSWER",
}
_PREFIX_KIND = {v: k for k, v in _LINE_PREFIX.items()}
_LINE_RE = re.compile(
    r"^(THOUGHT|ACTION|OBSERVATION|REFLECTION|ORACLE INTERVENTION|FINAL ANSWER)\s*:\s?(.*)$"
)


def render_step_line(step: TraceStep) -> str:
    """One-line rendering used in actor transcripts and SFT think-spans."""
    prefix = _LINE_PREFIX[step.kind]
    payload = step.payload
    if step.kind == "ACTION":
        body = payload.render() if isinstance(payload, ToolCall) else str(payload)
    elif step.kind == "OBSERVATION":
        body = payload.render() if isinstance(payload, Observation) else json.dumps(payload)
    elif step.kind == "ORACLE_INTERVENTION":
        body = payload["message"] if isinstance(payload, dict) else str(payload)
    else:
        body = str(payload)
    return f"{prefix}: {body}".replace("\n", " ")


def parse_step_line(line: str) -> TraceStep | None:
    match = _LINE_RE.match(line)
    if not match:
        return None
    kind = _PREFIX_KIND[match.group(1)]
    body = match.group(2)
    if kind == "ACTION":
        call = parse_tool_call(body)
        return TraceStep(kind=kind, payload=call) if call else None
    if kind == "OBSERVATION":
        payload = json.loads(body)
        return TraceStep(
            kind=kind,
            payload=Observation(
                records=tuple(payload.get("records", [])),
                truncated=payload.get("truncated", False),
                reason=payload.get("reason"),
            ),
        )
    if kind == "ORACLE_INTERVENTION":
        return TraceStep(kind=kind, payload={"message": body})
    return TraceStep(kind=kind, payload=body)


_CALL_RE = re.compile(
    r"(lookup_entity_by_name|resolve_entity_by_description|get_artifacts_in_state)"
    r"\s*\(\s*(.*?)\s*\)",
    re.DOTALL,
)
_ARG_RE = re.compile(r'(\w+)\s*=\s*"((?:[^"\\]|\\.)*)"')


def parse_tool_call(text: str) -> ToolCall | None:
    """Parse ``tool_name(key="value", ...)`` with tolerant whitespace."""
    match = _CALL_RE.search(text)
    if not match:
        return None
    args = {key: value.replace('\\"', '"') for key, value in _ARG_RE.findall(match.group(2))}
    try:
        return ToolCall(tool=match.group(1), args=args)
    except ValueError:
        return None


def _step_payload_json(step: TraceStep) -> object:
    if isinstance(step.payload, ToolCall):
        return {"tool": step.payload.tool, "args": dict(step.payload.args)}
    if isinstance(step.payload, Observation):
        return step.payload.payload()
    return step.payload


def session_lines(session: Session) -> list[str]:
    """Line-delimited trace: a session header record, then one step per line."""
    header = {
        "session_id": session.session_id,
        "idx": -1,
        "kind": "SESSION",
        "payload": {
            "question_id": session.question.id,
            "question": session.question.text,
            "answer": session.question.answer,
            "graph_path": session.path.serialize(),
            "split": session.question.split,
            "status": session.status,
            "turns_used": session.turns_used,
            "budget": session.budget,
            "interventions": session.interventions_used,
            "tags": session.tags,
        },
    }
    lines = [json.dumps(header, ensure_ascii=False)]
    for idx, step in enumerate(session.steps):
        lines.append(
            json.dumps(
                {
                    "session_id": session.session_id,
                    "idx": idx,
                    "kind": step.kind,
                    "payload": _step_payload_json(step),
                },
                ensure_ascii=False,
            )
        )
    return lines


def write_traces(path: str | Path, sessions: list[Session]) -> None:
    with Path(path).open("w", encoding="utf-8") as handle:
        for session in sessions:
            for line in session_lines(session):
                handle.write(line + "\n")


def _step_from_record(record: dict) -> TraceStep:
    kind = record["kind"]
    payload = record["payload"]
    if kind == "ACTION":
        return TraceStep(kind=kind, payload=ToolCall(tool=payload["tool"], args=payload["args"]))
    if kind == "OBSERVATION":
        return TraceStep(
            kind=kind,
            payload=Observation(
                records=tuple(payload.get("records", [])),
                truncated=payload.get("truncated", False),
                reason=payload.get("reason"),
            ),
        )
    return TraceStep(kind=kind, payload=payload)


def read_traces(path: str | Path) -> list[Session]:
    sessions: list[Session] = []
    current: Session | None = None
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        record = json.loads(line)
        if record["kind"] == "SESSION":
            payload = record["payload"]
            question = QuestionInstance(
                id=payload["question_id"],
                text=payload["question"],
                anchor_clue="",
                target_clue="",
                answer=payload["answer"],
                path=GraphPath.parse(payload["graph_path"]),
                split=payload.get("split", "train"),
            )
            current = Session(
                question=question,
                budget=payload.get("budget", DEFAULT_BUDGET),
                turns_used=payload.get("turns_used", 0),
                status=payload.get("status", "running"),
                interventions_used=payload.get("interventions", 0),
                tags=list(payload.get("tags", [])),
            )
            sessions.append(current)
        else:
            if current is None:
                raise ValueError("step record before any session header")
            current.steps.append(_step_from_record(record))
    return sessions
