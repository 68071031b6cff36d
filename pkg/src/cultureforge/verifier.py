"""Mid-step symbolic oracle: vets proposed actions against the gold path.

The verifier exists only at synthesis time; it sees the ground-truth path and
vetoes retrievals that drift off the bridge state or the answer category,
injecting a corrective step instead of executing the call. Never wire it into
an evaluation harness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .environment import (
    CATEGORY_LABEL,
    Session,
    ToolCall,
    TraceStep,
    _region_by_name,
    map_target_type,
)
from .graph import CultureGraph
from .ingest import EmptyAfterNormalization, normalize_slug
from .qgen import GraphPath
from .text import fold_text, overlap_score

MESSAGE_TEMPLATE_VERSION = "1"

DEFAULT_CHECKS = frozenset({"bridge_state", "target_category"})
ALL_CHECKS = frozenset({"bridge_state", "target_category", "anchor_grounding"})

# Each template ends by restating the corrected constraint.
_MESSAGES = {
    "bridge_state": (
        'the action queried state "{observed}", but the anchor artifact is '
        'linked to "{expected}". Continue retrieval restricted to "{expected}".'
    ),
    "target_category": (
        'the action searched "{observed}" candidates, but the answer category '
        'for this question is "{expected}". Continue the search within "{expected}".'
    ),
    "anchor_grounding": (
        'the call grounds "{observed}", which is unrelated to the question\'s '
        'anchor entity "{expected}". Ground "{expected}" first.'
    ),
}


@dataclass(frozen=True, slots=True)
class VerifierConfig:
    enabled: bool = True
    checks: frozenset[str] = DEFAULT_CHECKS
    intervention_limit: int = 2

    def __post_init__(self) -> None:
        if self.intervention_limit < 0:
            raise ValueError("intervention_limit must be >= 0")
        unknown = self.checks - ALL_CHECKS
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")


@dataclass(frozen=True, slots=True)
class Intervention:
    violated_check: str
    expected: str
    observed: str
    message: str = ""

    def __post_init__(self) -> None:
        if self.expected == self.observed:
            raise ValueError("intervention requires expected != observed")
        if not self.message:
            object.__setattr__(
                self,
                "message",
                _MESSAGES[self.violated_check].format(
                    expected=self.expected, observed=self.observed
                ),
            )

    def payload(self) -> dict:
        return {
            "violated_check": self.violated_check,
            "expected": self.expected,
            "observed": self.observed,
            "message": self.message,
        }


def vet_action(
    config: VerifierConfig,
    graph: CultureGraph,
    path: GraphPath,
    call: ToolCall,
    anchor_grounded: bool = False,
) -> Intervention | None:
    """Check one proposed action; ``None`` admits it."""
    if not config.enabled:
        return None
    if call.tool == "get_artifacts_in_state":
        if "bridge_state" in config.checks:
            region = _region_by_name(graph, call.args["state"])
            if region is None or region.ref != path.bridge:
                return Intervention(
                    violated_check="bridge_state",
                    expected=graph.regions[path.bridge].display_name,
                    observed=call.args["state"],
                )
        if "target_category" in config.checks:
            category = map_target_type(call.args["target_type"])
            if category != path.target.category:
                return Intervention(
                    violated_check="target_category",
                    expected=CATEGORY_LABEL[path.target.category],
                    observed=call.args["target_type"],
                )
        return None
    if "anchor_grounding" in config.checks and not anchor_grounded:
        anchor = graph.artifacts[path.anchor]
        if call.tool == "lookup_entity_by_name":
            observed = call.args["name"]
            if not _names_match(observed, anchor.display_name):
                return Intervention(
                    violated_check="anchor_grounding",
                    expected=anchor.display_name,
                    observed=observed,
                )
        else:
            observed = call.args["description"]
            if overlap_score(observed, anchor.descriptor) < 0.6:
                return Intervention(
                    violated_check="anchor_grounding",
                    expected=anchor.display_name,
                    observed=observed,
                )
    return None


def _names_match(given: str, expected: str) -> bool:
    if fold_text(given) == fold_text(expected):
        return True
    try:
        return normalize_slug(given) == normalize_slug(expected)
    except EmptyAfterNormalization:
        return False


def inject(session: Session, intervention: Intervention) -> Session:
    """Append the corrective step; the vetoed action is never executed."""
    session.steps.append(TraceStep(kind="ORACLE_INTERVENTION", payload=intervention.payload()))
    session.interventions_used += 1
    return session
