"""Rule-based clue extraction from artifact descriptors, plus specificity vetting.

A clue is the descriptive core of the first descriptor sentence with the
artifact's own name and its region's name excised. The rule set:

1. take the first sentence;
2. when the sentence opens ``[The] <name> is/are/was/were ...``, strip through
   the copula;
3. split on commas and drop every segment that still mentions the artifact
   name or the region name (as whole phrases, case/diacritic-folded);
4. rejoin, trim punctuation, collapse whitespace, and lowercase a leading
   bare article.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .graph import Artifact, CultureGraph
from .text import contains_phrase, content_stems, jaccard

DEFAULT_OVERLAP_THRESHOLD = 0.6

_SENTENCE_END_RE = re.compile(r"[.!?](?:\s|$)")


class CluelessDescriptor(ValueError):
    """No clue text survives stripping; the artifact cannot serve as a target."""


def extract_clue(artifact: Artifact, region_name: str) -> str:
    """Extract a descriptive clue phrase that names neither the artifact nor its region.

    Raises CluelessDescriptor when nothing survives.
    """
    sentence = _first_sentence(artifact.descriptor)
    stripped = _strip_copula_subject(sentence, artifact.display_name)
    segments = [seg.strip() for seg in stripped.split(",")]
    kept = [
        seg
        for seg in segments
        if seg
        and not contains_phrase(seg, artifact.display_name)
        and not contains_phrase(seg, region_name)
    ]
    clue = ", ".join(kept).strip(" .;:")
    clue = " ".join(clue.split())
    clue = _lower_leading_article(clue)
    if not clue:
        raise CluelessDescriptor(f"no clue survives stripping for {artifact.ref}")
    return clue


def _first_sentence(text: str) -> str:
    match = _SENTENCE_END_RE.search(text)
    if match:
        return text[: match.start()].strip()
    return text.strip()


def _strip_copula_subject(sentence: str, display_name: str) -> str:
    pattern = re.compile(
        r"^\s*(?:the\s+)?" + re.escape(display_name) + r"\s+(?:is|are|was|were)\s+(.*)$",
        re.IGNORECASE,
    )
    match = pattern.match(sentence)
    if match:
        return match.group(1)
    return sentence


def _lower_leading_article(clue: str) -> str:
    first, _, rest = clue.partition(" ")
    if first in ("The", "A", "An"):
        return first.lower() + (" " + rest if rest else "")
    return clue


@dataclass(frozen=True, slots=True)
class ClueCheck:
    passed: bool
    reason: str  # "ok" | "degenerate" | "too_specific"
    matched_others: int = 0


def check_nonspecificity(
    graph: CultureGraph,
    clue: str,
    target: Artifact,
    threshold: float = DEFAULT_OVERLAP_THRESHOLD,
) -> ClueCheck:
    """Fail a clue that pins its target without the state bridge.

    Scanning all artifacts of the target's category across all regions, a clue
    fails when it matches only the target (too specific: the bridge is not
    needed) and also when it matches nothing at all, the target included
    (degenerate over-stripping). Matching is Jaccard overlap of stemmed
    content tokens against the descriptor, at ``threshold``.
    """
    clue_stems = content_stems(clue)
    if jaccard(clue_stems, content_stems(target.descriptor)) < threshold:
        return ClueCheck(passed=False, reason="degenerate")
    matched_others = sum(
        1
        for other in graph.in_category(target.category)
        if other.ref != target.ref
        and jaccard(clue_stems, content_stems(other.descriptor)) >= threshold
    )
    if matched_others == 0:
        return ClueCheck(passed=False, reason="too_specific")
    return ClueCheck(passed=True, reason="ok", matched_others=matched_others)
