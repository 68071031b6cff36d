"""Per-category rendering table for questions and chain-of-thought rationales.

One entry per artifact category: the noun phrase and verb used when the
category is the question target, the intro noun and verb used when it is the
anchor reference, and the relation phrase plus short noun used in rationale
steps. The cuisine/tourism/festivals/costume rows anchor the whole table; the
rest extrapolate in the same voice.
"""

from __future__ import annotations

from dataclasses import dataclass

TEMPLATE_VERSION = "1"


@dataclass(frozen=True, slots=True)
class CategoryStyle:
    question_noun: str
    question_verb: str
    anchor_intro: str | None
    anchor_verb: str
    cot_relation: str
    cot_noun: str


CATEGORY_STYLE: dict[str, CategoryStyle] = {
    "history": CategoryStyle(
        question_noun="historical event",
        question_verb="took place",
        anchor_intro="historical event",
        anchor_verb="took place",
        cot_relation="took place in",
        cot_noun="historical event",
    ),
    "tourism": CategoryStyle(
        question_noun="sacred ghat",
        question_verb="is situated",
        anchor_intro="site",
        anchor_verb="is located",
        cot_relation="is in",
        cot_noun="ghat",
    ),
    "cuisine": CategoryStyle(
        question_noun="dish",
        question_verb="originated",
        anchor_intro="dish",
        anchor_verb="is prepared",
        cot_relation="originated in",
        cot_noun="dish",
    ),
    "costume": CategoryStyle(
        question_noun="garment",
        question_verb="is worn",
        anchor_intro=None,
        anchor_verb="is worn",
        cot_relation="is worn in",
        cot_noun="garment",
    ),
    "language": CategoryStyle(
        question_noun="language",
        question_verb="is spoken",
        anchor_intro="language",
        anchor_verb="is spoken",
        cot_relation="is spoken in",
        cot_noun="language",
    ),
    "art": CategoryStyle(
        question_noun="art form",
        question_verb="is practised",
        anchor_intro="art piece",
        anchor_verb="was crafted",
        cot_relation="is practised in",
        cot_noun="art form",
    ),
    "festivals": CategoryStyle(
        question_noun="festival",
        question_verb="is celebrated",
        anchor_intro="festival",
        anchor_verb="is celebrated",
        cot_relation="is celebrated in",
        cot_noun="festival",
    ),
    "religion": CategoryStyle(
        question_noun="religious tradition",
        question_verb="is observed",
        anchor_intro="religious tradition",
        anchor_verb="is observed",
        cot_relation="is observed in",
        cot_noun="religious tradition",
    ),
    "medicine": CategoryStyle(
        question_noun="traditional remedy",
        question_verb="is practised",
        anchor_intro="remedy",
        anchor_verb="is practised",
        cot_relation="is practised in",
        cot_noun="remedy",
    ),
    "transport": CategoryStyle(
        question_noun="mode of transport",
        question_verb="operates",
        anchor_intro="mode of transport",
        anchor_verb="operates",
        cot_relation="operates in",
        cot_noun="mode of transport",
    ),
    "cities": CategoryStyle(
        question_noun="city",
        question_verb="is located",
        anchor_intro="city of",
        anchor_verb="is located",
        cot_relation="is located in",
        cot_noun="city",
    ),
    "sports": CategoryStyle(
        question_noun="sport",
        question_verb="is played",
        anchor_intro="sport of",
        anchor_verb="is played",
        cot_relation="is played in",
        cot_noun="sport",
    ),
    "personalities": CategoryStyle(
        question_noun="personality",
        question_verb="was born",
        anchor_intro="personality",
        anchor_verb="lived",
        cot_relation="hails from",
        cot_noun="personality",
    ),
}


def render_anchor_reference(category: str, display_name: str, clue: str | None) -> str:
    """Render the trailing anchor reference of a question.

    The category intro noun is prefixed only when the name does not already
    contain it; names that do contain it are quoted instead. The clue, when
    present, rides along as a parenthetical.
    """
    style = CATEGORY_STYLE[category]
    if style.anchor_intro is None:
        head = display_name
    elif style.anchor_intro.split()[0].lower() in display_name.lower().split():
        head = f'"{display_name}"'
    else:
        head = f"{style.anchor_intro} {display_name}"
    if clue:
        return f"the {head} ({clue}) {style.anchor_verb}"
    return f"the {head} {style.anchor_verb}"


def render_question_text(
    target_category: str,
    target_clue: str,
    anchor_category: str,
    anchor_display: str,
    anchor_clue: str | None,
) -> str:
    style = CATEGORY_STYLE[target_category]
    anchor_ref = render_anchor_reference(anchor_category, anchor_display, anchor_clue)
    return (
        f"Which {style.question_noun}, {target_clue}, "
        f"{style.question_verb} in the same state where {anchor_ref}?"
    )


def render_cot_steps(
    anchor_category: str,
    anchor_display: str,
    target_category: str,
    target_display: str,
    state_display: str,
) -> list[str]:
    """The three-step enumerated rationale for a 2-hop path."""
    anchor_style = CATEGORY_STYLE[anchor_category]
    target_style = CATEGORY_STYLE[target_category]
    return [
        f"{anchor_display} {anchor_style.cot_relation} {state_display}.",
        f"{target_display} {target_style.cot_relation} {state_display}.",
        f"Therefore, the {target_style.cot_noun} is {target_display}.",
    ]
