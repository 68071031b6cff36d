"""Text normalization, tokenization, and overlap scoring shared across the toolkit."""

from __future__ import annotations

import re
import unicodedata

# Function words ignored when comparing descriptor content.
STOPWORDS = frozenset(
    """a an the of in on at to for with and or is are was were be been by from as
    its it this that these those their his her during where which who whose while
    then than also into over under made make makes other such own same so very
    can will just""".split()
)

_WORD_RE = re.compile(r"[a-z0-9]+")
_ARTICLE_RE = re.compile(r"^(?:the|a|an)\s+", re.IGNORECASE)


def fold_diacritics(text: str) -> str:
    """Fold accented characters to their ASCII base form."""
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


def fold_text(text: str) -> str:
    """Casefold, strip diacritics, and collapse whitespace."""
    return " ".join(fold_diacritics(text).casefold().split())


def stem(word: str) -> str:
    """Light suffix stripper (Porter-style, deliberately small).

    Only common inflectional endings are removed; the goal is stable overlap
    scoring, not linguistic correctness.
    """
    w = word
    if len(w) > 4 and w.endswith("ies"):
        w = w[:-3] + "y"
    elif len(w) > 4 and w.endswith("sses"):
        w = w[:-2]
    elif len(w) > 3 and w.endswith("s") and not w.endswith("ss"):
        w = w[:-1]
    if len(w) > 5 and w.endswith("ing"):
        w = w[:-3]
    elif len(w) > 4 and w.endswith("ed"):
        w = w[:-2]
    elif len(w) > 4 and w.endswith("ly"):
        w = w[:-2]
    return w


def content_stems(text: str) -> frozenset[str]:
    """Stemmed content tokens of ``text``: folded, stopwords removed."""
    folded = fold_text(text)
    return frozenset(stem(t) for t in _WORD_RE.findall(folded) if t not in STOPWORDS)


def jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    """Jaccard overlap of two token sets; empty-vs-empty scores 0."""
    if not a or not b:
        return 0.0
    return len(a & b) / len(a | b)


def overlap_score(text_a: str, text_b: str) -> float:
    """Jaccard overlap of the stemmed content tokens of two texts."""
    return jaccard(content_stems(text_a), content_stems(text_b))


def normalize_answer(text: str) -> str:
    """Canonicalize an answer string for exact-match comparison.

    Case/diacritic fold, trim, collapse whitespace, strip surrounding
    punctuation and a single leading article. Idempotent.
    """
    out = fold_text(text)
    out = out.strip(" \t\"'.,;:!?()[]")
    out = _ARTICLE_RE.sub("", out)
    out = out.strip(" \t\"'.,;:!?()[]")
    return " ".join(out.split())


def contains_phrase(haystack: str, phrase: str) -> bool:
    """Whole-phrase containment under fold_text normalization."""
    folded_hay = fold_text(haystack)
    folded_phrase = fold_text(phrase)
    if not folded_phrase:
        return False
    pattern = r"(?<![a-z0-9])" + re.escape(folded_phrase) + r"(?![a-z0-9])"
    return re.search(pattern, folded_hay) is not None
