"""Quantity detection in free text and the semi-automated corpus
annotation pipeline.

All spans are UTF-8 byte offsets into the sentence (and always fall on
character boundaries).  The pipeline has three stages:

1. rule annotation: regex value extraction plus unit linking on the
   text window following each value;
2. masked-prediction filtering: each quantity span is replaced by
   ``[MASK]`` and an oracle predicts the missing token; the mention is
   kept iff the prediction is numeric or itself links to a unit;
3. manual review: every filter decision is written to a tab-separated
   review file whose edited verdicts can be re-applied.
"""

from __future__ import annotations

import json
import math
import re
import subprocess
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Protocol, Sequence

from .embeddings import EmbeddingProvider
from .kb import KnowledgeBase
from .linking import DEFAULT_THRESHOLD, Mention, link
from .util import byte_replace, byte_slice, char_to_byte_offsets

MASK_TOKEN = "[MASK]"

#: Unit mentions end within this many characters / tokens after a value.
#: Covers compound units like "dyn/cm" and "gill/h" without runaway
#: matches.
UNIT_WINDOW_CHARS = 12
UNIT_WINDOW_TOKENS = 4

# Optional sign (only when not glued to a word character), ASCII digits
# with optional thousand separators, optional fraction, optional
# scientific exponent, optional trailing percent.
NUMBER_RE = re.compile(
    r"""
    (?:(?<![0-9A-Za-z.,])[+-])?
    (?:\d{1,3}(?:,\d{3})+|\d+)
    (?:\.\d+)?
    (?:[eE][+-]?\d+)?
    %?
    """,
    re.VERBOSE,
)

# Characters a unit surface may contain (beyond letters): solidus for
# ratio units, degree and middle-dot marks, superscripts, percent.
_UNIT_EXTRA = set("/·°^²³μµ% ")


@dataclass(frozen=True)
class QuantityMention:
    """A located value (+ optional unit) span in one sentence."""

    value_span: tuple[int, int]
    unit_span: tuple[int, int] | None
    value: float
    unit_surface: str = ""
    linked_unit: str | None = None
    link_score: float = 0.0

    @property
    def quantity_span(self) -> tuple[int, int]:
        """Full span from value start to unit end (value end when bare)."""
        return (self.value_span[0], self.unit_span[1] if self.unit_span else self.value_span[1])


@dataclass(frozen=True)
class AnnotatedSentence:
    text: str
    mentions: tuple[QuantityMention, ...]
    provenance: str = "rule"  # rule | rule+filter | reviewed
    line_no: int = 0


@dataclass(frozen=True)
class ReviewRow:
    """One filter decision, written for manual inspection.

    Verdicts emitted by the pipeline: ``kept:numeric``, ``kept:unit``,
    ``removed``, ``error:oracle``.  Humans may rewrite a verdict to
    ``accept`` or ``reject`` before re-applying.
    """

    line_no: int
    span: tuple[int, int]
    surface: str
    verdict: str


class MaskedFillOracle(Protocol):
    def predict(self, text_with_single_mask_token: str) -> str: ...


class ConstantOracle:
    """Always predicts one fixed token; the shipped stub for offline runs."""

    def __init__(self, prediction: str = "5"):
        self.prediction = prediction

    def predict(self, text_with_single_mask_token: str) -> str:
        return self.prediction


class TableOracle:
    """Lookup-table oracle for tests; unknown inputs fall back to a default."""

    def __init__(self, table: dict[str, str], default: str = "5"):
        self.table = dict(table)
        self.default = default

    def predict(self, text_with_single_mask_token: str) -> str:
        return self.table.get(text_with_single_mask_token, self.default)


class CommandOracle:
    """Adapter for an external predictor: the masked sentence is written
    to the command's stdin, the prediction read from its stdout."""

    def __init__(self, argv: Sequence[str], timeout: float = 30.0):
        self.argv = list(argv)
        self.timeout = timeout

    def predict(self, text_with_single_mask_token: str) -> str:
        proc = subprocess.run(
            self.argv,
            input=text_with_single_mask_token.encode("utf-8"),
            stdout=subprocess.PIPE,
            timeout=self.timeout,
            check=True,
        )
        return proc.stdout.decode("utf-8").strip()


def _parse_literal(raw: str) -> float:
    scale = 1.0
    if raw.endswith("%"):
        raw, scale = raw[:-1], 0.01
    return float(raw.replace(",", "")) * scale


def extract_values(text: str) -> list[tuple[tuple[int, int], float]]:
    """Maximal non-overlapping numeric literals, left to right.

    Returns (byte span, parsed value) pairs in ascending offset order;
    literals that overflow to non-finite floats are skipped.
    """
    to_byte = char_to_byte_offsets(text)
    out = []
    for m in NUMBER_RE.finditer(text):
        value = _parse_literal(m.group(0))
        if not math.isfinite(value):
            continue
        out.append(((to_byte[m.start()], to_byte[m.end()]), value))
    return out


def is_numeric_literal(text: str) -> bool:
    """True when the whole (stripped) string is one numeric literal."""
    stripped = text.strip()
    m = NUMBER_RE.fullmatch(stripped)
    return bool(m) and math.isfinite(_parse_literal(stripped))


def _unit_window(text: str, char_start: int) -> tuple[int, str]:
    """Text window following a value where the unit may sit: skips
    leading spaces, stops at the next digit or at punctuation a unit
    cannot contain, bounded in characters and tokens."""
    i = char_start
    while i < len(text) and text[i] == " ":
        i += 1
    chars: list[str] = []
    tokens = 0
    in_word = False
    for ch in text[i:]:
        if len(chars) >= UNIT_WINDOW_CHARS:
            break
        if ch.isdigit() or not (ch.isalpha() or ch in _UNIT_EXTRA):
            break
        if "㐀" <= ch <= "鿿":
            tokens += 1
            in_word = False
        elif ch == " ":
            in_word = False
        else:
            if not in_word:
                tokens += 1
            in_word = True
        if tokens > UNIT_WINDOW_TOKENS:
            break
        chars.append(ch)
    return i, "".join(chars)


def extract_quantities(
    text: str,
    kb: KnowledgeBase,
    emb: EmbeddingProvider,
    threshold: float = DEFAULT_THRESHOLD,
) -> list[QuantityMention]:
    """Rule-stage quantity detection: each extracted value plus the unit
    read off the window that follows it.

    Window prefixes anchored at the value's end are linked with the full
    sentence as context.  The mention boundary is the prefix whose best
    candidate has the highest mention similarity (longer prefix on
    ties), so "dyn/cm" beats "dyn" and "ml" beats "m"; the full
    prior x mention x context product then picks the unit within that
    prefix.  Values whose window yields no link become bare-value
    mentions.
    """
    to_byte = char_to_byte_offsets(text)
    byte_to_char = {b: c for c, b in enumerate(to_byte)}
    mentions = []
    for (vstart, vend), value in extract_values(text):
        win_char_start, window = _unit_window(text, byte_to_char[vend])
        best: tuple[float, int, str, object] | None = None
        for end in range(1, len(window) + 1):
            prefix = window[:end].rstrip()
            if not prefix or (best is not None and prefix == best[2]):
                continue
            ranked = link(kb, Mention(prefix, context=text), emb, threshold)
            if not ranked:
                continue
            similarity = max(c.p_mention for c in ranked)
            key = (similarity, len(prefix))
            if best is None or key > (best[0], best[1]):
                best = (similarity, len(prefix), prefix, ranked[0])
        if best is None:
            mentions.append(QuantityMention((vstart, vend), None, value))
            continue
        _, plen, prefix, top = best
        ustart = to_byte[win_char_start]
        uend = to_byte[win_char_start + plen]
        mentions.append(
            QuantityMention(
                value_span=(vstart, vend),
                unit_span=(ustart, uend),
                value=value,
                unit_surface=prefix,
                linked_unit=top.unit_id,
                link_score=top.score,
            )
        )
    return mentions


def rule_annotate(
    corpus: Iterable[str],
    kb: KnowledgeBase,
    emb: EmbeddingProvider,
    threshold: float = DEFAULT_THRESHOLD,
) -> list[AnnotatedSentence]:
    """Pipeline step 1: keep exactly the sentences containing a numeric
    entity, annotated with their rule-stage mentions."""
    out = []
    for line_no, sentence in enumerate(corpus, start=1):
        sentence = sentence.rstrip("\n")
        if not sentence.strip():
            continue
        mentions = extract_quantities(sentence, kb, emb, threshold)
        if mentions:
            out.append(AnnotatedSentence(sentence, tuple(mentions), "rule", line_no))
    return out


def _mask_quantity(text: str, mention: QuantityMention) -> str:
    start, end = mention.quantity_span
    return byte_replace(text, start, end, MASK_TOKEN)


def annotate_corpus(
    corpus: Iterable[str],
    kb: KnowledgeBase,
    emb: EmbeddingProvider,
    oracle: MaskedFillOracle,
    threshold: float = DEFAULT_THRESHOLD,
) -> tuple[list[AnnotatedSentence], list[ReviewRow]]:
    """Steps 1+2 of the pipeline; step 3 is realized by the returned
    review rows plus :func:`apply_review`.

    A mention survives the filter iff the oracle's prediction for its
    masked sentence is numeric or links into the KB as a unit.  Oracle
    failures are fail-open: the sentence is retained with provenance
    "rule" and flagged for the reviewer.
    """
    annotated: list[AnnotatedSentence] = []
    review: list[ReviewRow] = []
    for sent in rule_annotate(corpus, kb, emb, threshold):
        kept: list[QuantityMention] = []
        failed = False
        for mention in sent.mentions:
            surface = byte_slice(sent.text, *mention.quantity_span)
            try:
                prediction = oracle.predict(_mask_quantity(sent.text, mention))
            except Exception:
                failed = True
                kept.append(mention)
                review.append(ReviewRow(sent.line_no, mention.quantity_span, surface, "error:oracle"))
                continue
            if is_numeric_literal(prediction):
                verdict = "kept:numeric"
            elif prediction.strip() and link(kb, Mention(prediction.strip(), ""), emb, threshold):
                verdict = "kept:unit"
            else:
                verdict = "removed"
            review.append(ReviewRow(sent.line_no, mention.quantity_span, surface, verdict))
            if verdict != "removed":
                kept.append(mention)
        if kept:
            provenance = "rule" if failed else "rule+filter"
            annotated.append(replace(sent, mentions=tuple(kept), provenance=provenance))
    return annotated, review


def apply_review(
    rule_sentences: Sequence[AnnotatedSentence], review: Sequence[ReviewRow]
) -> list[AnnotatedSentence]:
    """Re-ingest an edited review file onto the step-1 annotation.

    ``accept`` (and the kept:* verdicts) keep a mention, ``reject`` and
    ``removed`` drop it; mentions without a row are kept.  Output
    sentences carry provenance "reviewed".
    """
    verdicts = {(r.line_no, r.span): r.verdict for r in review}
    out = []
    for sent in rule_sentences:
        kept = []
        for mention in sent.mentions:
            verdict = verdicts.get((sent.line_no, mention.quantity_span), "accept")
            if verdict in ("removed", "reject"):
                continue
            kept.append(mention)
        if kept:
            out.append(replace(sent, mentions=tuple(kept), provenance="reviewed"))
    return out


# ---------------------------------------------------------------------------
# Serialization


def mention_to_dict(m: QuantityMention) -> dict:
    return {
        "value_span": list(m.value_span),
        "unit_span": list(m.unit_span) if m.unit_span else None,
        "value": m.value,
        "unit_surface": m.unit_surface,
        "linked_unit": m.linked_unit,
        "link_score": m.link_score,
    }


def mention_from_dict(d: dict) -> QuantityMention:
    return QuantityMention(
        value_span=tuple(d["value_span"]),
        unit_span=tuple(d["unit_span"]) if d.get("unit_span") else None,
        value=float(d["value"]),
        unit_surface=d.get("unit_surface", ""),
        linked_unit=d.get("linked_unit"),
        link_score=float(d.get("link_score", 0.0)),
    )


def save_annotated(sentences: Sequence[AnnotatedSentence], path: str | Path) -> None:
    lines = []
    for s in sentences:
        lines.append(
            json.dumps(
                {
                    "line_no": s.line_no,
                    "text": s.text,
                    "provenance": s.provenance,
                    "mentions": [mention_to_dict(m) for m in s.mentions],
                },
                ensure_ascii=False,
            )
        )
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def load_annotated(path: str | Path) -> list[AnnotatedSentence]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        d = json.loads(line)
        out.append(
            AnnotatedSentence(
                text=d["text"],
                mentions=tuple(mention_from_dict(m) for m in d["mentions"]),
                provenance=d.get("provenance", "rule"),
                line_no=int(d.get("line_no", 0)),
            )
        )
    return out


def save_review(rows: Sequence[ReviewRow], path: str | Path) -> None:
    lines = [f"{r.line_no}\t{r.span[0]}-{r.span[1]}\t{r.surface}\t{r.verdict}" for r in rows]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def load_review(path: str | Path) -> list[ReviewRow]:
    rows = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        line_no, span, surface, verdict = line.split("\t")
        start, end = span.split("-")
        rows.append(ReviewRow(int(line_no), (int(start), int(end)), surface, verdict))
    return rows
