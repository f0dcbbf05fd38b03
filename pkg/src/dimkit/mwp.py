"""Quantity-oriented augmentation of math word problems.

Four methods, two per direction:

* context_format: swap a body unit's surface for another surface form
  of the same unit; nothing else changes.
* context_dimension: swap a body unit for a same-dimension unit and
  rescale the value so the physical magnitude (and hence the answer) is
  unchanged; equation literals are rewritten to keep evaluating to the
  answer.
* question_format: swap the question unit's surface form; answer
  unchanged.
* question_dimension: swap the question unit for a same-dimension unit;
  the answer and equation are rescaled by the conversion factor.

Problems are JSON-Lines records {id, body, question, equation, answer,
answer_unit?}; spans are UTF-8 byte offsets over body + question
concatenated.  Equations use digits, '.', and the operator set
+ - * / % = ( ) where '%' is postfix percent.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Sequence

from .embeddings import EmbeddingProvider, TrigramHashEmbedding
from .errors import AugmentationError, EquationError
from .kb import KnowledgeBase, conversion_factor, units_of_dimension
from .linking import DEFAULT_THRESHOLD, Mention, link
from .quantity_text import QuantityMention, extract_quantities
from .util import byte_length, byte_replace, byte_slice, format_plain, normalize_surface

AUGMENT_METHODS = (
    "context_format",
    "context_dimension",
    "question_format",
    "question_dimension",
)

#: context_dimension rejects rewritten values outside this band so
#: augmented problems stay human-plausible.
VALUE_MAX, VALUE_MIN = 1e9, 1e-6

_OPERATORS = set("+-*/%=()")


# ---------------------------------------------------------------------------
# Equations


def tokenize_equation(equation: str) -> list[str]:
    """One token per digit, per '.', and per operator; whitespace is
    discarded.  Joining the tokens reproduces the input sans whitespace.
    """
    tokens = []
    for offset, ch in enumerate(equation):
        if ch.isspace():
            continue
        if (ch.isascii() and ch.isdigit()) or ch == "." or ch in _OPERATORS:
            tokens.append(ch)
        else:
            raise EquationError(f"illegal character {ch!r} in equation", offset)
    return tokens


def evaluate_equation(equation: str) -> float:
    """Evaluate with standard precedence (* / over + -), parentheses,
    and '%' as postfix percent.  If '=' is present only the segment
    after the last '=' is evaluated."""
    tokens = tokenize_equation(equation)
    if "=" in tokens:
        tokens = tokens[len(tokens) - tokens[::-1].index("="):]
    if not tokens:
        raise EquationError("empty equation")
    pos = 0

    def peek() -> str | None:
        return tokens[pos] if pos < len(tokens) else None

    def take() -> str:
        nonlocal pos
        pos += 1
        return tokens[pos - 1]

    def parse_number() -> float:
        nonlocal pos
        start = pos
        while peek() is not None and (peek().isdigit() or peek() == "."):
            pos += 1
        literal = "".join(tokens[start:pos])
        if not literal or literal.count(".") > 1 or literal in (".",):
            raise EquationError(f"bad numeric literal {literal!r} at token {start}")
        return float(literal)

    def parse_factor() -> float:
        sign = 1.0
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
        if peek() == "(":
            take()
            value = parse_expr()
            if peek() != ")":
                raise EquationError("missing closing parenthesis")
            take()
        else:
            if peek() is None or not (peek().isdigit() or peek() == "."):
                raise EquationError(f"expected number or '(' at token {pos}")
            value = parse_number()
        while peek() == "%":
            take()
            value /= 100.0
        return sign * value

    def parse_term() -> float:
        value = parse_factor()
        while peek() in ("*", "/"):
            if take() == "*":
                value *= parse_factor()
            else:
                divisor = parse_factor()
                if divisor == 0.0:
                    raise EquationError("division by zero")
                value /= divisor
        return value

    def parse_expr() -> float:
        value = parse_term()
        while peek() in ("+", "-"):
            value = value + parse_term() if take() == "+" else value - parse_term()
        return value

    result = parse_expr()
    if pos != len(tokens):
        raise EquationError(f"unexpected token {tokens[pos]!r} at {pos}")
    return result


# ---------------------------------------------------------------------------
# Problems


@dataclass(frozen=True)
class MwpProblem:
    id: str
    body: str
    question: str
    equation: str
    answer: float
    answer_unit: str | None = None
    mentions: tuple[QuantityMention, ...] = ()

    @property
    def text(self) -> str:
        return self.body + self.question

    def check(self) -> None:
        value = evaluate_equation(self.equation)
        tolerance = 1e-9 * max(1.0, abs(self.answer))
        if abs(value - self.answer) > tolerance:
            raise EquationError(
                f"problem {self.id}: equation evaluates to {value}, answer is {self.answer}"
            )


@dataclass(frozen=True)
class AugmentationRecord:
    problem_id: str
    method: str
    original_unit: str
    new_unit: str
    scale: float
    answer_before: float
    answer_after: float


@dataclass(frozen=True)
class AugmentationFailure:
    problem_id: str
    method: str
    reason: str


def annotate_problem(
    p: MwpProblem,
    kb: KnowledgeBase,
    emb: EmbeddingProvider,
    threshold: float = DEFAULT_THRESHOLD,
) -> MwpProblem:
    """Fill the mention list by running extraction over body+question."""
    return replace(p, mentions=tuple(extract_quantities(p.text, kb, emb, threshold)))


@dataclass(frozen=True)
class UnitMention:
    """A standalone unit surface in text (no numeric value attached)."""

    span: tuple[int, int]
    surface: str
    unit_id: str


def find_unit_mentions(
    text: str,
    kb: KnowledgeBase,
    emb: EmbeddingProvider,
    threshold: float = DEFAULT_THRESHOLD,
    max_len: int = 24,
) -> list[UnitMention]:
    """Exact-surface scan for unit mentions not anchored to a value,
    e.g. the asked unit in "多少千克？".  Longest match wins at each
    position; ambiguity between exact matches resolves through
    context-aware linking."""
    out = []
    chars = list(text)
    byte_pos = 0
    i = 0
    while i < len(chars):
        hit = None
        for length in range(min(max_len, len(chars) - i), 0, -1):
            candidate = "".join(chars[i : i + length])
            if candidate != candidate.strip():
                continue
            exact = kb.surface_index.get(normalize_surface(candidate))
            if not exact:
                continue
            if candidate[0].isascii() and candidate[0].isalnum() and i > 0:
                prev = chars[i - 1]
                if prev.isascii() and prev.isalnum():
                    continue
            j = i + length
            if candidate[-1].isascii() and candidate[-1].isalnum() and j < len(chars):
                nxt = chars[j]
                if nxt.isascii() and nxt.isalnum():
                    continue
            hit = (length, candidate, exact)
            break
        if hit is None:
            byte_pos += byte_length(chars[i])
            i += 1
            continue
        length, candidate, exact = hit
        ranked = link(kb, Mention(candidate, context=text), emb, threshold)
        unit_id = next((c.unit_id for c in ranked if c.unit_id in exact), exact[0])
        end = byte_pos + byte_length(candidate)
        out.append(UnitMention((byte_pos, end), candidate, unit_id))
        byte_pos = end
        i += length
    return out


def _ensure_mentions(p, kb, emb, threshold) -> MwpProblem:
    return p if p.mentions else annotate_problem(p, kb, emb, threshold)


def _alternative_forms(kb, unit_id: str, current_surface: str) -> list[str]:
    record = kb.unit(unit_id)
    seen = set()
    forms = []
    for form in record.surface_forms():
        norm = normalize_surface(form)
        if norm == normalize_surface(current_surface) or norm in seen:
            continue
        seen.add(norm)
        forms.append(form)
    return forms


def _display_form(kb, unit_id: str, like_surface: str) -> str:
    """Label in the same script family as the surface being replaced."""
    record = kb.unit(unit_id)
    cjk = any("㐀" <= ch <= "鿿" for ch in like_surface)
    if cjk and record.label_zh:
        return record.label_zh
    return record.label_en or record.unit_id


def _insert(text: str, start: int, end: int, replacement: str) -> str:
    """byte_replace plus a separating space when a digit would end up
    glued to an ASCII-lettered unit form."""
    before = text.encode("utf-8")[:start].decode("utf-8")
    if before and before[-1].isascii() and before[-1].isdigit():
        if replacement and replacement[0].isascii() and replacement[0].isalnum():
            replacement = " " + replacement
    return byte_replace(text, start, end, replacement)


_EQ_LITERAL_RE = re.compile(r"\d+(?:\.\d+)?")


def _rewrite_literals(equation: str, old_value: float, replacement: str) -> str:
    """Replace every equation literal numerically equal to old_value.

    Signs and '%' are equation operators, not part of the literal; the
    replacement expression evaluates to the literal's value, so a
    following '%' keeps its meaning.
    """
    out = []
    last = 0
    changed = False
    for m in _EQ_LITERAL_RE.finditer(equation):
        if float(m.group(0)) == old_value:
            out.append(equation[last : m.start()])
            out.append(replacement)
            last = m.end()
            changed = True
    if not changed:
        raise AugmentationError(
            f"value {old_value} has no matching literal in equation {equation!r}"
        )
    out.append(equation[last:])
    return "".join(out)


def _linked_body_mentions(p: MwpProblem) -> list[QuantityMention]:
    body_len = byte_length(p.body)
    return [
        m
        for m in p.mentions
        if m.linked_unit is not None and m.unit_span is not None and m.unit_span[1] <= body_len
    ]


def augment_context_format(
    p: MwpProblem,
    kb: KnowledgeBase,
    rng: random.Random,
    emb: EmbeddingProvider | None = None,
    threshold: float = DEFAULT_THRESHOLD,
) -> tuple[MwpProblem, AugmentationRecord]:
    """Swap a body unit surface for an equivalent alternative format."""
    emb = emb or TrigramHashEmbedding()
    p = _ensure_mentions(p, kb, emb, threshold)
    mentions = _linked_body_mentions(p)
    if not mentions:
        raise AugmentationError(f"problem {p.id}: no linked unit mention in body")
    mention = mentions[rng.randrange(len(mentions))]
    forms = _alternative_forms(kb, mention.linked_unit, mention.unit_surface)
    if not forms:
        raise AugmentationError(
            f"problem {p.id}: unit {mention.linked_unit} has a single surface form"
        )
    new_form = forms[rng.randrange(len(forms))]
    new_body = _insert(p.body, *mention.unit_span, new_form)
    augmented = replace(p, body=new_body, mentions=())
    augmented.check()
    augmented = annotate_problem(augmented, kb, emb, threshold)
    record = AugmentationRecord(
        problem_id=p.id,
        method="context_format",
        original_unit=mention.linked_unit,
        new_unit=mention.linked_unit,
        scale=1.0,
        answer_before=p.answer,
        answer_after=augmented.answer,
    )
    return augmented, record


def augment_context_dimension(
    p: MwpProblem,
    kb: KnowledgeBase,
    rng: random.Random,
    emb: EmbeddingProvider | None = None,
    threshold: float = DEFAULT_THRESHOLD,
    target_unit: str | None = None,
) -> tuple[MwpProblem, AugmentationRecord]:
    """Swap a body unit for a same-dimension unit, rescaling the value
    to keep the physical magnitude (and the answer) unchanged.

    target_unit restricts the substitution to one new unit (controlled
    augmentation); by default the rng picks among all plausible ones.
    """
    emb = emb or TrigramHashEmbedding()
    p = _ensure_mentions(p, kb, emb, threshold)
    candidates: list[tuple[QuantityMention, str, float]] = []
    for mention in _linked_body_mentions(p):
        old = kb.unit(mention.linked_unit)
        if old.affine_offset != 0.0:
            continue
        for alt in sorted(units_of_dimension(kb, old.dimension)):
            if alt == mention.linked_unit or kb.unit(alt).affine_offset != 0.0:
                continue
            if target_unit is not None and alt != target_unit:
                continue
            beta = conversion_factor(kb, mention.linked_unit, alt)
            new_value = mention.value * beta
            if not (VALUE_MIN <= abs(new_value) <= VALUE_MAX):
                continue
            candidates.append((mention, alt, beta))
    if not candidates:
        raise AugmentationError(f"problem {p.id}: no plausible same-dimension substitution")
    mention, alt, beta = candidates[rng.randrange(len(candidates))]
    new_value = mention.value * beta
    new_surface = _display_form(kb, alt, mention.unit_surface)
    gap = byte_slice(p.body, mention.value_span[1], mention.unit_span[0])
    if not gap and new_surface and new_surface[0].isascii() and new_surface[0].isalnum():
        gap = " "
    quantity_text = f"{format_plain(new_value)}{gap}{new_surface}"
    new_body = _insert(p.body, mention.value_span[0], mention.unit_span[1], quantity_text)
    # The literal keeps evaluating to the old value: new/beta == old.
    if beta >= 1.0:
        rewrite = f"({format_plain(new_value)}/{format_plain(beta)})"
    else:
        rewrite = f"({format_plain(new_value)}*{format_plain(1.0 / beta)})"
    new_equation = _rewrite_literals(p.equation, mention.value, rewrite)
    augmented = replace(p, body=new_body, equation=new_equation, mentions=())
    augmented.check()
    augmented = annotate_problem(augmented, kb, emb, threshold)
    record = AugmentationRecord(
        problem_id=p.id,
        method="context_dimension",
        original_unit=mention.linked_unit,
        new_unit=alt,
        scale=beta,
        answer_before=p.answer,
        answer_after=augmented.answer,
    )
    return augmented, record


def _question_unit(p, kb, emb, threshold) -> UnitMention:
    found = find_unit_mentions(p.question, kb, emb, threshold)
    if not found:
        raise AugmentationError(f"problem {p.id}: question contains no linked unit mention")
    return found[-1]  # the asked unit is the one nearest the question mark


def augment_question_format(
    p: MwpProblem,
    kb: KnowledgeBase,
    rng: random.Random,
    emb: EmbeddingProvider | None = None,
    threshold: float = DEFAULT_THRESHOLD,
) -> tuple[MwpProblem, AugmentationRecord]:
    """Swap the question unit's surface for an alternative format."""
    emb = emb or TrigramHashEmbedding()
    p = _ensure_mentions(p, kb, emb, threshold)
    unit_mention = _question_unit(p, kb, emb, threshold)
    forms = _alternative_forms(kb, unit_mention.unit_id, unit_mention.surface)
    if not forms:
        raise AugmentationError(
            f"problem {p.id}: unit {unit_mention.unit_id} has a single surface form"
        )
    new_form = forms[rng.randrange(len(forms))]
    new_question = _insert(p.question, *unit_mention.span, new_form)
    augmented = replace(p, question=new_question, mentions=())
    augmented.check()
    augmented = annotate_problem(augmented, kb, emb, threshold)
    record = AugmentationRecord(
        problem_id=p.id,
        method="question_format",
        original_unit=unit_mention.unit_id,
        new_unit=unit_mention.unit_id,
        scale=1.0,
        answer_before=p.answer,
        answer_after=augmented.answer,
    )
    return augmented, record


def augment_question_dimension(
    p: MwpProblem,
    kb: KnowledgeBase,
    rng: random.Random,
    emb: EmbeddingProvider | None = None,
    threshold: float = DEFAULT_THRESHOLD,
    target_unit: str | None = None,
) -> tuple[MwpProblem, AugmentationRecord]:
    """Swap the question unit for a same-dimension unit; the answer is
    rescaled by the conversion factor and the equation wrapped so it
    evaluates to the new answer."""
    emb = emb or TrigramHashEmbedding()
    p = _ensure_mentions(p, kb, emb, threshold)
    unit_mention = _question_unit(p, kb, emb, threshold)
    old = kb.unit(unit_mention.unit_id)
    if old.affine_offset != 0.0:
        raise AugmentationError(f"problem {p.id}: affine answer unit unsupported")
    alts = [
        u
        for u in sorted(units_of_dimension(kb, old.dimension))
        if u != unit_mention.unit_id and kb.unit(u).affine_offset == 0.0
        and (target_unit is None or u == target_unit)
    ]
    if not alts:
        raise AugmentationError(f"problem {p.id}: no same-dimension alternative for question unit")
    alt = alts[rng.randrange(len(alts))]
    beta = conversion_factor(kb, unit_mention.unit_id, alt)
    new_question = _insert(p.question, *unit_mention.span, _display_form(kb, alt, unit_mention.surface))
    if "=" in p.equation:
        head, _, tail = p.equation.rpartition("=")
        new_equation = f"{head}=({tail})*{format_plain(beta)}"
    else:
        new_equation = f"({p.equation})*{format_plain(beta)}"
    augmented = replace(
        p,
        question=new_question,
        equation=new_equation,
        answer=p.answer * beta,
        answer_unit=alt,
        mentions=(),
    )
    augmented.check()
    augmented = annotate_problem(augmented, kb, emb, threshold)
    record = AugmentationRecord(
        problem_id=p.id,
        method="question_dimension",
        original_unit=unit_mention.unit_id,
        new_unit=alt,
        scale=beta,
        answer_before=p.answer,
        answer_after=augmented.answer,
    )
    return augmented, record


_METHOD_FUNCS: dict[str, Callable] = {
    "context_format": augment_context_format,
    "context_dimension": augment_context_dimension,
    "question_format": augment_question_format,
    "question_dimension": augment_question_dimension,
}


def augment_dataset(
    problems: Sequence[MwpProblem],
    kb: KnowledgeBase,
    rng: random.Random,
    eta: float,
    method_mix: dict[str, float] | None = None,
    emb: EmbeddingProvider | None = None,
    threshold: float = DEFAULT_THRESHOLD,
    append: bool = False,
) -> tuple[list[MwpProblem], list[AugmentationRecord], list[AugmentationFailure]]:
    """Augment each problem independently with probability eta.

    A method is drawn from method_mix; on failure the problem passes
    through unchanged and the failure is recorded.  Output size equals
    the input size (in-place policy) or twice it (append policy).  Each
    problem gets a derived sub-seed, so the selection set is
    deterministic for a fixed master RNG state.
    """
    if not (0.0 <= eta <= 1.0):
        raise ValueError(f"eta must lie in [0, 1], got {eta}")
    emb = emb or TrigramHashEmbedding()
    mix = method_mix or {name: 1.0 for name in AUGMENT_METHODS}
    unknown = set(mix) - set(AUGMENT_METHODS)
    if unknown:
        raise ValueError(f"unknown augmentation methods: {sorted(unknown)}")
    names = sorted(mix)
    weights = [mix[name] for name in names]

    seeds = [rng.getrandbits(32) for _ in problems]
    out: list[MwpProblem] = []
    records: list[AugmentationRecord] = []
    failures: list[AugmentationFailure] = []
    for p, seed in zip(problems, seeds):
        prng = random.Random(seed)
        result = p
        if prng.random() < eta:
            method = prng.choices(names, weights=weights, k=1)[0]
            try:
                result, record = _METHOD_FUNCS[method](p, kb, prng, emb, threshold)
                records.append(record)
            except AugmentationError as exc:
                failures.append(AugmentationFailure(p.id, method, str(exc)))
                result = p
        out.append(result)
    if append:
        return [*problems, *out], records, failures
    return out, records, failures


# ---------------------------------------------------------------------------
# Serialization


def load_problems(path: str | Path, check: bool = True) -> list[MwpProblem]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        d = json.loads(line)
        p = MwpProblem(
            id=str(d["id"]),
            body=d["body"],
            question=d["question"],
            equation=d["equation"],
            answer=float(d["answer"]),
            answer_unit=d.get("answer_unit"),
        )
        if check:
            p.check()
        out.append(p)
    return out


def save_problems(problems: Sequence[MwpProblem], path: str | Path) -> None:
    lines = []
    for p in problems:
        d = {
            "id": p.id,
            "body": p.body,
            "question": p.question,
            "equation": p.equation,
            "answer": p.answer,
        }
        if p.answer_unit is not None:
            d["answer_unit"] = p.answer_unit
        lines.append(json.dumps(d, ensure_ascii=False))
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def save_records(records: Sequence[AugmentationRecord], path: str | Path) -> None:
    lines = [
        json.dumps(
            {
                "problem_id": r.problem_id,
                "method": r.method,
                "original_unit": r.original_unit,
                "new_unit": r.new_unit,
                "scale": r.scale,
                "answer_before": r.answer_before,
                "answer_after": r.answer_after,
            },
            ensure_ascii=False,
        )
        for r in records
    ]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
