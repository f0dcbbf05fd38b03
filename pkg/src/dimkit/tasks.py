"""Generators for the selection-style benchmark task families.

Every generated instance has exactly one candidate satisfying its task
oracle among m (default 4): guaranteed by construction and re-verified
by :func:`verify_instance` before an instance is returned.  Generation
is seed-deterministic: the caller's RNG yields one sub-seed per
instance, and that sub-seed is recorded on the instance.

Rationales follow the delimited reasoning/answer shape
``<bos> R <sep> A <eos>``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .dimension import DimensionVector, format_symbolic, is_comparable
from .errors import DimensionRangeError, GenerationError
from .kb import KnowledgeBase, conversion_factor, units_of_dimension
from .quantity_text import AnnotatedSentence
from .util import byte_replace, format_number

TASK_TYPES = (
    "kind_match",
    "comparable",
    "dimension_prediction",
    "dimension_arithmetic",
    "magnitude_comparison",
    "unit_conversion",
)

DEFAULT_CANDIDATES = 4
_RESAMPLE_BUDGET = 200


@dataclass(frozen=True)
class TaskInstance:
    id: str
    task_type: str
    prompt: dict
    candidates: tuple[str, ...]
    answer_index: int
    rationale: str
    seed: int


def _rationale(reasoning: str, answer: str) -> str:
    return f"<bos> {reasoning} <sep> {answer} <eos>"


def _label(kb: KnowledgeBase, unit_id: str) -> str:
    return kb.records[unit_id].label_en or unit_id


def _instance_rngs(rng: random.Random, n: int) -> list[tuple[int, random.Random]]:
    seeds = [rng.getrandbits(32) for _ in range(n)]
    return [(s, random.Random(s)) for s in seeds]


def _distractors_by_dimension(
    kb: KnowledgeBase,
    rng: random.Random,
    avoid: DimensionVector,
    k: int,
    exclude: set[str] = frozenset(),
) -> list[str]:
    """k distinct units whose dimension differs from `avoid`."""
    pool = sorted(
        uid
        for uid, rec in kb.records.items()
        if uid not in exclude and not is_comparable(rec.dimension, avoid)
    )
    if len(pool) < k:
        raise GenerationError(f"need {k} distractors with dimension != {avoid}, have {len(pool)}")
    return rng.sample(pool, k)


def _finish(
    kb: KnowledgeBase,
    task_type: str,
    index: int,
    seed: int,
    rng: random.Random,
    prompt: dict,
    correct: str,
    distractors: list[str],
    reasoning: str,
    answer_text: str,
) -> TaskInstance:
    candidates = [correct, *distractors]
    if len(set(candidates)) != len(candidates):
        raise GenerationError(f"candidates not distinct: {candidates}")
    rng.shuffle(candidates)
    instance = TaskInstance(
        id=f"{task_type}-{index:05d}",
        task_type=task_type,
        prompt=prompt,
        candidates=tuple(candidates),
        answer_index=candidates.index(correct),
        rationale=_rationale(reasoning, answer_text),
        seed=seed,
    )
    verify_instance(kb, instance)
    return instance


# ---------------------------------------------------------------------------
# Oracle predicates


def _oracle_flags(kb: KnowledgeBase, inst: TaskInstance) -> list[bool]:
    """One boolean per candidate: does it satisfy the task's predicate?"""
    t = inst.task_type
    if t == "kind_match":
        kind = inst.prompt["kind"]
        return [kb.unit(c).quantity_kind == kind for c in inst.candidates]
    if t == "comparable":
        anchor = kb.unit(inst.prompt["anchor"]).dimension
        return [is_comparable(kb.unit(c).dimension, anchor) for c in inst.candidates]
    if t == "dimension_prediction":
        target = kb.unit(inst.prompt["source_unit"]).dimension
        return [is_comparable(kb.unit(c).dimension, target) for c in inst.candidates]
    if t == "dimension_arithmetic":
        dim = expression_dimension(kb, inst.prompt["terms"], inst.prompt["ops"])
        return [is_comparable(kb.unit(c).dimension, dim) for c in inst.candidates]
    if t == "magnitude_comparison":
        values = [kb.unit(c).conversion_val for c in inst.candidates]
        peak = max(values)
        return [v == peak for v in values]
    if t == "unit_conversion":
        beta = conversion_factor(kb, inst.prompt["from_unit"], inst.prompt["to_unit"])
        return [abs(float(c) - beta) <= 1e-9 * abs(beta) for c in inst.candidates]
    raise GenerationError(f"unknown task_type {t!r}")


def verify_instance(kb: KnowledgeBase, inst: TaskInstance) -> None:
    """Post-generation verification: exactly one correct candidate, and
    answer_index points at it."""
    flags = _oracle_flags(kb, inst)
    if sum(flags) != 1 or not flags[inst.answer_index]:
        raise GenerationError(
            f"instance {inst.id} fails its oracle: flags={flags}, answer={inst.answer_index}"
        )


def expression_dimension(
    kb: KnowledgeBase, terms: Sequence[str], ops: Sequence[str]
) -> DimensionVector:
    """Left-to-right dimension of ``u1 op1 u2 ... op(n-1) un``: flat
    form, no precedence."""
    if len(ops) != len(terms) - 1:
        raise GenerationError(f"{len(terms)} terms need {len(terms) - 1} ops, got {len(ops)}")
    dim = kb.unit(terms[0]).dimension
    for op, term in zip(ops, terms[1:]):
        other = kb.unit(term).dimension
        if op in ("×", "*"):
            dim = dim * other
        elif op in ("÷", "/"):
            dim = dim / other
        else:
            raise GenerationError(f"unknown operator {op!r}")
    return dim


# ---------------------------------------------------------------------------
# Generators


def gen_kind_match(
    kb: KnowledgeBase, rng: random.Random, n: int, m: int = DEFAULT_CANDIDATES
) -> list[TaskInstance]:
    """Name a quantity kind; exactly one candidate unit measures it."""
    kinds = sorted(kb.kinds)
    if len(kinds) < 4:
        raise GenerationError(f"need >= 4 kinds, KB has {len(kinds)}")
    out = []
    for i, (seed, irng) in enumerate(_instance_rngs(rng, n)):
        kind_id = irng.choice(kinds)
        kind = kb.kinds[kind_id]
        correct = irng.choice(sorted(kb.units_of_kind(kind_id)))
        distractors = _distractors_by_dimension(kb, irng, kind.dimension, m - 1)
        reasoning = (
            f"{_label(kb, correct)} measures {kind_id}; "
            + "; ".join(
                f"{_label(kb, d)} measures {kb.unit(d).quantity_kind}" for d in distractors
            )
            + "."
        )
        prompt = {"kind": kind_id, "question": f"Which unit measures {kind_id}?"}
        out.append(
            _finish(kb, "kind_match", i, seed, irng, prompt, correct, distractors,
                    reasoning, _label(kb, correct))
        )
    return out


def gen_comparable(
    kb: KnowledgeBase, rng: random.Random, n: int, m: int = DEFAULT_CANDIDATES
) -> list[TaskInstance]:
    """Anchor unit given; exactly one candidate shares its dimension."""
    anchors = sorted(
        uid
        for uid, rec in kb.records.items()
        if len(units_of_dimension(kb, rec.dimension)) >= 2
    )
    if not anchors or len(kb.dimension_index) < 4:
        raise GenerationError("KB lacks dimension diversity for comparable tasks")
    out = []
    for i, (seed, irng) in enumerate(_instance_rngs(rng, n)):
        anchor = irng.choice(anchors)
        dim = kb.unit(anchor).dimension
        correct = irng.choice(sorted(units_of_dimension(kb, dim) - {anchor}))
        distractors = _distractors_by_dimension(kb, irng, dim, m - 1, exclude={anchor})
        sym = format_symbolic(dim)
        reasoning = (
            f"{_label(kb, anchor)} has dimension {sym}; {_label(kb, correct)} shares it, "
            f"the other candidates do not."
        )
        prompt = {
            "anchor": anchor,
            "question": f"Which unit is comparable with {_label(kb, anchor)}?",
        }
        out.append(
            _finish(kb, "comparable", i, seed, irng, prompt, correct, distractors,
                    reasoning, _label(kb, correct))
        )
    return out


def gen_dimension_prediction(
    annotated: Sequence[AnnotatedSentence],
    kb: KnowledgeBase,
    rng: random.Random,
    n: int,
    m: int = DEFAULT_CANDIDATES,
) -> list[TaskInstance]:
    """Mask a linked quantity in a sentence; exactly one candidate has
    the dimension the masked quantity implies."""
    pool = [
        (sent, mention)
        for sent in annotated
        for mention in sent.mentions
        if mention.linked_unit is not None
    ]
    if not pool:
        raise GenerationError("no annotated sentences with linked mentions")
    out = []
    for i, (seed, irng) in enumerate(_instance_rngs(rng, n)):
        sent, mention = pool[irng.randrange(len(pool))]
        source = mention.linked_unit
        dim = kb.unit(source).dimension
        masked = byte_replace(sent.text, *mention.quantity_span, "[MASK]")
        correct = irng.choice(sorted(units_of_dimension(kb, dim)))
        distractors = _distractors_by_dimension(kb, irng, dim, m - 1)
        sym = format_symbolic(dim)
        reasoning = (
            f"The masked quantity has the dimension of {_label(kb, source)}, {sym}; "
            f"{_label(kb, correct)} has dimension {sym}."
        )
        prompt = {"masked_text": masked, "source_unit": source}
        out.append(
            _finish(kb, "dimension_prediction", i, seed, irng, prompt, correct, distractors,
                    reasoning, _label(kb, correct))
        )
    return out


def gen_dimension_arithmetic(
    kb: KnowledgeBase,
    rng: random.Random,
    n: int,
    max_terms: int = 3,
    m: int = DEFAULT_CANDIDATES,
) -> list[TaskInstance]:
    """Unit arithmetic expression; exactly one candidate has dim(E).

    Expressions whose dimension no KB unit carries are resampled.
    """
    if max_terms < 2:
        raise GenerationError("max_terms must be >= 2")
    all_units = sorted(kb.records)
    if not all_units:
        raise GenerationError("empty KB")
    out = []
    for i, (seed, irng) in enumerate(_instance_rngs(rng, n)):
        for _ in range(_RESAMPLE_BUDGET):
            k = irng.randint(2, max_terms)
            terms = [irng.choice(all_units) for _ in range(k)]
            ops = [irng.choice("×÷") for _ in range(k - 1)]
            try:
                dim = expression_dimension(kb, terms, ops)
            except DimensionRangeError:
                continue
            matches = units_of_dimension(kb, dim)
            if not matches:
                continue
            correct = irng.choice(sorted(matches))
            try:
                distractors = _distractors_by_dimension(kb, irng, dim, m - 1)
            except GenerationError:
                continue
            break
        else:
            raise GenerationError(
                f"resample budget exhausted for dimension_arithmetic instance {i}"
            )
        expression = " ".join(
            part
            for pair in zip([_label(kb, t) for t in terms], ops + [""])
            for part in pair
            if part
        )
        steps = [f"dim({_label(kb, terms[0])}) = {format_symbolic(kb.unit(terms[0]).dimension)}"]
        running = kb.unit(terms[0]).dimension
        for op, term in zip(ops, terms[1:]):
            running = running * kb.unit(term).dimension if op == "×" else running / kb.unit(term).dimension
            steps.append(f"{op} dim({_label(kb, term)}) -> {format_symbolic(running)}")
        reasoning = "; ".join(steps) + f"; {_label(kb, correct)} has dimension {format_symbolic(dim)}."
        prompt = {"expression": expression, "terms": terms, "ops": ops}
        out.append(
            _finish(kb, "dimension_arithmetic", i, seed, irng, prompt, correct, distractors,
                    reasoning, _label(kb, correct))
        )
    return out


def gen_magnitude_comparison(
    kb: KnowledgeBase, rng: random.Random, n: int, m: int = DEFAULT_CANDIDATES
) -> list[TaskInstance]:
    """m same-dimension units; exactly one has the largest magnitude.

    Groups with a tie at the maximum conversion value are rejected and
    resampled, preserving the single-answer invariant.
    """
    eligible = sorted(d for d, units in kb.dimension_index.items() if len(units) >= m)
    if not eligible:
        raise GenerationError(f"no dimension has >= {m} units")
    out = []
    for i, (seed, irng) in enumerate(_instance_rngs(rng, n)):
        for _ in range(_RESAMPLE_BUDGET):
            dim_key = irng.choice(eligible)
            group = irng.sample(sorted(kb.dimension_index[dim_key]), m)
            values = [kb.unit(u).conversion_val for u in group]
            peak = max(values)
            if values.count(peak) != 1:
                continue  # tie at the maximum
            correct = group[values.index(peak)]
            break
        else:
            raise GenerationError(f"could not find a tie-free group for instance {i}")
        others = [u for u in group if u != correct]
        reasoning = (
            "In standard units: "
            + ", ".join(f"{_label(kb, u)} = {format_number(kb.unit(u).conversion_val)}" for u in group)
            + f"; {_label(kb, correct)} is largest."
        )
        prompt = {"question": "Which unit has the largest magnitude?"}
        out.append(
            _finish(kb, "magnitude_comparison", i, seed, irng, prompt, correct, others,
                    reasoning, _label(kb, correct))
        )
    return out


def gen_unit_conversion(
    kb: KnowledgeBase, rng: random.Random, n: int, m: int = DEFAULT_CANDIDATES
) -> list[TaskInstance]:
    """Ask the factor beta converting u1 to u2; candidates are numeric
    literals.  Distractors are plausible confusions: the reciprocal,
    decade shifts, and the factor of a different same-dimension pair.
    """
    pairs_pool = sorted(
        d
        for d, units in kb.dimension_index.items()
        if len([u for u in units if kb.unit(u).affine_offset == 0.0]) >= 2
    )
    if not pairs_pool:
        raise GenerationError("no comparable non-affine pair in KB")
    out = []
    for i, (seed, irng) in enumerate(_instance_rngs(rng, n)):
        for _ in range(_RESAMPLE_BUDGET):
            dim_key = irng.choice(pairs_pool)
            units = sorted(
                u for u in kb.dimension_index[dim_key] if kb.unit(u).affine_offset == 0.0
            )
            u1, u2 = irng.sample(units, 2)
            beta = conversion_factor(kb, u1, u2)
            if beta == 1.0:
                continue  # degenerate (u, u)-like pair
            break
        else:
            raise GenerationError(f"no non-degenerate conversion pair for instance {i}")

        distractor_values: list[float] = [1.0 / beta]
        for k in (1, -1, 2, -2, 3, -3):
            distractor_values.append(beta * 10.0**k)
        if len(units) > 2:
            alt = [u for u in units if u not in (u1, u2)]
            distractor_values.append(conversion_factor(kb, irng.choice(alt), u2))
        chosen: list[float] = []
        irng.shuffle(distractor_values)
        for v in distractor_values:
            if v != beta and v not in chosen and len(chosen) < m - 1:
                chosen.append(v)
        if len(chosen) < m - 1:
            raise GenerationError(f"could not build {m - 1} distinct distractors for beta={beta}")

        gold = format_number(beta)
        reasoning = (
            f"1 {_label(kb, u1)} equals {gold} {_label(kb, u2)}: the conversion values are "
            f"{format_number(kb.unit(u1).conversion_val)} and {format_number(kb.unit(u2).conversion_val)}."
        )
        prompt = {
            "from_unit": u1,
            "to_unit": u2,
            "question": f"1 {_label(kb, u1)} = ? {_label(kb, u2)}",
        }
        out.append(
            _finish(kb, "unit_conversion", i, seed, irng, prompt, gold,
                    [format_number(v) for v in chosen], reasoning, gold)
        )
    return out


# ---------------------------------------------------------------------------
# Serialization


def save_instances(instances: Sequence[TaskInstance], path: str | Path) -> None:
    lines = [
        json.dumps(
            {
                "id": t.id,
                "task_type": t.task_type,
                "prompt": t.prompt,
                "candidates": list(t.candidates),
                "answer_index": t.answer_index,
                "rationale": t.rationale,
                "seed": t.seed,
            },
            ensure_ascii=False,
        )
        for t in instances
    ]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def load_instances(path: str | Path) -> list[TaskInstance]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        d = json.loads(line)
        out.append(
            TaskInstance(
                id=d["id"],
                task_type=d["task_type"],
                prompt=d["prompt"],
                candidates=tuple(d["candidates"]),
                answer_index=int(d["answer_index"]),
                rationale=d.get("rationale", ""),
                seed=int(d.get("seed", 0)),
            )
        )
    return out
