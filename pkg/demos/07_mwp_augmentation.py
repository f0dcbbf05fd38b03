"""Quantity-oriented augmentation of math word problems.

Context-direction methods rewrite the problem body and must keep the
answer unchanged; question-direction methods rewrite the asked unit and
rescale equation and answer together.  Format substitution swaps the
surface form of the same unit; dimension substitution swaps in a
same-dimension unit with the conversion factor applied.
"""

import random

from dimkit import (
    TrigramHashEmbedding,
    augment_context_dimension,
    augment_context_format,
    augment_dataset,
    augment_question_dimension,
    augment_question_format,
    evaluate_equation,
    load_kb,
    load_problems,
)
from dimkit.cli import packaged_data

kb = load_kb(packaged_data("units.tsv"))
emb = TrigramHashEmbedding()
problems = load_problems(packaged_data("mwp_sample.jsonl"))
pesticide = problems[0]

print("original:", pesticide.body + pesticide.question)
print("equation:", pesticide.equation, "=", evaluate_equation(pesticide.equation))


def show(label, result):
    problem, record = result
    print(f"\n{label}")
    print("  text:", problem.body + problem.question)
    print("  equation:", problem.equation)
    print(f"  answer: {record.answer_before} -> {record.answer_after} (scale {record.scale})")


show("context format substitution (same unit, new surface):",
     augment_context_format(pesticide, kb, random.Random(4), emb))

show("context dimension substitution (kg -> g, magnitude preserved):",
     augment_context_dimension(pesticide, kb, random.Random(0), emb, target_unit="GM"))

show("question format substitution:",
     augment_question_format(pesticide, kb, random.Random(3), emb))

show("question dimension substitution (kg -> ton rescales the answer):",
     augment_question_dimension(pesticide, kb, random.Random(0), emb, target_unit="TON_Metric"))

# Dataset-level augmentation selects each problem with probability eta
# and records every substitution; failures pass through unchanged.
out, records, failures = augment_dataset(problems, kb, random.Random(7), eta=0.5, emb=emb)
print(f"\ndataset pass at eta=0.5: {len(records)} augmented, "
      f"{len(failures)} failures, {len(out)} problems out")
for r in records:
    print(f"  {r.problem_id}: {r.method} {r.original_unit} -> {r.new_unit}")
