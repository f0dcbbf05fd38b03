"""Generating the seven-family benchmark's selection tasks.

Each generator builds four-candidate instances with exactly one correct
answer, re-verified by an oracle predicate after construction, plus a
templated reasoning string in the <bos> R <sep> A <eos> shape.
"""

import random

from dimkit import (
    ConstantOracle,
    TrigramHashEmbedding,
    annotate_corpus,
    gen_comparable,
    gen_dimension_arithmetic,
    gen_dimension_prediction,
    gen_kind_match,
    gen_magnitude_comparison,
    gen_unit_conversion,
    load_kb,
    verify_instance,
)
from dimkit.cli import packaged_data

kb = load_kb(packaged_data("units.tsv"))
emb = TrigramHashEmbedding()


def show(instances, note):
    inst = instances[0]
    print(f"\n== {inst.task_type} ({note})")
    print("prompt:", inst.prompt)
    print("candidates:", list(inst.candidates), "answer:", inst.answer_index)
    print("rationale:", inst.rationale)
    for i in instances:
        verify_instance(kb, i)


show(gen_kind_match(kb, random.Random(1), 20), "pick the unit measuring a kind")
show(gen_comparable(kb, random.Random(2), 20), "pick the unit sharing the anchor's dimension")
show(gen_dimension_arithmetic(kb, random.Random(3), 20), "dimension of a unit expression")
show(gen_magnitude_comparison(kb, random.Random(4), 20), "largest magnitude in a group")
show(gen_unit_conversion(kb, random.Random(5), 20), "numeric conversion factor")

# dimension_prediction masks a quantity in annotated text
corpus = packaged_data("corpus_sample.txt").read_text(encoding="utf-8").splitlines()
annotated, _ = annotate_corpus(corpus, kb, emb, ConstantOracle("5"), 0.5)
show(gen_dimension_prediction(annotated, kb, random.Random(6), 20), "masked-quantity dimension")
