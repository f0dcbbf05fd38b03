"""The semi-automated quantity annotation pipeline.

Step 1 rule-annotates sentences (regex values + unit linking on the
following window).  Step 2 masks each quantity and asks an oracle to
fill the blank: mentions whose prediction is neither numeric nor a
linkable unit are removed, which catches device-code false positives
like "LPUI-1T".  Step 3 is a human pass over the review file.
"""

from dimkit import TrigramHashEmbedding, annotate_corpus, extract_quantities, load_kb
from dimkit.cli import packaged_data
from dimkit.quantity_text import TableOracle
from dimkit.util import byte_slice

kb = load_kb(packaged_data("units.tsv"))
emb = TrigramHashEmbedding()

corpus = [
    "LeBron James's height is 2.06 meters.",
    "小王要将150千克含药量20%的农药稀释成含药量5%的药水。",
    "The device code LPUI-1T shipped last month.",
    "The committee approved the proposal.",
]

print("rule-stage extraction:")
for sentence in corpus:
    mentions = extract_quantities(sentence, kb, emb, threshold=0.5)
    print(f"  {sentence}")
    for m in mentions:
        unit = f"{m.unit_surface!r} -> {m.linked_unit}" if m.linked_unit else "(bare value)"
        print(f"      value={m.value} {unit}")

# An oracle that recognizes the masked device-code sentence and predicts
# a non-quantity word; everything else gets a numeric prediction.
oracle = TableOracle(
    {"The device code LPUI-[MASK] shipped last month.": "revision"},
    default="5",
)

annotated, review = annotate_corpus(corpus, kb, emb, oracle, threshold=0.5)

print("\nretained after the masked-prediction filter:")
for s in annotated:
    spans = [byte_slice(s.text, *m.quantity_span) for m in s.mentions]
    print(f"  line {s.line_no} [{s.provenance}]: {spans}")

print("\nreview file rows (line, span, surface, verdict):")
for row in review:
    print(f"  {row.line_no}\t{row.span[0]}-{row.span[1]}\t{row.surface}\t{row.verdict}")
