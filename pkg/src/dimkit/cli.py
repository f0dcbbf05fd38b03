"""Batch command-line surface.

Subcommands: convert, link, dim, gen-tasks, annotate, bootstrap,
augment, score.  All randomness flows from --seed through per-sub-task
derived sub-seeds; every seeded command is bit-reproducible.  No
command writes to an output path on failure: results are built fully in
memory first.

Exit codes:
    0  success
    1  empty result (link)
    2  incomparable units
    3  unresolvable unit
    4  data or validation error
    5  generation / augmentation error
    64 usage error

The KB path resolves as --kb flag > DIMKIT_KB env var > packaged
fixture KB.
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
import sys
from importlib import resources
from pathlib import Path

from . import bootstrap as bootstrap_mod
from . import mwp as mwp_mod
from . import quantity_text as qt
from . import scoring, tasks
from .dimension import format_symbolic
from .embeddings import TrigramHashEmbedding, WordVectorEmbedding
from .errors import (
    AugmentationError,
    DimkitError,
    GenerationError,
    IncomparableUnitsError,
    UnitResolutionError,
)
from .kb import KnowledgeBase, conversion_factor, load_kb, lookup_surface, units_of_dimension
from .linking import Mention, link
from .util import derive_rng, format_number

EXIT_OK = 0
EXIT_EMPTY = 1
EXIT_INCOMPARABLE = 2
EXIT_UNRESOLVABLE = 3
EXIT_DATA = 4
EXIT_GENERATION = 5
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def default_kb_path() -> Path:
    env = os.environ.get("DIMKIT_KB")
    if env:
        return Path(env)
    return Path(str(resources.files("dimkit").joinpath("data/units.tsv")))


def packaged_data(name: str) -> Path:
    return Path(str(resources.files("dimkit").joinpath(f"data/{name}")))


def _load_kb(args) -> KnowledgeBase:
    return load_kb(args.kb if args.kb else default_kb_path())


def _embedder(spec: str):
    if spec == "trigram":
        return TrigramHashEmbedding()
    if spec.startswith("vectors:"):
        return WordVectorEmbedding(spec.split(":", 1)[1])
    raise DimkitError(f"unknown embedder spec {spec!r} (use 'trigram' or 'vectors:PATH')")


def _oracle(spec: str) -> qt.MaskedFillOracle:
    if spec.startswith("constant:"):
        return qt.ConstantOracle(spec.split(":", 1)[1])
    if spec.startswith("command:"):
        return qt.CommandOracle(shlex.split(spec.split(":", 1)[1]))
    raise DimkitError(f"unknown oracle spec {spec!r} (use 'constant:TOKEN' or 'command:CMD')")


def _resolve_unit(kb, emb, surface: str, threshold: float) -> str:
    exact = sorted(lookup_surface(kb, surface))
    if len(exact) == 1:
        return exact[0]
    ranked = link(kb, Mention(surface), emb, threshold)
    if ranked:
        return ranked[0].unit_id
    raise UnitResolutionError(f"cannot resolve unit {surface!r}")


def _write_lines(path: str | None, lines: list[str]) -> None:
    text = "\n".join(lines) + ("\n" if lines else "")
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Commands


def cmd_convert(args) -> int:
    kb = _load_kb(args)
    emb = _embedder(args.embedder)
    try:
        u1 = _resolve_unit(kb, emb, args.from_unit, args.threshold)
        u2 = _resolve_unit(kb, emb, args.to_unit, args.threshold)
    except UnitResolutionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNRESOLVABLE
    try:
        beta = conversion_factor(kb, u1, u2)
    except IncomparableUnitsError as exc:
        print(f"{format_symbolic(exc.dim_a)} vs {format_symbolic(exc.dim_b)}")
        return EXIT_INCOMPARABLE
    print(f"{format_number(args.value * beta)} {args.to_unit}")
    return EXIT_OK


def cmd_link(args) -> int:
    kb = _load_kb(args)
    emb = _embedder(args.embedder)
    ranked = link(kb, Mention(args.surface, context=args.context), emb, args.threshold)
    if not ranked:
        print(f"no candidates for {args.surface!r}", file=sys.stderr)
        return EXIT_EMPTY
    print("unit_id\tprior\tp_mention\tp_context\tscore")
    for c in ranked[: args.top_k]:
        print(f"{c.unit_id}\t{c.prior:.6f}\t{c.p_mention:.6f}\t{c.p_context:.6f}\t{c.score:.6g}")
    return EXIT_OK


def cmd_dim(args) -> int:
    kb = _load_kb(args)
    emb = _embedder(args.embedder)
    import re as _re

    parts = [p for p in _re.split(r"\s*([*/×÷])\s*", args.expression.strip()) if p]
    terms, ops = parts[0::2], parts[1::2]
    if not terms or len(ops) != len(terms) - 1:
        print(f"error: cannot parse expression {args.expression!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        unit_ids = [_resolve_unit(kb, emb, t, args.threshold) for t in terms]
    except UnitResolutionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNRESOLVABLE
    dim = tasks.expression_dimension(kb, unit_ids, ops)
    print(format_symbolic(dim))
    matches = sorted(units_of_dimension(kb, dim))
    if matches:
        print("matching units: " + ", ".join(f"{u} ({kb.unit(u).label_en})" for u in matches))
    else:
        print("matching units: (none)")
    return EXIT_OK


def cmd_gen_tasks(args) -> int:
    kb = _load_kb(args)
    emb = _embedder(args.embedder)
    wanted = list(tasks.TASK_TYPES) if args.task_type == "all" else [args.task_type]

    annotated = None
    if "dimension_prediction" in wanted:
        if args.annotated:
            annotated = qt.load_annotated(args.annotated)
        else:
            corpus = packaged_data("corpus_sample.txt").read_text(encoding="utf-8").splitlines()
            annotated, _ = qt.annotate_corpus(corpus, kb, emb, qt.ConstantOracle("5"), args.threshold)

    instances: list[tasks.TaskInstance] = []
    for task_type in wanted:
        rng = derive_rng(args.seed, "gen-tasks", task_type)
        if task_type == "kind_match":
            instances += tasks.gen_kind_match(kb, rng, args.n, args.m)
        elif task_type == "comparable":
            instances += tasks.gen_comparable(kb, rng, args.n, args.m)
        elif task_type == "dimension_prediction":
            instances += tasks.gen_dimension_prediction(annotated, kb, rng, args.n, args.m)
        elif task_type == "dimension_arithmetic":
            instances += tasks.gen_dimension_arithmetic(kb, rng, args.n, args.max_terms, args.m)
        elif task_type == "magnitude_comparison":
            instances += tasks.gen_magnitude_comparison(kb, rng, args.n, args.m)
        elif task_type == "unit_conversion":
            instances += tasks.gen_unit_conversion(kb, rng, args.n, args.m)

    lines = []
    for t in instances:
        lines.append(
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
        )
    _write_lines(args.output, lines)
    return EXIT_OK


def cmd_annotate(args) -> int:
    kb = _load_kb(args)
    emb = _embedder(args.embedder)
    corpus = Path(args.corpus).read_text(encoding="utf-8").splitlines()
    if args.apply_review:
        rule = qt.rule_annotate(corpus, kb, emb, args.threshold)
        reviewed = qt.apply_review(rule, qt.load_review(args.apply_review))
        sentences, review_rows = reviewed, []
    else:
        sentences, review_rows = qt.annotate_corpus(
            corpus, kb, emb, _oracle(args.oracle), args.threshold
        )
    lines = []
    for s in sentences:
        lines.append(
            json.dumps(
                {
                    "line_no": s.line_no,
                    "text": s.text,
                    "provenance": s.provenance,
                    "mentions": [qt.mention_to_dict(m) for m in s.mentions],
                },
                ensure_ascii=False,
            )
        )
    _write_lines(args.output, lines)
    if args.review and review_rows:
        qt.save_review(review_rows, args.review)
    return EXIT_OK


def cmd_bootstrap(args) -> int:
    kb = _load_kb(args)
    emb = _embedder(args.embedder)
    store = bootstrap_mod.load_triplets(args.store)
    config = bootstrap_mod.BootstrapConfig(
        tau=args.tau, iterations=args.iters, seed_unit_count=args.seed_units
    )
    result = bootstrap_mod.bootstrap_retrieve(store, kb, config, emb, args.threshold)
    payload = json.dumps(
        {
            "triplets": [[t.subject, t.predicate, t.obj] for t in result.triplets],
            "predicates": sorted(result.predicates),
            "mentions": sorted(result.mentions),
        },
        ensure_ascii=False,
        indent=2,
    )
    _write_lines(args.output, [payload])
    return EXIT_OK


def cmd_augment(args) -> int:
    kb = _load_kb(args)
    emb = _embedder(args.embedder)
    problems = mwp_mod.load_problems(args.dataset)
    mix = None
    if args.methods:
        mix = {name: 1.0 for name in args.methods.split(",") if name}
    rng = derive_rng(args.seed, "augment")
    out, records, failures = mwp_mod.augment_dataset(
        problems, kb, rng, args.eta, mix, emb, args.threshold, append=args.append
    )
    lines = []
    for p in out:
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
    _write_lines(args.output, lines)
    if args.records:
        mwp_mod.save_records(records, args.records)
    for f in failures:
        print(f"skip {f.problem_id} [{f.method}]: {f.reason}", file=sys.stderr)
    return EXIT_OK


def cmd_score(args) -> int:
    first = ""
    for line in Path(args.gold).read_text(encoding="utf-8").splitlines():
        if line.strip():
            first = line
            break
    if not first:
        print("error: empty gold file", file=sys.stderr)
        return EXIT_DATA
    if "task_type" in json.loads(first):
        gold = tasks.load_instances(args.gold)
        preds = scoring.load_predictions(args.predictions)
        metrics = scoring.score_predictions(gold, preds)
        print("task\ttotal\tanswered\tcorrect\tprecision\trecall\tf1\taccuracy")
        for name, m in metrics.items():
            flag = " (no answers)" if m.degenerate else ""
            print(
                f"{name}\t{m.total}\t{m.answered}\t{m.correct}"
                f"\t{m.precision:.4f}\t{m.recall:.4f}\t{m.f1:.4f}\t{m.accuracy:.4f}{flag}"
            )
    else:
        gold = qt.load_annotated(args.gold)
        preds = qt.load_annotated(args.predictions)
        metrics = scoring.score_quantity_extraction(gold, preds)
        print("subtask\tgold\tpredicted\tmatched\tprecision\trecall\tf1")
        for name, m in metrics.items():
            print(
                f"{name}\t{m.gold_count}\t{m.predicted_count}\t{m.matched}"
                f"\t{m.precision:.4f}\t{m.recall:.4f}\t{m.f1:.4f}"
            )
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> _Parser:
    parser = _Parser(prog="dimkit", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--kb", help="KB file path (default: $DIMKIT_KB or the packaged KB)")
    parser.add_argument("--embedder", default="trigram", help="'trigram' or 'vectors:PATH'")
    parser.add_argument("--threshold", type=float, default=0.5, help="candidate similarity threshold")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="convert a value between units")
    p.add_argument("value", type=float)
    p.add_argument("from_unit")
    p.add_argument("to_unit")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("link", help="rank KB units for a mention")
    p.add_argument("surface")
    p.add_argument("--context", default="")
    p.add_argument("--top-k", type=int, default=5)
    p.set_defaults(func=cmd_link)

    p = sub.add_parser("dim", help="dimension of a unit expression, e.g. 'Joule * Meter'")
    p.add_argument("expression")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("gen-tasks", help="generate benchmark task instances")
    p.add_argument("task_type", choices=[*tasks.TASK_TYPES, "all"])
    p.add_argument("-n", type=int, default=100, help="instances per task type")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-m", type=int, default=tasks.DEFAULT_CANDIDATES, help="candidates per instance")
    p.add_argument("--max-terms", type=int, default=3, help="max units per arithmetic expression")
    p.add_argument(
        "--annotated",
        help="annotated sentences (JSONL) for dimension_prediction; "
        "default: annotate the packaged sample corpus with a constant numeric stub",
    )
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen_tasks)

    p = sub.add_parser("annotate", help="run the annotation pipeline over a corpus")
    p.add_argument("corpus")
    p.add_argument("--oracle", default="constant:5", help="'constant:TOKEN' or 'command:CMD'")
    p.add_argument("--review", help="write filter decisions to this TSV")
    p.add_argument("--apply-review", help="re-apply an edited review TSV instead of filtering")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("bootstrap", help="bootstrapping retrieval over a triplet store")
    p.add_argument("store", help="TSV of (subject, predicate, object)")
    p.add_argument("--tau", type=float, default=0.8)
    p.add_argument("--iters", type=int, default=5)
    p.add_argument("--seed-units", type=int, default=10)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bootstrap)

    p = sub.add_parser("augment", help="quantity-oriented MWP augmentation")
    p.add_argument("dataset", help="problems JSONL")
    p.add_argument("--eta", type=float, default=0.5)
    p.add_argument("--methods", help="comma-separated method subset")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--append", action="store_true", help="append augmented copies (2x output)")
    p.add_argument("--records", help="write augmentation records JSONL here")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("score", help="score predictions against gold")
    p.add_argument("gold")
    p.add_argument("predictions")
    p.set_defaults(func=cmd_score)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GenerationError, AugmentationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GENERATION
    except DimkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
