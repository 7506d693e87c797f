"""Command-line entry points.

    srcsent score          run configured scorers over a corpus
    srcsent evaluate       ranking metrics of score dumps against annotations
    srcsent stats          corpus statistics and reconstructability fractions
    srcsent correlate      method-vs-method score correlations
    srcsent positions      source position / interval / count histograms
    srcsent select         apply a selection rule to a score dump
    srcsent export-srconly write source-sentence-only documents
    srcsent agreement      inter-annotator agreement of an annotation file
    srcsent serve          run the annotation and inspection service
"""

import argparse
import json
import os
import sys
from collections.abc import Sequence

from .corpus.io import load_annotations, load_gold, load_pairs, write_pairs
from .corpus.labels import gold_for_corpus, group_by_pair, pair_reconstructability_table
from .corpus.stats import corpus_stats
from .metrics.agreement import krippendorff_alpha, reconstructability_matrix, sentence_label_matrix
from .metrics.correlation import correlation_matrix
from .metrics.positions import histogram_tsv, position_stats
from .metrics.ranking import evaluate
from .pipeline.config import SelectionRule, load_config
from .pipeline.runner import run_methods
from .pipeline.selection import export_filtered_document, select_sources
from .scorers.vector import by_pair, load_score_vectors
from .service import serve


def _fmt_table(rows: list[list[str]], header: list[str]) -> str:
    widths = [max(len(str(cell)) for cell in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(cell).ljust(w) for cell, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(str(cell).ljust(w) for cell, w in zip(row, widths)) for row in rows)
    return "\n".join(lines)


def _split_pairs(pairs, by_split: bool):
    if not by_split:
        return {"all": list(pairs)}
    groups: dict[str, list] = {}
    for pair in pairs:
        groups.setdefault(pair.split_label(), []).append(pair)
    return dict(sorted(groups.items()))


def _resolve_gold(args, pairs):
    """Pre-aggregated gold file when given, else aggregate the annotations."""
    if getattr(args, "gold", None):
        return load_gold(args.gold)
    if not getattr(args, "annotations", None):
        raise SystemExit("need --annotations or --gold")
    records = load_annotations(args.annotations, pairs)
    return gold_for_corpus(pairs, records, skip_unannotated=True)


def cmd_score(args) -> int:
    config = load_config(args.config)
    dumps = run_methods(config)
    for method_id, path in dumps.items():
        print(f"{method_id}: {path}")
    return 0


def cmd_evaluate(args) -> int:
    pairs = load_pairs(args.corpus)
    gold = _resolve_gold(args, pairs)
    groups = _split_pairs(pairs, args.by_split)

    rows = []
    reports = []
    for dump_path in args.scores:
        vectors = by_pair(load_score_vectors(dump_path))
        for split, split_pairs in groups.items():
            subset = {pid: vec for pid, vec in vectors.items() if pid in {p.pair_id for p in split_pairs}}
            subset = {pid: vec for pid, vec in subset.items() if pid in gold}
            if not subset:
                continue
            report = evaluate(subset, gold, split, exponential_gain=args.exponential_gain)
            reports.append(report)
            rows.append(
                [
                    report.method,
                    split,
                    f"{report.ndcg:.4f}",
                    f"{report.map:.4f}",
                    str(report.n_pairs),
                    str(report.map_skipped),
                ]
            )
    print(_fmt_table(rows, ["method", "split", "ndcg", "map", "pairs", "map_skipped"]))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for report in reports:
                fh.write(json.dumps(report.to_record(), sort_keys=True) + "\n")
    return 0


def cmd_stats(args) -> int:
    pairs = load_pairs(args.corpus)
    gold = _resolve_gold(args, pairs)
    records = load_annotations(args.annotations, pairs) if args.annotations else []
    grouped_records = group_by_pair(records)
    groups = _split_pairs(pairs, args.by_split)

    rows = []
    for split, split_pairs in groups.items():
        annotated = [p for p in split_pairs if p.pair_id in gold]
        if not annotated:
            continue
        st = corpus_stats(annotated, gold)
        novel = "/".join(f"{100 * st.novel_ngram_rate.get(n, 0):.1f}" for n in (1, 2, 3, 4))
        rows.append(
            [
                split,
                str(st.n_pairs),
                f"{st.mean_sentences:.2f}",
                f"{st.mean_source_sentences:.2f} ({100 * st.source_sentence_ratio:.1f}%)",
                f"{st.mean_input_tokens:.2f}",
                f"{st.mean_summary_tokens:.2f}",
                novel,
            ]
        )
    print(_fmt_table(rows, ["split", "pairs", "sent", "src sent", "input len", "summ len", "novel 1/2/3/4-gram %"]))

    if grouped_records:
        table = pair_reconstructability_table(
            {
                split: [r for p in split_pairs for r in grouped_records.get(p.pair_id, [])]
                for split, split_pairs in groups.items()
                if any(p.pair_id in grouped_records for p in split_pairs)
            }
        )
        rows = [
            [split, f"{100 * f['yes']:.1f}%", f"{100 * f['partly']:.1f}%", f"{100 * f['no']:.1f}%"]
            for split, f in table.items()
        ]
        print()
        print("reconstructability (pair majority, ties = partly):")
        print(_fmt_table(rows, ["split", "yes", "partly", "no"]))
    return 0


def cmd_correlate(args) -> int:
    method_scores = {}
    for dump_path in args.scores:
        vectors = load_score_vectors(dump_path)
        if not vectors:
            print(f"warning: {dump_path} is empty", file=sys.stderr)
            continue
        method_scores[vectors[0].method] = by_pair(vectors)
    matrix = correlation_matrix(method_scores, mode=args.mode)
    rows = [
        [method] + [f"{value:+.3f}" for value in matrix.values[i]]
        for i, method in enumerate(matrix.methods)
    ]
    print(_fmt_table(rows, ["method"] + list(matrix.methods)))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(matrix.to_record(), sort_keys=True) + "\n")
    return 0


def cmd_positions(args) -> int:
    pairs = load_pairs(args.corpus)
    gold = _resolve_gold(args, pairs)
    stats = position_stats(gold.values())
    os.makedirs(args.out_dir, exist_ok=True)
    exports = {
        "positions.tsv": histogram_tsv(stats.position_histogram(), "position"),
        "intervals.tsv": histogram_tsv(stats.interval_histogram(), "interval"),
        "source_counts.tsv": histogram_tsv(stats.count_histogram(), "n_sources"),
    }
    for name, content in exports.items():
        path = os.path.join(args.out_dir, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(content)
        print(path)
    return 0


def _resolve_rule(args, pairs, gold) -> SelectionRule | None:
    if args.threshold is not None:
        return SelectionRule(threshold=args.threshold)
    if args.top_k is not None:
        return SelectionRule(top_k=args.top_k)
    return None  # per-pair gold-count rule


def _iter_selections(args):
    vectors = load_score_vectors(args.scores)
    pairs = load_pairs(args.corpus) if args.corpus else []
    by_id = {p.pair_id: p for p in pairs}
    gold = {}
    if getattr(args, "gold", None):
        gold = load_gold(args.gold)
    elif args.annotations:
        if not pairs:
            raise SystemExit("--annotations needs --corpus to resolve sentence counts")
        records = load_annotations(args.annotations, pairs)
        gold = gold_for_corpus(pairs, records, skip_unannotated=True)
    rule = _resolve_rule(args, pairs, gold)
    if rule is None and not gold:
        raise SystemExit("give --threshold or --top-k (or --annotations/--gold for per-pair gold counts)")
    for vec in vectors:
        pair_rule = rule
        if pair_rule is None:
            gl = gold.get(vec.pair_id)
            if gl is None or gl.n_sources == 0:
                continue
            pair_rule = SelectionRule(top_k=gl.n_sources)
        yield by_id.get(vec.pair_id), select_sources(vec, pair_rule)


def cmd_select(args) -> int:
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for _, selection in _iter_selections(args):
            out.write(json.dumps(selection.to_record(), sort_keys=True) + "\n")
    finally:
        if args.out:
            out.close()
    return 0


def cmd_export_srconly(args) -> int:
    if not args.corpus:
        raise SystemExit("export needs --corpus")
    exported = []
    for pair, selection in _iter_selections(args):
        if pair is None:
            raise SystemExit(f"score dump references pair {selection.pair_id!r} missing from the corpus")
        if not selection.selected:
            print(f"skipping {pair.pair_id}: empty selection", file=sys.stderr)
            continue
        exported.append(export_filtered_document(pair, selection))
    write_pairs(exported, args.out)
    print(f"wrote {len(exported)} pairs to {args.out}")
    return 0


def cmd_agreement(args) -> int:
    records = load_annotations(args.annotations)
    payload = {
        "n_records": len(records),
        "n_pairs_annotated": len(group_by_pair(records)),
        "sentence_label_alpha": krippendorff_alpha(sentence_label_matrix(records)),
        "reconstructability_alpha": krippendorff_alpha(reconstructability_matrix(records)),
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def cmd_serve(args) -> int:
    config = load_config(args.config)
    print(f"serving on http://127.0.0.1:{args.port} (Ctrl-C to stop)")
    serve(config, args.port, static_dir=args.static_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="srcsent", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="run configured scoring methods")
    p.add_argument("--config", required=True, help="run config JSON path")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("evaluate", help="NDCG/MAP of score dumps against annotations")
    p.add_argument("--corpus", required=True)
    p.add_argument("--annotations", help="per-annotator records to aggregate into gold")
    p.add_argument("--gold", help="pre-aggregated gold file (overrides --annotations)")
    p.add_argument("--scores", nargs="+", required=True, help="score dump files")
    p.add_argument("--by-split", action="store_true", help="report per dataset/origin split")
    p.add_argument("--exponential-gain", action="store_true", help="use 2^votes - 1 as NDCG gain")
    p.add_argument("--out", help="also write reports as JSON lines")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("stats", help="corpus statistics tables")
    p.add_argument("--corpus", required=True)
    p.add_argument("--annotations", help="per-annotator records")
    p.add_argument("--gold", help="pre-aggregated gold file (overrides --annotations)")
    p.add_argument("--by-split", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("correlate", help="method-vs-method score correlation matrix")
    p.add_argument("--scores", nargs="+", required=True)
    p.add_argument("--mode", choices=("pooled", "per_pair_mean"), default="pooled")
    p.add_argument("--out")
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("positions", help="source position/interval/count histograms")
    p.add_argument("--corpus", required=True)
    p.add_argument("--annotations")
    p.add_argument("--gold", help="pre-aggregated gold file (overrides --annotations)")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_positions)

    for name, func in (("select", cmd_select), ("export-srconly", cmd_export_srconly)):
        p = sub.add_parser(name, help=f"{name} from a score dump")
        p.add_argument("--scores", required=True, help="one score dump file")
        p.add_argument("--corpus", required=name == "export-srconly")
        p.add_argument("--annotations", help="for per-pair gold-count top-k")
        p.add_argument("--gold", help="pre-aggregated gold for per-pair top-k")
        p.add_argument("--threshold", type=float)
        p.add_argument("--top-k", type=int)
        p.add_argument("--out", required=name == "export-srconly")
        p.set_defaults(func=func)

    p = sub.add_parser("agreement", help="Krippendorff alpha of an annotation file")
    p.add_argument("--annotations", required=True)
    p.set_defaults(func=cmd_agreement)

    p = sub.add_parser("serve", help="run the annotation/inspection service")
    p.add_argument("--config", required=True)
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--static-dir", help="serve a built UI from this directory")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
