"""Command-line entry point: ``framebias {evaluate,summarize,format,correlate}``.

Exit codes: 0 success, 1 usage/argument error, 2 I/O error, 3 validation error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path

from .bias_metric import COUNT_MODES, NEG_THRESHOLD, POS_THRESHOLD, score_corpus, write_annotations
from .corpus import (
    EvalRecord,
    all_source_text,
    format_mtl_input,
    format_mtl_target,
    load_corpus,
    shuffle_order,
)
from .exceptions import CorpusParseError, SchemaError, ValidationError
from .lexicon import load_lexicon
from .report import MetricReport, config_fingerprint
from .salient_metrics import bleu, rouge_corpus
from .stats import correlation_report, load_annotations
from .summarizer import MAX_WORDS, extract_summary

logger = logging.getLogger("framebias")

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_VALIDATION = 0, 1, 2, 3
LEXICON_ENV = "NEUS_LEXICON"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_jsonl(path) -> list[tuple[int, dict]]:
    rows = []
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusParseError(f"{path}: invalid JSON: {exc.msg}", lineno) from None
            if not isinstance(obj, dict):
                raise SchemaError([(lineno, f"{path}: expected a JSON object")])
            rows.append((lineno, obj))
    return rows


def load_hypotheses(path) -> dict[str, str]:
    """Read ``{"issue_id", "text"}`` JSON lines; later duplicates are an error."""
    hyps: dict[str, str] = {}
    errors = []
    for lineno, obj in _read_jsonl(path):
        if "issue_id" not in obj or "text" not in obj:
            errors.append((lineno, "hypothesis rows need 'issue_id' and 'text'"))
            continue
        iid = str(obj["issue_id"])
        if iid in hyps:
            errors.append((lineno, f"duplicate issue_id {iid!r}"))
            continue
        hyps[iid] = str(obj["text"])
    if errors:
        raise SchemaError(errors)
    return hyps


def load_feqa_scores(path) -> dict[str, float]:
    """Externally computed FeQA scores: JSON lines ``{"issue_id", "score"}``."""
    scores = {}
    for lineno, obj in _read_jsonl(path):
        try:
            scores[str(obj["issue_id"])] = float(obj["score"])
        except (KeyError, TypeError, ValueError):
            raise SchemaError([(lineno, "FeQA rows need 'issue_id' and numeric 'score'")]) from None
    return scores


def _write_jsonl(path, rows) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")


def _one_line(text: str) -> str:
    return " ".join(text.split())


# ---------------------------------------------------------------- evaluate

def evaluate(corpus_path, lexicon_path, *, hypotheses_path=None, baseline=None,
             count_mode="occurrence", pos_threshold=POS_THRESHOLD, neg_threshold=NEG_THRESHOLD,
             feqa_path=None, system_name=None, include_titles=False, out_dir=None) -> MetricReport:
    """Score a system against the neutral references of a corpus.

    Exactly one of ``hypotheses_path`` and ``baseline`` (``"all-source"`` or
    ``"reference"``) must be given. When ``out_dir`` is set, ``report.json``,
    ``report.md`` and ``annotations.jsonl`` are written there.
    """
    if (hypotheses_path is None) == (baseline is None):
        raise UsageError("give exactly one of --hypotheses or --baseline")
    if lexicon_path is None:
        raise UsageError(f"no lexicon: pass --lexicon or set {LEXICON_ENV}")
    # lexicon first so a bad path fails before any scoring work
    lexicon = load_lexicon(lexicon_path)
    triplets = {t.issue_id: t for t in load_corpus(corpus_path)}

    skipped: list[str] = []
    missing: list[str] = []
    if baseline == "all-source":
        hyps = {iid: all_source_text(t, include_titles) for iid, t in triplets.items()}
    elif baseline == "reference":
        hyps = {iid: t.neutral_article for iid, t in triplets.items()}
    elif baseline is not None:
        raise UsageError(f"unknown baseline {baseline!r}")
    else:
        hyps = load_hypotheses(hypotheses_path)
        skipped = sorted(set(hyps) - set(triplets))
        missing = sorted(set(triplets) - set(hyps))
        for iid in skipped:
            logger.warning("hypothesis %s has no matching corpus issue; skipped", iid)

    records = []
    for iid in sorted(set(hyps) & set(triplets)):
        t = triplets[iid]
        records.append(EvalRecord(iid, hyps[iid], t.neutral_article,
                                  (t.left.article, t.center.article, t.right.article)))
    if not records:
        raise ValidationError("no hypotheses could be joined to the corpus")

    bias, per_pair = score_corpus(records, lexicon, pos_threshold=pos_threshold,
                                  neg_threshold=neg_threshold, count_mode=count_mode,
                                  return_pairs=True)
    hyp_texts = [r.hypothesis for r in records]
    ref_texts = [r.reference for r in records]
    rouge = rouge_corpus(hyp_texts, ref_texts)
    bleu_score = bleu(hyp_texts, ref_texts).score

    feqa = None
    if feqa_path is not None:
        table = load_feqa_scores(feqa_path)
        vals = [table[r.issue_id] for r in records if r.issue_id in table]
        if vals:
            feqa = math.fsum(vals) / len(vals)

    if system_name is None:
        system_name = baseline if baseline else Path(hypotheses_path).stem
    report = MetricReport(
        system_name=system_name,
        bias=bias,
        bleu=bleu_score,
        rouge=rouge,
        n_pairs=len(records),
        config_fingerprint=config_fingerprint(pos_threshold, neg_threshold, count_mode),
        feqa_external=feqa,
        skipped_ids=skipped,
        missing_ids=missing,
        lexicon_name=lexicon.source_name,
        config={"pos_threshold": pos_threshold, "neg_threshold": neg_threshold,
                "count_mode": count_mode, "include_titles": include_titles},
    )
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(report.to_json(), encoding="utf-8")
        (out / "report.md").write_text(report.to_markdown(), encoding="utf-8")
        write_annotations(per_pair, out / "annotations.jsonl")
    return report


def _cmd_evaluate(args) -> int:
    report = evaluate(
        args.corpus, args.lexicon, hypotheses_path=args.hypotheses, baseline=args.baseline,
        count_mode=args.count_mode, pos_threshold=args.pos_threshold,
        neg_threshold=args.neg_threshold, feqa_path=args.feqa_scores,
        system_name=args.system_name, include_titles=args.include_titles, out_dir=args.out)
    sys.stdout.write(report.to_markdown())
    return EXIT_OK


# ---------------------------------------------------------------- summarize

def summarize(corpus_path, out_path, max_words: int = MAX_WORDS) -> tuple[int, list[tuple[str, str]]]:
    """Write LexRank summaries as hypothesis JSON lines.

    Returns the number written and a list of ``(issue_id, error)`` failures.
    """
    triplets = load_corpus(corpus_path)
    rows, failures = [], []
    for t in triplets:
        try:
            text = extract_summary([t.left.article, t.center.article, t.right.article], max_words)
        except ValueError as exc:
            failures.append((t.issue_id, str(exc)))
            logger.error("summarize %s failed: %s", t.issue_id, exc)
            continue
        rows.append({"issue_id": t.issue_id, "text": text})
    _write_jsonl(out_path, rows)
    return len(rows), failures


def _cmd_summarize(args) -> int:
    if args.out is None:
        raise UsageError("summarize needs --out")
    n, failures = summarize(args.corpus, args.out, args.max_words)
    print(f"wrote {n} summaries to {args.out}" + (f" ({len(failures)} failed)" if failures else ""))
    return EXIT_OK


# ---------------------------------------------------------------- format

def format_corpus(corpus_path, out_prefix, seed: int = 0) -> tuple[Path, Path]:
    """Emit line-aligned ``<prefix>.src`` / ``<prefix>.tgt`` MTL files.

    Source order is shuffled per issue with :func:`shuffle_order`. Internal
    newlines are collapsed to single spaces so each example stays on one line.
    """
    triplets = load_corpus(corpus_path)
    src = Path(f"{out_prefix}.src")
    tgt = Path(f"{out_prefix}.tgt")
    src.parent.mkdir(parents=True, exist_ok=True)
    with src.open("w", encoding="utf-8", newline="\n") as fs, \
            tgt.open("w", encoding="utf-8", newline="\n") as ft:
        for t in triplets:
            fs.write(_one_line(format_mtl_input(t, shuffle_order(seed, t.issue_id))) + "\n")
            ft.write(_one_line(format_mtl_target(t)) + "\n")
    return src, tgt


def _cmd_format(args) -> int:
    if args.out is None:
        raise UsageError("format needs --out (output prefix)")
    src, tgt = format_corpus(args.corpus, args.out, args.seed)
    print(f"wrote {src} and {tgt}")
    return EXIT_OK


# ---------------------------------------------------------------- correlate

def _cmd_correlate(args) -> int:
    annotations = load_annotations(args.annotations)
    result = correlation_report(annotations, mode=args.mode, exclude_ties=not args.keep_ties)
    print(json.dumps(result, indent=2, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="framebias", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("evaluate", help="score hypotheses against neutral references")
    ev.add_argument("--corpus", required=True)
    src = ev.add_mutually_exclusive_group(required=True)
    src.add_argument("--hypotheses", help="JSON lines of {issue_id, text}")
    src.add_argument("--baseline", choices=["all-source", "reference"])
    ev.add_argument("--lexicon", default=os.environ.get(LEXICON_ENV),
                    help=f"VAD lexicon TSV (default: ${LEXICON_ENV})")
    ev.add_argument("--count-mode", choices=COUNT_MODES, default="occurrence")
    ev.add_argument("--pos-threshold", type=float, default=POS_THRESHOLD)
    ev.add_argument("--neg-threshold", type=float, default=NEG_THRESHOLD)
    ev.add_argument("--feqa-scores", help="JSON lines of externally computed {issue_id, score}")
    ev.add_argument("--system-name")
    ev.add_argument("--include-titles", action="store_true",
                    help="with --baseline all-source, prepend source titles")
    ev.add_argument("--out", help="directory for report.json, report.md, annotations.jsonl")
    ev.set_defaults(func=_cmd_evaluate)

    sm = sub.add_parser("summarize", help="LexRank baseline summaries")
    sm.add_argument("--corpus", required=True)
    sm.add_argument("--out", help="output hypotheses JSONL")
    sm.add_argument("--max-words", type=int, default=MAX_WORDS)
    sm.set_defaults(func=_cmd_summarize)

    fm = sub.add_parser("format", help="emit MTL source/target files")
    fm.add_argument("--corpus", required=True)
    fm.add_argument("--seed", type=int, default=0)
    fm.add_argument("--out", help="output prefix; writes <out>.src and <out>.tgt")
    fm.set_defaults(func=_cmd_format)

    co = sub.add_parser("correlate", help="metric vs. human A/B agreement")
    co.add_argument("--annotations", required=True)
    co.add_argument("--mode", choices=["choice", "graded"], default="choice")
    co.add_argument("--keep-ties", action="store_true")
    co.set_defaults(func=_cmd_correlate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"framebias: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"framebias: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"framebias: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"framebias: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
