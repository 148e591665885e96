"""Command-line entry point: ``refdistill {score,sample,calibrate,stats,split,grid}``.

Exit codes: 0 success, 1 input/output or corpus problems, 2 bad flags or
sampling expressions.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .corpus_io import (
    DEFAULT_BEAM_SIZE,
    emit_dataset,
    load_dataset,
    load_nbest,
    load_parallel,
    split_corpus,
    whitespace_token_count,
    write_parallel,
)
from .dsl import expand_sum_metrics, load_jobs, parse
from .errors import InputError, ParseError, RefDistillError
from .grid import grid_job_file
from .metrics import MetricKind, SubwordSegmenter, score_groups
from .sampler import calibrate_threshold, eval_job, rank_groups
from .scorefile import COLUMNS, quantize_group, read_scores, write_scores
from .stats import overlap, report

logger = logging.getLogger("refdistill")

SCORES_HELP = (
    "Scores TSV columns (tab-separated, header row first): "
    + ", ".join(COLUMNS)
    + ". Metric values are fixed-point with 6 decimals; TER and SP are negated so "
    "higher is better; score is the decoder log-probability per output token."
)


class UsageError(InputError):
    pass


def _add_inputs(p: argparse.ArgumentParser, scores: bool = True) -> None:
    g = p.add_argument_group("inputs")
    g.add_argument("--src", required=True, help="source side, one sentence per line")
    g.add_argument("--ref", required=True, help="reference translations, aligned with --src")
    g.add_argument("--nbest", required=True,
                   help="teacher n-best list: 'id ||| text ||| features ||| logprob'")
    g.add_argument("--beam-size", type=int, default=DEFAULT_BEAM_SIZE,
                   help="maximum hypotheses per sentence (default: %(default)s)")
    g.add_argument("--segmenter", choices=("whitespace", "merge_table"), default="whitespace",
                   help="subword units for the SP length metric")
    g.add_argument("--merges", help="merge table (one 'left right' rule per line)")
    g.add_argument("--norm-unit", choices=("whitespace", "subword"), default="whitespace",
                   help="token unit dividing the decoder log-probability (default: whitespace)")
    g.add_argument("--workers", type=int, default=1, help="scoring processes (default: 1)")
    if scores:
        g.add_argument("--scores", help="reuse a scores TSV written by 'refdistill score'")


def _segmenter(args) -> SubwordSegmenter:
    if args.segmenter == "merge_table":
        if not args.merges:
            raise UsageError("--segmenter merge_table requires --merges FILE")
        return SubwordSegmenter.from_file(args.merges)
    if args.merges:
        raise UsageError("--merges only applies with --segmenter merge_table")
    return SubwordSegmenter()


def _load_scored(args):
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    if args.beam_size < 1:
        raise UsageError("--beam-size must be >= 1")
    seg = _segmenter(args)
    corpus = load_parallel(args.src, args.ref)
    token_count = seg.count if args.norm_unit == "subword" else whitespace_token_count
    groups, load_report = load_nbest(args.nbest, corpus, args.beam_size, token_count)
    if getattr(args, "scores", None):
        scored = read_scores(args.scores, groups)
    else:
        # values pass through the TSV precision so both paths rank identically
        scored = [quantize_group(g) for g in score_groups(groups, seg, workers=args.workers)]
    return corpus, scored


def cmd_score(args) -> int:
    _, scored = _load_scored(args)
    rows = write_scores(scored, args.out)
    logger.info("wrote %d rows to %s", rows, args.out)
    return 0


def _jobs(args):
    if bool(args.expr) == bool(args.jobs):
        raise UsageError("give exactly one of --expr or --jobs")
    if args.expr:
        if "/" in args.name or not args.name:
            raise UsageError(f"invalid job name {args.name!r}")
        return [(args.name, parse(args.expr))]
    return load_jobs(args.jobs)


def _write_json(obj, path: str | None) -> None:
    text = json.dumps(obj, ensure_ascii=False)
    if path:
        with open(path, "a", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        print(text)


def cmd_sample(args) -> int:
    jobs = [(name, expand_sum_metrics(e)) for name, e in _jobs(args)]
    corpus, scored = _load_scored(args)
    ranked = rank_groups(scored)
    datasets = eval_job(jobs, ranked, corpus)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.report:
        Path(args.report).write_text("")
    for name, _ in jobs:
        d = datasets[name]
        emit_dataset(d, out_dir / f"{name}.src", out_dir / f"{name}.tgt", args.shuffle_seed)
        rec = {"job": name, **report(d, ranked, corpus)}
        (out_dir / f"{name}.report.json").write_text(
            json.dumps(rec, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
        _write_json(rec, args.report)
    return 0


def cmd_calibrate(args) -> int:
    if args.lo > args.hi:
        raise UsageError(f"invalid band: --lo {args.lo} > --hi {args.hi}")
    metric = MetricKind.from_name(args.metric)
    _, scored = _load_scored(args)
    cal = calibrate_threshold(metric, scored, args.lo, args.hi)
    print(json.dumps({
        "metric": metric.value,
        "threshold": cal.threshold,
        "ratio": cal.ratio,
        "not_exact": cal.not_exact,
    }))
    return 0


def cmd_stats(args) -> int:
    if args.dataset:
        corpus = load_parallel(args.src, args.ref)
        d = load_dataset(f"{args.dataset}.src", f"{args.dataset}.tgt")
        _write_json({"dataset": args.dataset, **report(d, None, corpus)}, args.report)
        return 0
    if not args.nbest:
        raise UsageError("--nbest is required unless --dataset is given")
    metrics = [MetricKind.from_name(m) for m in args.metrics.split(",") if m]
    if len(metrics) < 2:
        raise UsageError("--metrics needs at least two comma-separated metrics")
    if args.overlap_n < 1:
        raise UsageError("--overlap-n must be >= 1")
    _, scored = _load_scored(args)
    value = overlap(metrics, args.overlap_n, scored)
    _write_json({"overlap": value, "metrics": [m.value for m in metrics],
                 "n_top": args.overlap_n}, args.report)
    return 0


def cmd_split(args) -> int:
    corpus = load_parallel(args.src, args.ref)
    parts = split_corpus(corpus, args.dev, args.test, args.seed)
    for name, part in zip(("train", "dev", "test"), parts):
        write_parallel(part, f"{args.prefix}.{name}.src", f"{args.prefix}.{name}.ref")
    print(json.dumps({name: len(p) for name, p in zip(("train", "dev", "test"), parts)}))
    return 0


def cmd_grid(args) -> int:
    sys.stdout.write(grid_job_file())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="refdistill",
        description="Build distillation datasets from teacher n-best lists and references.",
        epilog=SCORES_HELP,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="score every hypothesis against its reference",
                       description=SCORES_HELP)
    _add_inputs(p, scores=False)
    p.add_argument("--out", required=True, help="scores TSV to write")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("sample", help="build datasets from sampling expressions",
                       epilog=SCORES_HELP)
    _add_inputs(p)
    p.add_argument("--expr", help="sampling expression, e.g. 'S^{4,3,2,1}_bleu + 4xOriginal'")
    p.add_argument("--name", default="sample", help="output name for --expr (default: sample)")
    p.add_argument("--jobs", help="job file: one 'name<TAB>expression' per line")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--shuffle-seed", type=int, default=None)
    p.add_argument("--report", help="also append one JSON report per job to this file")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("calibrate", help="find a threshold giving lo..hi times the corpus size",
                       epilog=SCORES_HELP)
    _add_inputs(p)
    p.add_argument("--metric", required=True, choices=[m.value for m in MetricKind])
    p.add_argument("--lo", type=float, default=1.0)
    p.add_argument("--hi", type=float, default=1.5)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("stats", help="top-n overlap between metrics, or a dataset report",
                       epilog=SCORES_HELP)
    p.add_argument("--src", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--nbest")
    p.add_argument("--beam-size", type=int, default=DEFAULT_BEAM_SIZE)
    p.add_argument("--segmenter", choices=("whitespace", "merge_table"), default="whitespace")
    p.add_argument("--merges")
    p.add_argument("--norm-unit", choices=("whitespace", "subword"), default="whitespace")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--scores")
    p.add_argument("--overlap-n", type=int, default=1)
    p.add_argument("--metrics", default="bleu,chrf,ter,sp,score")
    p.add_argument("--dataset", help="report on PREFIX.src / PREFIX.tgt instead")
    p.add_argument("--report", help="append the JSON result to this file instead of stdout")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("split", help="seeded train/dev/test split of a parallel corpus")
    p.add_argument("--src", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--dev", type=int, required=True)
    p.add_argument("--test", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prefix", required=True, help="writes PREFIX.{train,dev,test}.{src,ref}")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("grid", help="print the built-in experiment grid as a job file")
    p.set_defaults(func=cmd_grid)
    return parser


def _error(msg: str) -> None:
    if sys.stderr.isatty() and "NO_COLOR" not in os.environ:
        msg = f"\033[31m{msg}\033[0m"
    print(msg, file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(levelname)s: %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        _error(f"refdistill: error: invalid sampling expression {exc}\n{exc.caret()}")
        return 2
    except InputError as exc:
        _error(f"refdistill: error: {exc}")
        return 2
    except (RefDistillError, OSError, ValueError) as exc:
        if isinstance(exc, OSError) and exc.filename:
            _error(f"refdistill: error: {exc.strerror}: {exc.filename}")
        else:
            _error(f"refdistill: error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
