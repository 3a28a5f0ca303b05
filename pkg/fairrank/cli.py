"""
FairRank command line
Subcommands: ingest, run, analyze, report
"""

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import pandas as pd

from config.config import RANKER_CONFIG, REPORT_SETTINGS, STATS_CONFIG
from fairrank import __version__
from fairrank.corpus import load_corpus, write_canonical_csv
from fairrank.exceptions import (
    ConfigError, CorpusError, ExperimentAbortedError, FairRankError, StatsError,
    UnknownMetricError, UnknownTopicError, UnsupportedFormatError
)
from fairrank.experiment import ExperimentConfig, aggregate, compare, run_experiment
from fairrank.report_generator import ReportGenerator
from fairrank.run_store import TTESTS_FILE, find_run_dirs, load_records, write_run, write_ttests
from utils.logger import get_logger, log_step, log_warning

logger = get_logger('cli')

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Bad command-line input detected after argument parsing"""


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_ingest(args) -> int:
    log_step(f"Ingest corpus {args.corpus}")
    corpus = load_corpus(args.corpus, args.truncate, args.overrides)
    write_canonical_csv(corpus, args.out)
    summary = corpus.summary()
    print(f"{summary['documents']} documents, {summary['protected']} protected, "
          f"{summary['non_protected']} non-protected")
    return EXIT_OK


def _ranker_names(value: Optional[str], default: str) -> List[str]:
    names = [n.strip() for n in (value or default).split(',') if n.strip()]
    if names == ['all']:
        return list(RANKER_CONFIG['rankers'])
    return names


def cmd_run(args) -> int:
    config = ExperimentConfig.from_file(args.config)
    config = config.with_overrides(
        base_seed=args.seed, trials_per_ranker=args.trials, workers=args.workers
    )
    rankers = _ranker_names(args.ranker, config.ranker_name)
    configs = [config.with_overrides(ranker_name=name).validate() for name in rankers]

    corpus = load_corpus(config.corpus_path, config.truncation_limit, config.overrides_dir or None)
    records = []
    for ranker_config in configs:
        # several rankers -> one run directory per ranker under --out
        out = Path(args.out) / ranker_config.ranker_name if len(configs) > 1 else Path(args.out)
        try:
            ranker_records = run_experiment(ranker_config, corpus=corpus)
        except ExperimentAbortedError as e:
            # keep the failed trials on disk for inspection
            write_run(out, e.records, config=ranker_config)
            log_warning(f"{ranker_config.ranker_name}: run aborted, {len(e.records)} trial records kept in {out}")
            raise
        records.extend(ranker_records)
        write_run(out, ranker_records, aggregate(ranker_records, config.z_threshold), ranker_config)

    aggregates = aggregate(records, config.z_threshold)

    for ranker in aggregates.rankers:
        share = aggregates.get(ranker, 'exposure_share')
        disparity = aggregates.get(ranker, 'exposure_disparity')
        failed = sum(1 for r in records if r.ranker_name == ranker and r.failed)
        print(f"{ranker}: trials={share.n} failed={failed} "
              f"exposure_share mean={share.mean:.4f} exposure_disparity mean={disparity.mean:.4f}")
    return EXIT_OK


def _collect_runs(paths: Sequence[str]) -> List[Path]:
    run_dirs: List[Path] = []
    for path in paths:
        for run_dir in find_run_dirs(path):
            if run_dir not in run_dirs:
                run_dirs.append(run_dir)
    return run_dirs


def _load_all(run_dirs: Sequence[Path]) -> list:
    records = []
    owner = {}
    for run_dir in run_dirs:
        for record in load_records(run_dir):
            first = owner.setdefault(record.ranker_name, run_dir)
            if first != run_dir:
                raise UsageError(
                    f"ranker '{record.ranker_name}' appears in both {first} and {run_dir}")
            records.append(record)
    return records


def cmd_analyze(args) -> int:
    run_dirs = _collect_runs(args.runs)
    if len(run_dirs) < 2:
        raise UsageError(f"analyze needs at least 2 run directories, found {len(run_dirs)}")
    records = _load_all(run_dirs)
    matrix = compare(aggregate(records), args.metric, args.alpha)
    frame = matrix.to_frame()

    out = Path(os.path.commonpath([str(p.resolve()) for p in run_dirs])) / TTESTS_FILE
    write_ttests(out, [frame])

    with pd.option_context('display.width', 200, 'display.max_columns', None):
        print(frame.to_string(index=False, float_format=lambda v: f"{v:.4f}"))
    print(f"\nWrote {out}")
    return EXIT_OK


def cmd_report(args) -> int:
    run_dirs = _collect_runs(args.runs)
    if not run_dirs:
        raise UsageError(f"no run directories with results under {', '.join(args.runs)}")
    suffix = Path(args.out).suffix.lower()
    if suffix not in REPORT_SETTINGS['supported_extensions']:
        raise UnsupportedFormatError(
            f"unsupported report format '{suffix or args.out}'; "
            f"use one of {REPORT_SETTINGS['supported_extensions']}"
        )
    aggregates = aggregate(_load_all(run_dirs))
    path = ReportGenerator(aggregates).save(args.out)
    print(f"Wrote {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='fairrank',
        description='Fairness-aware ranking experiments for retrieval-augmented generation'
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', metavar='{ingest,run,analyze,report}')
    sub.required = True

    ingest = sub.add_parser('ingest', help='Validate and normalize a corpus CSV')
    ingest.add_argument('--corpus', required=True, help='Input corpus CSV')
    ingest.add_argument('--overrides', help='Directory of <doc_id>.txt text overrides')
    ingest.add_argument('--truncate', type=int, default=100, help='Maximum words per text (default 100)')
    ingest.add_argument('--out', required=True, help='Canonical CSV to write')
    ingest.set_defaults(handler=cmd_ingest)

    run = sub.add_parser('run', help='Run trials for one or more rankers')
    run.add_argument('--config', required=True, help='Run config file (key = value lines)')
    run.add_argument('--ranker', help="Ranker name, comma-separated names, or 'all'")
    run.add_argument('--seed', type=int, help='Base seed (overrides base_seed)')
    run.add_argument('--trials', type=int, help='Trials per ranker (overrides trials_per_ranker)')
    run.add_argument('--workers', type=int, help='Worker threads (overrides workers)')
    run.add_argument('--out', required=True, help='Run directory to write (parent of one per ranker when several)')
    run.set_defaults(handler=cmd_run)

    analyze = sub.add_parser('analyze', help='Pairwise t-tests between rankers')
    analyze.add_argument('--runs', nargs='+', required=True, help='Run directories (or their parent)')
    analyze.add_argument('--metric', required=True, help='Metric to compare, e.g. exposure_disparity')
    analyze.add_argument('--alpha', type=float, default=STATS_CONFIG['alpha_level'],
                         help='Significance level: 0.01 or 0.05 (default 0.01)')
    analyze.set_defaults(handler=cmd_analyze)

    report = sub.add_parser('report', help='Grouped-bar chart of aggregate means')
    report.add_argument('--runs', nargs='+', required=True, help='Run directories (or their parent)')
    report.add_argument('--out', required=True, help='Output path ending in .svg, .csv or .xlsx')
    report.set_defaults(handler=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments and dispatch

    Returns:
        0 on success, 1 on runtime failure, 2 on usage or validation errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        return args.handler(args)
    except (UsageError, ConfigError, CorpusError, UnknownMetricError, UnknownTopicError,
            UnsupportedFormatError, FileNotFoundError) as e:
        return _fail(str(e), EXIT_USAGE)
    except StatsError as e:
        # unsupported alpha level / too few samples are input problems
        return _fail(str(e), EXIT_USAGE)
    except ExperimentAbortedError as e:
        return _fail(f"experiment aborted: {e}", EXIT_RUNTIME)
    except FairRankError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return _fail(str(e), EXIT_RUNTIME)
