"""
Run Store
Persists trial records, aggregates and t-test tables for a run directory and
reloads them for analysis and reporting
"""

import json
import os
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Union

import datacompy
import pandas as pd

from fairrank.exceptions import ExperimentError
from utils.logger import get_logger, log_verification

logger = get_logger('run_store')

TRIALS_FILE = 'trials.jsonl'
AGGREGATE_FILE = 'aggregate.csv'
CONFIG_FILE = 'run_config.txt'
TTESTS_FILE = 'ttests.csv'


@contextmanager
def atomic_output(path: Union[str, Path]) -> Iterator[Path]:
    """Yield a temp path next to `path`; it replaces `path` only if the block succeeds"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix='.tmp', dir=path.parent)
    os.close(fd)
    tmp = Path(tmp_name)
    try:
        yield tmp
        os.replace(tmp, path)
    finally:
        if tmp.exists():
            tmp.unlink()


def atomic_write_text(path: Union[str, Path], text: str) -> Path:
    with atomic_output(path) as tmp:
        with open(tmp, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
    return Path(path)


def records_to_jsonl(records: Sequence) -> str:
    return ''.join(json.dumps(r.to_dict(), sort_keys=True) + '\n' for r in records)


def write_run(run_dir: Union[str, Path], records: Sequence, aggregates=None, config=None) -> Path:
    """
    Write trials.jsonl, aggregate.csv and (optionally) run_config.txt

    Args:
        run_dir: output directory, created if missing
        records: TrialRecords in trial order
        aggregates: Aggregates computed from the same records; None skips aggregate.csv
        config: ExperimentConfig snapshot

    Returns:
        The run directory
    """
    run_dir = Path(run_dir)
    atomic_write_text(run_dir / TRIALS_FILE, records_to_jsonl(records))
    if aggregates is not None:
        atomic_write_text(
            run_dir / AGGREGATE_FILE,
            aggregates.to_frame().to_csv(index=False, lineterminator='\n')
        )
    if config is not None:
        atomic_write_text(run_dir / CONFIG_FILE, config.to_text())
    logger.info(f"[RUN] Wrote {len(records)} records to {run_dir}")
    return run_dir


def load_records(run_dir: Union[str, Path]) -> List:
    from fairrank.experiment import TrialRecord

    path = Path(run_dir) / TRIALS_FILE
    if not path.exists():
        raise ExperimentError(f"no {TRIALS_FILE} in {run_dir}")
    records = []
    with open(path, encoding='utf-8') as f:
        for number, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                records.append(TrialRecord.from_dict(json.loads(line)))
            except (ValueError, TypeError) as e:
                raise ExperimentError(f"{path.name} line {number}: {e}") from None
    return records


def load_aggregate(run_dir: Union[str, Path]) -> pd.DataFrame:
    path = Path(run_dir) / AGGREGATE_FILE
    if not path.exists():
        raise ExperimentError(f"no {AGGREGATE_FILE} in {run_dir}")
    return pd.read_csv(path)


def find_run_dirs(root: Union[str, Path]) -> List[Path]:
    """A run dir itself, or the run dirs directly beneath it, in name order"""
    root = Path(root)
    if (root / TRIALS_FILE).exists():
        return [root]
    if not root.is_dir():
        return []
    return sorted(p for p in root.iterdir() if (p / TRIALS_FILE).exists())


def write_ttests(path: Union[str, Path], frames: Sequence[pd.DataFrame]) -> Path:
    frame = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame()
    return atomic_write_text(path, frame.to_csv(index=False, lineterminator='\n'))


def verify_reaggregation(run_dir: Union[str, Path], abs_tol: float = 1e-12,
                         z_threshold: Optional[float] = None) -> bool:
    """
    Re-aggregate trials.jsonl and compare with aggregate.csv

    Returns:
        True when every (ranker, metric) row matches within abs_tol
    """
    from fairrank.experiment import aggregate

    kwargs = {} if z_threshold is None else {'z_threshold': z_threshold}
    recomputed = aggregate(load_records(run_dir), **kwargs).to_frame()
    stored = load_aggregate(run_dir)

    compare = datacompy.Compare(
        df1=stored,
        df2=recomputed,
        join_columns=['ranker', 'metric'],
        abs_tol=abs_tol,
        df1_name='aggregate_csv',
        df2_name='reaggregated'
    )
    matches = compare.matches()
    log_verification(f"Re-aggregation of {Path(run_dir).name}", matches,
                     f"{compare.count_matching_rows()} of {len(stored)} rows match")
    if not matches:
        logger.debug(compare.report())
    return matches
