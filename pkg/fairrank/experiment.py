"""
Experiment Runner
Orchestrates trials across scenarios, topics, rankers and seeds, then
aggregates trial records and compares rankers pairwise
"""

import dataclasses
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import allure
import numpy as np
import pandas as pd
from allure_commons.types import AttachmentType

from config.config import EXPERIMENT_CONFIG, GENERATOR_CONFIG, RANKER_CONFIG, RELEVANCE_CONFIG, REPORT_SETTINGS
from fairrank.corpus import Corpus, Document, GroupLabel, load_corpus, pool_for
from fairrank.exceptions import (
    ConfigError, EndpointError, ExperimentAbortedError, ExperimentError, FairRankError,
    TooFewSamplesError, TrialError, UnknownMetricError
)
from fairrank.generation import (
    GeneratorSimParams, PromptSpec, SCENARIO_IDS, build_prompt, call_chat_endpoint,
    citation_counts, parse_citations, scenario_question, simulate_generation
)
from fairrank.metrics import GenerationMetrics, RetrievalMetrics, generation_metrics, retrieval_metrics
from fairrank.ranking import (
    ForcedExposureParams, RepresentativeParams, StochasticParams, rank
)
from fairrank.relevance import CandidatePool, Scorer, make_scorer, score_pool
from fairrank.stats import SummaryStats, TTestResult, summarize, t_test
from utils.logger import get_logger, log_data, log_performance, log_step

logger = get_logger('experiment')

_TRUE = {'1', 'true', 'yes', 'on'}
_FALSE = {'0', 'false', 'no', 'off'}


def _parse_int_list(value: Any) -> Tuple[int, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(int(v) for v in value)
    return tuple(int(v) for v in str(value).split(',') if v.strip())


def _parse_str_list(value: Any) -> Tuple[str, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(str(v).strip() for v in value if str(v).strip())
    return tuple(v.strip() for v in str(value).split(',') if v.strip())


def _coerce(key: str, value: Any, default: Any) -> Any:
    """Convert a raw config value to the type of its default"""
    if key == 'scenarios':
        return _parse_int_list(value)
    if key == 'topics':
        return _parse_str_list(value)
    if isinstance(default, bool):
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in _TRUE:
            return True
        if text in _FALSE:
            return False
        raise ValueError(f"expected a boolean, got {value!r}")
    if isinstance(default, int):
        return int(str(value).strip())
    if isinstance(default, float):
        return float(str(value).strip())
    return str(value).strip()


@dataclass(frozen=True)
class ExperimentConfig:
    corpus_path: str = EXPERIMENT_CONFIG['corpus_path']
    overrides_dir: str = EXPERIMENT_CONFIG['overrides_dir']
    truncation_limit: int = EXPERIMENT_CONFIG['truncation_limit']
    scorer_name: str = EXPERIMENT_CONFIG['scorer_name']
    external_scores_path: str = EXPERIMENT_CONFIG['external_scores_path']
    synthetic_seed: int = EXPERIMENT_CONFIG['synthetic_seed']
    protected_score_low: float = EXPERIMENT_CONFIG['protected_score_low']
    protected_score_high: float = EXPERIMENT_CONFIG['protected_score_high']
    nonprotected_score_low: float = EXPERIMENT_CONFIG['nonprotected_score_low']
    nonprotected_score_high: float = EXPERIMENT_CONFIG['nonprotected_score_high']
    ranker_name: str = EXPERIMENT_CONFIG['ranker_name']
    k: int = EXPERIMENT_CONFIG['k']
    pool_size_n: int = EXPERIMENT_CONFIG['pool_size_n']
    trials_per_ranker: int = EXPERIMENT_CONFIG['trials_per_ranker']
    scenarios: Tuple[int, ...] = _parse_int_list(EXPERIMENT_CONFIG['scenarios'])
    topics: Tuple[str, ...] = _parse_str_list(EXPERIMENT_CONFIG['topics'])
    candidate_scope: str = EXPERIMENT_CONFIG['candidate_scope']
    base_seed: int = EXPERIMENT_CONFIG['base_seed']
    generator_mode: str = EXPERIMENT_CONFIG['generator_mode']
    alpha: float = EXPERIMENT_CONFIG['alpha']
    gamma: float = EXPERIMENT_CONFIG['gamma']
    tau: float = EXPERIMENT_CONFIG['tau']
    min_per_group: int = EXPERIMENT_CONFIG['min_per_group']
    feasibility_guard: bool = EXPERIMENT_CONFIG['feasibility_guard']
    num_citations: int = EXPERIMENT_CONFIG['num_citations']
    position_bias_beta: float = EXPERIMENT_CONFIG['position_bias_beta']
    group_bias_b: float = EXPERIMENT_CONFIG['group_bias_b']
    hallucination_prob_h: float = EXPERIMENT_CONFIG['hallucination_prob_h']
    workers: int = EXPERIMENT_CONFIG['workers']
    failure_threshold: float = EXPERIMENT_CONFIG['failure_threshold']
    alpha_level: float = EXPERIMENT_CONFIG['alpha_level']
    z_threshold: float = EXPERIMENT_CONFIG['z_threshold']
    endpoint_url: str = EXPERIMENT_CONFIG['endpoint_url']
    endpoint_model: str = EXPERIMENT_CONFIG['endpoint_model']
    endpoint_temperature: float = EXPERIMENT_CONFIG['endpoint_temperature']
    endpoint_api_key_env: str = EXPERIMENT_CONFIG['endpoint_api_key_env']
    requests_per_minute: float = EXPERIMENT_CONFIG['requests_per_minute']

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Any]) -> 'ExperimentConfig':
        """Build a config from raw key/value pairs; unknown keys are rejected"""
        values = {}
        for key, raw in mapping.items():
            if key not in EXPERIMENT_CONFIG:
                raise ConfigError(f"unknown config key '{key}'")
            try:
                values[key] = _coerce(key, raw, EXPERIMENT_CONFIG[key])
            except ValueError as e:
                raise ConfigError(f"invalid value for config key '{key}': {e}") from None
        return cls(**values)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> 'ExperimentConfig':
        """Parse a flat 'key = value' file with '#' comments"""
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        mapping: Dict[str, str] = {}
        for number, line in enumerate(path.read_text(encoding='utf-8').splitlines(), start=1):
            stripped = line.split('#', 1)[0].strip()
            if not stripped:
                continue
            if '=' not in stripped:
                raise ConfigError(f"{path.name} line {number}: expected 'key = value', got {line!r}")
            key, value = (part.strip() for part in stripped.split('=', 1))
            mapping[key] = value
        config = cls.from_mapping(mapping)
        # relative corpus/score paths resolve against the config file's directory
        resolved = {}
        for key in ('corpus_path', 'overrides_dir', 'external_scores_path'):
            value = getattr(config, key)
            if value and not Path(value).is_absolute():
                resolved[key] = str((path.parent / value).resolve())
        return dataclasses.replace(config, **resolved)

    def with_overrides(self, **overrides: Any) -> 'ExperimentConfig':
        clean = {k: v for k, v in overrides.items() if v is not None}
        for key, value in list(clean.items()):
            if key not in EXPERIMENT_CONFIG:
                raise ConfigError(f"unknown config key '{key}'")
            clean[key] = _coerce(key, value, EXPERIMENT_CONFIG[key])
        return dataclasses.replace(self, **clean)

    def validate(self) -> 'ExperimentConfig':
        """Check cross-field constraints before any trial runs"""
        problems = []
        if self.k < 1:
            problems.append(f"k must be positive, got {self.k}")
        if self.pool_size_n < 1:
            problems.append(f"pool_size_n must be positive, got {self.pool_size_n}")
        if self.k > self.pool_size_n:
            problems.append(f"k ({self.k}) must not exceed pool_size_n ({self.pool_size_n})")
        if self.trials_per_ranker < 2:
            problems.append(f"trials_per_ranker must be at least 2, got {self.trials_per_ranker}")
        if not self.scenarios:
            problems.append("scenarios must not be empty")
        bad_scenarios = [s for s in self.scenarios if s not in SCENARIO_IDS]
        if bad_scenarios:
            problems.append(f"unknown scenarios {bad_scenarios}; expected a subset of {list(SCENARIO_IDS)}")
        if self.ranker_name not in RANKER_CONFIG['rankers']:
            problems.append(f"unknown ranker_name '{self.ranker_name}'; expected one of {RANKER_CONFIG['rankers']}")
        if self.scorer_name not in RELEVANCE_CONFIG['scorers']:
            problems.append(f"unknown scorer_name '{self.scorer_name}'; expected one of {RELEVANCE_CONFIG['scorers']}")
        if self.generator_mode not in GENERATOR_CONFIG['modes']:
            problems.append(f"unknown generator_mode '{self.generator_mode}'; expected one of {GENERATOR_CONFIG['modes']}")
        if self.candidate_scope not in ('topic', 'global'):
            problems.append(f"candidate_scope must be 'topic' or 'global', got '{self.candidate_scope}'")
        if self.alpha < 0:
            problems.append(f"alpha must be non-negative, got {self.alpha}")
        if self.gamma < 0:
            problems.append(f"gamma must be non-negative, got {self.gamma}")
        if not 0.0 <= self.tau <= 1.0:
            problems.append(f"tau must lie in [0, 1], got {self.tau}")
        if self.min_per_group != -1 and not 0 <= 2 * self.min_per_group <= self.k:
            problems.append(f"min_per_group={self.min_per_group} needs 0 <= 2*min_per_group <= k={self.k}")
        if self.workers < 1:
            problems.append(f"workers must be positive, got {self.workers}")
        if not 0.0 <= self.failure_threshold <= 1.0:
            problems.append(f"failure_threshold must lie in [0, 1], got {self.failure_threshold}")
        for group, low, high in (('protected', self.protected_score_low, self.protected_score_high),
                                 ('nonprotected', self.nonprotected_score_low, self.nonprotected_score_high)):
            if low > high:
                problems.append(f"{group}_score_low ({low}) must not exceed {group}_score_high ({high})")
        if self.scorer_name == 'external' and not self.external_scores_path:
            problems.append("scorer_name 'external' needs external_scores_path")
        if problems:
            raise ConfigError('; '.join(problems))
        try:
            self.sim_params()
        except FairRankError as e:
            raise ConfigError(str(e)) from None
        return self

    def ranker_params(self):
        if self.ranker_name == 'stochastic':
            return StochasticParams(alpha=self.alpha)
        if self.ranker_name == 'forced':
            return ForcedExposureParams(None if self.min_per_group == -1 else self.min_per_group)
        if self.ranker_name == 'representative':
            return RepresentativeParams(
                alpha=self.alpha, tau=self.tau, gamma=self.gamma,
                feasibility_guard=self.feasibility_guard
            )
        return None

    def sim_params(self) -> GeneratorSimParams:
        return GeneratorSimParams(
            num_citations=self.num_citations,
            position_bias_beta=self.position_bias_beta,
            group_bias_b=self.group_bias_b,
            hallucination_prob_h=self.hallucination_prob_h
        )

    def endpoint_config(self) -> dict:
        return {
            'url': self.endpoint_url,
            'model': self.endpoint_model,
            'temperature': self.endpoint_temperature,
            'api_key_env': self.endpoint_api_key_env,
            'requests_per_minute': self.requests_per_minute
        }

    def to_text(self) -> str:
        """Render back to the 'key = value' format, one key per line"""
        lines = []
        for key in EXPERIMENT_CONFIG:
            value = getattr(self, key)
            if isinstance(value, tuple):
                value = ','.join(str(v) for v in value)
            elif isinstance(value, bool):
                value = str(value).lower()
            lines.append(f"{key} = {value}")
        return '\n'.join(lines) + '\n'


@dataclass
class TrialRecord:
    trial_id: int
    scenario_id: int
    topic_id: str
    ranker_name: str
    seed: int
    doc_ids: List[str] = field(default_factory=list)
    groups: List[str] = field(default_factory=list)
    retrieval: Optional[RetrievalMetrics] = None
    generation: Optional[GenerationMetrics] = None
    citation_count: int = 0
    grounded_count: int = 0
    ungrounded_count: int = 0
    duplicate_count: int = 0
    quota_infeasible: bool = False
    failed: bool = False
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'TrialRecord':
        values = dict(data)
        if values.get('retrieval') is not None:
            values['retrieval'] = RetrievalMetrics(**values['retrieval'])
        if values.get('generation') is not None:
            values['generation'] = GenerationMetrics(**values['generation'])
        return cls(**values)

    def metric_values(self) -> Dict[str, Optional[float]]:
        """Flat metric view used for aggregation"""
        retrieval = self.retrieval
        generation = self.generation
        return {
            'exposure_share': retrieval.exposure_share_protected if retrieval else None,
            'exposure_disparity': retrieval.exposure_disparity if retrieval else None,
            'count_share': retrieval.count_share_protected if retrieval else None,
            'generation_parity': generation.demographic_parity if generation else None,
            'utility': generation.utility if generation else None,
            'fairness_gap': generation.fairness_gap if generation else None,
            'fairness_gap_magnitude': generation.fairness_gap_magnitude if generation else None
        }


@dataclass(frozen=True)
class TrialAssignment:
    trial_id: int
    scenario_id: int
    topic_id: str
    seed: int


def enumerate_trials(config: ExperimentConfig, topics: Sequence[str]) -> List[TrialAssignment]:
    """Cycle (scenario, topic) pairs, topic-major, until trials_per_ranker is reached"""
    pairs = [(scenario, topic) for topic in topics for scenario in config.scenarios]
    if not pairs:
        raise ConfigError("no (scenario, topic) pairs to run")
    return [
        TrialAssignment(i, pairs[i % len(pairs)][0], pairs[i % len(pairs)][1], config.base_seed + i)
        for i in range(config.trials_per_ranker)
    ]


def build_scorer(config: ExperimentConfig, corpus: Corpus) -> Scorer:
    return make_scorer(
        config.scorer_name,
        documents=corpus.documents,
        external_scores_path=config.external_scores_path or None,
        synthetic_seed=config.synthetic_seed,
        protected_range=(config.protected_score_low, config.protected_score_high),
        nonprotected_range=(config.nonprotected_score_low, config.nonprotected_score_high)
    )


def candidate_documents(corpus: Corpus, topic_id: str, scope: str) -> List[Document]:
    if scope == 'global':
        return corpus.global_pools.all()
    return pool_for(corpus, topic_id, GroupLabel.PROTECTED) + pool_for(corpus, topic_id, GroupLabel.NON_PROTECTED)


def run_trial(
    assignment: TrialAssignment,
    pool: CandidatePool,
    config: ExperimentConfig,
    connector=None
) -> TrialRecord:
    """Rank, generate, parse and score one trial"""
    rng = np.random.default_rng(assignment.seed)
    ranked = rank(config.ranker_name, pool, config.k, config.ranker_params(), rng)
    record = TrialRecord(
        trial_id=assignment.trial_id,
        scenario_id=assignment.scenario_id,
        topic_id=assignment.topic_id,
        ranker_name=config.ranker_name,
        seed=assignment.seed,
        doc_ids=ranked.doc_ids,
        groups=[g.value for g in ranked.groups],
        quota_infeasible=bool(ranked.infeasible_groups)
    )
    retrieval = retrieval_metrics(ranked)
    record.retrieval = retrieval

    if config.generator_mode == 'endpoint':
        prompt = build_prompt(PromptSpec.for_context(assignment.scenario_id, assignment.topic_id, ranked))
        try:
            output = call_chat_endpoint(prompt, config.endpoint_config(), connector=connector)
        except EndpointError as e:
            record.failed = True
            record.error = f"{type(e).__name__}: {e}"
            logger.warning(f"Trial {assignment.trial_id} endpoint failure: {record.error}")
            return record
    else:
        output = simulate_generation(ranked, config.sim_params(), rng)

    citations = parse_citations(output, ranked)
    counts = citation_counts(citations)
    record.generation = generation_metrics(citations, ranked, retrieval.exposure_share_protected)
    record.citation_count = counts['citations']
    record.grounded_count = counts['grounded']
    record.ungrounded_count = counts['ungrounded']
    record.duplicate_count = counts['duplicates']
    return record


def run_experiment(
    config: ExperimentConfig,
    corpus: Optional[Corpus] = None,
    scorer: Optional[Scorer] = None,
    connector=None
) -> List[TrialRecord]:
    """
    Run every trial of one ranker configuration

    Args:
        config: validated experiment configuration
        corpus: preloaded corpus (loaded from config.corpus_path when omitted)
        scorer: relevance scorer (built from config when omitted)
        connector: shared ChatEndpointConnector for endpoint mode

    Returns:
        Trial records in trial order

    Raises:
        ConfigError: invalid configuration
        TrialError: a simulated trial failed
        ExperimentAbortedError: too many endpoint trials failed
    """
    config.validate()
    start = time.time()
    with allure.step(f'Run experiment: {config.ranker_name}'):
        log_step(f"Run experiment: ranker={config.ranker_name} trials={config.trials_per_ranker}")
        if corpus is None:
            if not config.corpus_path:
                raise ConfigError("corpus_path is not set")
            corpus = load_corpus(config.corpus_path, config.truncation_limit, config.overrides_dir or None)
        topics = list(config.topics) or corpus.topics
        for topic in topics:
            pool_for(corpus, topic, GroupLabel.PROTECTED)  # raises UnknownTopicError early

        assignments = enumerate_trials(config, topics)
        scorer = scorer or build_scorer(config, corpus)

        # scoring depends only on (scenario, topic); do it once per pair, in order
        pools: Dict[Tuple[int, str], CandidatePool] = {}
        for a in assignments:
            key = (a.scenario_id, a.topic_id)
            if key not in pools:
                documents = candidate_documents(corpus, a.topic_id, config.candidate_scope)
                pools[key] = score_pool(scenario_question(*key), documents, config.pool_size_n, scorer)

        own_connector = None
        if config.generator_mode == 'endpoint' and connector is None:
            from fairrank.chat_client import ChatEndpointConnector
            own_connector = connector = ChatEndpointConnector(config.endpoint_config()).connect()

        def execute(a: TrialAssignment) -> TrialRecord:
            try:
                return run_trial(a, pools[(a.scenario_id, a.topic_id)], config, connector)
            except FairRankError as e:
                raise TrialError(a.trial_id, e) from e

        try:
            if config.workers > 1:
                with ThreadPoolExecutor(max_workers=config.workers) as pool:
                    records = list(pool.map(execute, assignments))
            else:
                records = [execute(a) for a in assignments]
        finally:
            if own_connector is not None:
                own_connector.close()

        failed = sum(1 for r in records if r.failed)
        log_data("Experiment Summary", {
            "Ranker": config.ranker_name,
            "Trials": len(records),
            "Failed": failed,
            "Pools scored": len(pools)
        })
        allure.attach(
            f"Ranker: {config.ranker_name}\nTrials: {len(records)}\nFailed: {failed}\n"
            f"Base seed: {config.base_seed}",
            'Experiment Summary',
            AttachmentType.TEXT
        )
        if records and failed / len(records) > config.failure_threshold:
            raise ExperimentAbortedError(
                f"{failed} of {len(records)} trials failed "
                f"(threshold {config.failure_threshold:.0%})",
                records=records
            )
    log_performance(f"Experiment {config.ranker_name}", time.time() - start)
    return records


def records_to_frame(records: Iterable[TrialRecord]) -> pd.DataFrame:
    rows = []
    for record in records:
        row = {
            'trial_id': record.trial_id,
            'ranker': record.ranker_name,
            'failed': record.failed
        }
        row.update(record.metric_values())
        rows.append(row)
    columns = ['trial_id', 'ranker', 'failed'] + REPORT_SETTINGS['aggregate_metrics']
    return pd.DataFrame(rows, columns=columns)


def ordered_rankers(names: Iterable[str]) -> List[str]:
    order = REPORT_SETTINGS['ranker_order']
    names = set(names)
    return [r for r in order if r in names] + sorted(names - set(order))


@dataclass
class Aggregates:
    """Per-ranker, per-metric summaries with undefined-value exclusion counts"""
    stats: Dict[Tuple[str, str], SummaryStats] = field(default_factory=dict)
    excluded: Dict[Tuple[str, str], int] = field(default_factory=dict)

    @property
    def rankers(self) -> List[str]:
        return ordered_rankers(r for r, _ in self.stats)

    @property
    def metrics(self) -> List[str]:
        seen = {m for _, m in self.stats}
        return [m for m in REPORT_SETTINGS['aggregate_metrics'] if m in seen] + sorted(
            seen - set(REPORT_SETTINGS['aggregate_metrics']))

    def get(self, ranker: str, metric: str) -> SummaryStats:
        try:
            return self.stats[(ranker, metric)]
        except KeyError:
            raise UnknownMetricError(f"no summary for ranker '{ranker}', metric '{metric}'") from None

    @classmethod
    def from_summaries(cls, metric: str, summaries: Mapping[str, SummaryStats]) -> 'Aggregates':
        """Wrap externally reported summary rows for one metric"""
        return cls(stats={(ranker, metric): s for ranker, s in summaries.items()},
                   excluded={(ranker, metric): 0 for ranker in summaries})

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for ranker in self.rankers:
            for metric in self.metrics:
                if (ranker, metric) not in self.stats:
                    continue
                s = self.stats[(ranker, metric)]
                rows.append({
                    'ranker': ranker, 'metric': metric, 'n': s.n, 'mean': s.mean,
                    'std': s.std, 'outliers': s.outlier_count,
                    'excluded': self.excluded.get((ranker, metric), 0)
                })
        return pd.DataFrame(rows, columns=['ranker', 'metric', 'n', 'mean', 'std', 'outliers', 'excluded'])


def aggregate(records: Sequence[TrialRecord], z_threshold: float = EXPERIMENT_CONFIG['z_threshold']) -> Aggregates:
    """
    Summaries per ranker and metric over successful trials

    Trials with undefined generation parity are excluded from the parity-derived
    metrics and counted. A metric with fewer than two defined values is omitted.

    Raises:
        TooFewSamplesError: a ranker has fewer than two successful trials
    """
    frame = records_to_frame(records)
    frame = frame[~frame['failed']]
    result = Aggregates()
    for ranker in ordered_rankers(frame['ranker'].unique()):
        subset = frame[frame['ranker'] == ranker]
        if len(subset) < 2:
            raise TooFewSamplesError(
                f"ranker '{ranker}' has {len(subset)} successful trials; need at least 2")
        for metric in REPORT_SETTINGS['aggregate_metrics']:
            values = subset[metric].dropna().astype(float)
            excluded = len(subset) - len(values)
            if len(values) < 2:
                logger.warning(f"Skipping {ranker}/{metric}: only {len(values)} defined values")
                continue
            result.stats[(ranker, metric)] = summarize(values.to_numpy(), z_threshold)
            result.excluded[(ranker, metric)] = excluded
    return result


@dataclass(frozen=True)
class PairwiseComparison:
    metric: str
    ranker_a: str
    ranker_b: str
    result: TTestResult


@dataclass
class SignificanceMatrix:
    metric: str
    alpha_level: float
    comparisons: List[PairwiseComparison]

    def __len__(self) -> int:
        return len(self.comparisons)

    def lookup(self, ranker_a: str, ranker_b: str) -> TTestResult:
        for c in self.comparisons:
            if (c.ranker_a, c.ranker_b) == (ranker_a, ranker_b):
                return c.result
            if (c.ranker_b, c.ranker_a) == (ranker_a, ranker_b):
                return dataclasses.replace(c.result, t_value=-c.result.t_value)
        raise KeyError(f"no comparison between '{ranker_a}' and '{ranker_b}'")

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    'metric': c.metric, 'ranker_a': c.ranker_a, 'ranker_b': c.ranker_b,
                    't': c.result.t_value, 'df': c.result.df, 'critical_t': c.result.critical_t,
                    'significant': c.result.significant, 'p_value': c.result.p_value
                }
                for c in self.comparisons
            ],
            columns=['metric', 'ranker_a', 'ranker_b', 't', 'df', 'critical_t', 'significant', 'p_value']
        )


def compare(aggregates: Aggregates, metric_name: str, alpha_level: float = EXPERIMENT_CONFIG['alpha_level']) -> SignificanceMatrix:
    """All pairwise t-tests for one metric, in ranker order"""
    if metric_name not in aggregates.metrics:
        raise UnknownMetricError(
            f"metric '{metric_name}' not in aggregates; available: {aggregates.metrics}")
    rankers = [r for r in aggregates.rankers if (r, metric_name) in aggregates.stats]
    if len(rankers) < 2:
        raise ExperimentError(f"need at least 2 rankers to compare, got {rankers}")
    comparisons = []
    for i, a in enumerate(rankers):
        for b in rankers[i + 1:]:
            result = t_test(aggregates.get(a, metric_name), aggregates.get(b, metric_name), alpha_level)
            comparisons.append(PairwiseComparison(metric_name, a, b, result))
    return SignificanceMatrix(metric=metric_name, alpha_level=alpha_level, comparisons=comparisons)
