"""
FairRank exception hierarchy
Every error raised by the package derives from FairRankError
"""

from typing import Optional


class FairRankError(Exception):
    """Base class for all FairRank errors"""


# --- Corpus ---

class CorpusError(FairRankError, ValueError):
    """Corpus ingestion failure, optionally tied to a CSV line and column"""

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        self.row = row
        self.column = column
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class MissingColumnError(CorpusError):
    pass


class UnknownGroupError(CorpusError):
    pass


class DuplicateDocIdError(CorpusError):
    pass


class EmptyCorpusError(CorpusError):
    pass


class UnknownTopicError(FairRankError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else 'unknown topic'


# --- Relevance ---

class RelevanceError(FairRankError, ValueError):
    pass


class EmptyDocumentSetError(RelevanceError):
    pass


class UnknownScorerError(RelevanceError):
    pass


# --- Ranking ---

class RankingError(FairRankError, ValueError):
    pass


class EmptyPoolError(RankingError):
    pass


# --- Metrics ---

class MetricsError(FairRankError, ValueError):
    pass


class EmptyListError(MetricsError):
    pass


# --- Generation ---

class GenerationError(FairRankError, ValueError):
    pass


class EmptyContextError(GenerationError):
    pass


class EndpointError(FairRankError):
    """Chat endpoint failure"""


class NetworkError(EndpointError):
    pass


class AuthError(EndpointError):
    pass


class RateLimitedError(EndpointError):
    pass


class MalformedResponseError(EndpointError):
    pass


# --- Stats ---

class StatsError(FairRankError, ValueError):
    pass


class TooFewSamplesError(StatsError):
    pass


class UnequalNError(StatsError):
    pass


class DegenerateVarianceError(StatsError):
    pass


class UnsupportedAlphaError(StatsError):
    pass


# --- Configuration / experiment ---

class ConfigError(FairRankError, ValueError):
    pass


class ExperimentError(FairRankError):
    pass


class TrialError(ExperimentError):
    """A trial failed; carries the trial id and the underlying cause"""

    def __init__(self, trial_id: int, cause: BaseException):
        self.trial_id = trial_id
        self.cause = cause
        super().__init__(f"trial {trial_id} failed: {type(cause).__name__}: {cause}")


class ExperimentAbortedError(ExperimentError):
    def __init__(self, message: str, records=None):
        self.records = records or []
        super().__init__(message)


class UnknownMetricError(ExperimentError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else 'unknown metric'


class UnsupportedFormatError(FairRankError, ValueError):
    pass
