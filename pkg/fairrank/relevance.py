"""
Relevance Scoring
Scores a query against candidate documents behind a pluggable scorer seam and
builds min-max normalized candidate pools
"""

import math
import re
import zlib
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Protocol, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from config.config import RELEVANCE_CONFIG
from fairrank.corpus import Document, GroupLabel
from fairrank.exceptions import EmptyDocumentSetError, RelevanceError, UnknownScorerError
from utils.logger import get_logger

logger = get_logger('relevance')

_WORD = re.compile(r"\w+", re.UNICODE)


def tokenize(text: str) -> List[str]:
    """Lowercased word tokens with punctuation stripped"""
    return _WORD.findall(str(text).lower())


@dataclass(frozen=True)
class ScoredCandidate:
    document: Document
    raw_score: float
    norm_score: float

    @property
    def doc_id(self) -> str:
        return self.document.doc_id

    @property
    def group(self) -> GroupLabel:
        return self.document.group


@dataclass(frozen=True)
class CandidatePool:
    query: str
    candidates: Tuple[ScoredCandidate, ...]
    pool_size_n: int

    def __len__(self) -> int:
        return len(self.candidates)

    def by_group(self, group: GroupLabel) -> List[ScoredCandidate]:
        return [c for c in self.candidates if c.group is group]


class Scorer(Protocol):
    """Anything mapping (query, document) to a raw relevance score"""
    name: str

    def score(self, query: str, document: Document) -> float:
        ...


def lexical_score(query: str, document: Document) -> float:
    """Fraction of distinct query terms that occur in the document text"""
    query_terms = set(tokenize(query))
    if not query_terms:
        return 0.0
    doc_terms = set(tokenize(document.text))
    return len(query_terms & doc_terms) / len(query_terms)


class LexicalScorer:
    name = 'lexical'

    def score(self, query: str, document: Document) -> float:
        return lexical_score(query, document)


class SyntheticScorer:
    """
    Draws scores from per-group uniform ranges

    The draw for a (query, doc_id) pair is seeded from (seed, crc32(query), crc32(doc_id)),
    so scores are reproducible and independent of evaluation order.
    """
    name = 'synthetic'

    def __init__(
        self,
        seed: int = RELEVANCE_CONFIG['synthetic']['seed'],
        protected_range: Tuple[float, float] = (
            RELEVANCE_CONFIG['synthetic']['protected_score_low'],
            RELEVANCE_CONFIG['synthetic']['protected_score_high']
        ),
        nonprotected_range: Tuple[float, float] = (
            RELEVANCE_CONFIG['synthetic']['nonprotected_score_low'],
            RELEVANCE_CONFIG['synthetic']['nonprotected_score_high']
        )
    ):
        for low, high in (protected_range, nonprotected_range):
            if low > high:
                raise RelevanceError(f"synthetic score range ({low}, {high}) is inverted")
        self.seed = int(seed)
        self.ranges = {
            GroupLabel.PROTECTED: (float(protected_range[0]), float(protected_range[1])),
            GroupLabel.NON_PROTECTED: (float(nonprotected_range[0]), float(nonprotected_range[1]))
        }

    def score(self, query: str, document: Document) -> float:
        rng = np.random.default_rng([
            self.seed,
            zlib.crc32(query.encode('utf-8')),
            zlib.crc32(document.doc_id.encode('utf-8'))
        ])
        low, high = self.ranges[document.group]
        return float(rng.uniform(low, high))


class ExternalScorer:
    """
    Reads precomputed raw scores from a CSV with columns query_id, doc_id, score

    query_id is matched against the query text first, then against the
    document's topic id. Missing pairs score 0.0 and are counted.
    """
    name = 'external'

    def __init__(self, path: Union[str, Path]):
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"External scores file not found: {path}")
        df = pd.read_csv(path, dtype={'query_id': str, 'doc_id': str})
        missing = {'query_id', 'doc_id', 'score'} - set(df.columns)
        if missing:
            raise RelevanceError(f"external scores file {path} lacks columns {sorted(missing)}")
        self.scores: Dict[Tuple[str, str], float] = {
            (str(q).strip(), str(d).strip()): float(s)
            for q, d, s in df[['query_id', 'doc_id', 'score']].itertuples(index=False, name=None)
        }
        self.missing_count = 0
        logger.info(f"Loaded {len(self.scores)} external scores from {path.name}")

    def score(self, query: str, document: Document) -> float:
        for key in ((query, document.doc_id), (document.topic_id, document.doc_id)):
            if key in self.scores:
                return self.scores[key]
        self.missing_count += 1
        logger.debug(f"No external score for doc {document.doc_id}; using 0.0")
        return 0.0


class BM25Scorer:
    """Okapi BM25 over a fixed document collection"""
    name = 'bm25'

    def __init__(
        self,
        documents: Iterable[Document],
        k1: float = RELEVANCE_CONFIG['bm25']['k1'],
        b: float = RELEVANCE_CONFIG['bm25']['b']
    ):
        self.k1 = k1
        self.b = b
        self.tf: Dict[str, Counter] = {}
        self.doc_len: Dict[str, int] = {}
        doc_freq: Counter = Counter()
        for doc in documents:
            tokens = tokenize(doc.text)
            self.tf[doc.doc_id] = Counter(tokens)
            self.doc_len[doc.doc_id] = len(tokens)
            doc_freq.update(set(tokens))
        n_docs = len(self.tf)
        self.avgdl = (sum(self.doc_len.values()) / n_docs) if n_docs else 0.0
        self.idf = {
            term: math.log(1 + (n_docs - df + 0.5) / (df + 0.5))
            for term, df in doc_freq.items()
        }

    def score(self, query: str, document: Document) -> float:
        tf = self.tf.get(document.doc_id)
        if tf is None:
            tf = Counter(tokenize(document.text))
            dl = sum(tf.values())
        else:
            dl = self.doc_len[document.doc_id]
        dl = dl or 1
        total = 0.0
        for term in set(tokenize(query)):
            freq = tf.get(term, 0)
            if not freq:
                continue
            denom = freq + self.k1 * (1.0 - self.b + self.b * dl / (self.avgdl or 1.0))
            total += self.idf.get(term, 0.0) * freq * (self.k1 + 1.0) / denom
        return total


def make_scorer(
    name: str,
    documents: Optional[Sequence[Document]] = None,
    external_scores_path: Optional[Union[str, Path]] = None,
    synthetic_seed: int = RELEVANCE_CONFIG['synthetic']['seed'],
    protected_range: Optional[Tuple[float, float]] = None,
    nonprotected_range: Optional[Tuple[float, float]] = None
) -> Scorer:
    """Build a scorer by its configured name"""
    if name == 'lexical':
        return LexicalScorer()
    if name == 'synthetic':
        kwargs = {'seed': synthetic_seed}
        if protected_range is not None:
            kwargs['protected_range'] = protected_range
        if nonprotected_range is not None:
            kwargs['nonprotected_range'] = nonprotected_range
        return SyntheticScorer(**kwargs)
    if name == 'external':
        if not external_scores_path:
            raise RelevanceError("scorer 'external' needs external_scores_path")
        return ExternalScorer(external_scores_path)
    if name == 'bm25':
        return BM25Scorer(documents or [])
    raise UnknownScorerError(
        f"unknown scorer {name!r}; expected one of {RELEVANCE_CONFIG['scorers']}"
    )


def score_pool(query: str, documents: Sequence[Document], n: int, scorer: Scorer) -> CandidatePool:
    """
    Score documents, keep the top n and min-max normalize over the kept set

    Args:
        query: retrieval query text
        documents: candidate documents
        n: candidate pool size
        scorer: relevance scorer

    Returns:
        CandidatePool sorted by descending raw score, ties by ascending doc_id

    Raises:
        EmptyDocumentSetError: no documents supplied
    """
    if not documents:
        raise EmptyDocumentSetError(f"no documents to score for query {query!r}")
    if n < 1:
        raise RelevanceError(f"pool size must be positive, got {n}")

    scored = [(float(scorer.score(query, doc)), doc) for doc in documents]
    scored.sort(key=lambda item: (-item[0], item[1].doc_id))
    kept = scored[:n]

    raw = np.array([s for s, _ in kept], dtype=float)
    low, high = raw.min(), raw.max()
    if high == low:
        norm = np.full(len(raw), RELEVANCE_CONFIG['degenerate_norm_score'])
    else:
        norm = (raw - low) / (high - low)

    candidates = tuple(
        ScoredCandidate(document=doc, raw_score=float(r), norm_score=float(v))
        for (_, doc), r, v in zip(kept, raw, norm)
    )
    return CandidatePool(query=query, candidates=candidates, pool_size_n=n)
