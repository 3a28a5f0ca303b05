"""
Pytest Fixtures for FairRank
Provides reusable corpora, candidate pools and published summary rows
"""

from typing import Iterable, Sequence, Tuple

import numpy as np
import pandas as pd
import pytest

from fairrank.corpus import Document, GroupLabel, build_corpus
from fairrank.relevance import CandidatePool, ScoredCandidate, SyntheticScorer, score_pool
from fairrank.stats import SummaryStats
from utils.create_sample_data import build_sample_frame

F = GroupLabel.PROTECTED
M = GroupLabel.NON_PROTECTED

# Published summary rows (n = 80): mean, std per ranker
PUBLISHED_ROWS = {
    'exposure_disparity': {
        'standard': (0.4188, 0.1413),
        'stochastic': (0.4077, 0.0741),
        'forced': (0.2517, 0.1017),
        'representative': (0.0430, 0.0638),
    },
    'exposure_share': {
        'standard': (0.1250, 0.2349),
        'stochastic': (0.0941, 0.0763),
        'forced': (0.2921, 0.1753),
        'representative': (0.5229, 0.0736),
    },
}


def make_document(doc_id: str, group: GroupLabel, topic: str = 'T1', title: str = None,
                  text: str = '') -> Document:
    return Document(
        doc_id=doc_id,
        topic_id=topic,
        topic_number=1,
        group=group,
        title=title or f"Person {doc_id}",
        text=text
    )


def make_pool(items: Iterable[Tuple[str, GroupLabel, float]], query: str = 'q') -> CandidatePool:
    """Pool from (doc_id, group, norm_score) triples; raw score = norm score"""
    candidates = tuple(
        ScoredCandidate(make_document(doc_id, group), score, score)
        for doc_id, group, score in items
    )
    return CandidatePool(query=query, candidates=candidates, pool_size_n=len(candidates))


def skewed_documents(per_group: int = 25) -> Sequence[Document]:
    return [make_document(f"F{i:02d}", F) for i in range(per_group)] + \
           [make_document(f"M{i:02d}", M) for i in range(per_group)]


def skewed_pool(trial: int, per_group: int = 25, seed: int = 7) -> CandidatePool:
    """50/50 pool with protected scores ~U(0, 0.5) and non-protected ~U(0.5, 1)"""
    scorer = SyntheticScorer(seed=seed, protected_range=(0.0, 0.5), nonprotected_range=(0.5, 1.0))
    return score_pool(f"trial {trial}", skewed_documents(per_group), 2 * per_group, scorer)


@pytest.fixture
def pool_factory():
    return make_pool


@pytest.fixture
def four_row_corpus_csv(tmp_path):
    path = tmp_path / 'corpus.csv'
    pd.DataFrame(
        [
            ['T1', 1, 'd1', 'female', 'Ada Lovelace', 'mathematician and writer'],
            ['T1', 1, 'd2', 'male', 'Alan Turing', 'mathematician and computer scientist'],
            ['T2', 2, 'd3', 'Female', 'Marie Curie', 'physicist and chemist'],
            ['T2', 2, 'd4', 'MALE', 'Niels Bohr', 'physicist'],
        ],
        columns=['category', 'category_number', 'doc_id', 'gender', 'entity_name', 'text']
    ).to_csv(path, index=False)
    return path


@pytest.fixture
def sample_corpus_csv(tmp_path):
    """Balanced synthetic corpus: 2 topics x 2 groups x 6 entries"""
    path = tmp_path / 'sample_corpus.csv'
    build_sample_frame(topics=('Physics', 'Painting'), per_group=6, seed=3).to_csv(path, index=False)
    return path


@pytest.fixture
def sample_corpus(sample_corpus_csv):
    from fairrank.corpus import load_corpus
    return load_corpus(sample_corpus_csv)


@pytest.fixture
def tiny_corpus():
    return build_corpus([
        make_document('d1', F, 'T1', 'Ada Lovelace', 'mathematician'),
        make_document('d2', M, 'T1', 'Alan Turing', 'mathematician'),
        make_document('d3', F, 'T2', 'Marie Curie', 'physicist'),
        make_document('d4', M, 'T2', 'Niels Bohr', 'physicist'),
    ])


@pytest.fixture
def published_summaries():
    """{metric: {ranker: SummaryStats}} built from the published means and stds"""
    return {
        metric: {ranker: SummaryStats(n=80, mean=mean, std=std) for ranker, (mean, std) in rows.items()}
        for metric, rows in PUBLISHED_ROWS.items()
    }


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(autouse=True)
def no_api_key(monkeypatch):
    """Endpoint tests opt in to a key explicitly"""
    monkeypatch.delenv('FAIRRANK_API_KEY', raising=False)
