"""
Relevance Scoring Tests
"""

import allure
import pandas as pd
import pytest

from fairrank.exceptions import EmptyDocumentSetError, UnknownScorerError
from fairrank.relevance import (
    BM25Scorer, ExternalScorer, LexicalScorer, SyntheticScorer, lexical_score, make_scorer,
    score_pool, tokenize
)
from tests.conftest import F, M, make_document


class FixedScorer:
    name = 'fixed'

    def __init__(self, scores):
        self.scores = scores

    def score(self, query, document):
        return self.scores[document.doc_id]


@allure.feature('Relevance')
@allure.story('Lexical Scorer')
@pytest.mark.relevance
class TestLexicalScore:

    @pytest.mark.parametrize('text, expected', [
        ('advances in quantum physics', 1.0),
        ('history of painting', 0.0),
        ('a physics textbook', 0.5),
    ])
    def test_query_term_coverage(self, text, expected):
        doc = make_document('d1', F, text=text)
        assert lexical_score('quantum physics', doc) == pytest.approx(expected)

    def test_punctuation_and_case_ignored(self):
        assert tokenize('Quantum-Physics, Nobel!') == ['quantum', 'physics', 'nobel']
        doc = make_document('d1', F, text='QUANTUM. physics?')
        assert LexicalScorer().score('quantum physics', doc) == 1.0

    def test_empty_query_scores_zero(self):
        assert lexical_score('', make_document('d1', F, text='anything')) == 0.0

    def test_adding_text_never_lowers_score(self):
        query = 'notable women in quantum physics research'
        words = 'a history of physics with notes on quantum theory and research by women'.split()
        previous = 0.0
        for end in range(len(words) + 1):
            current = lexical_score(query, make_document('d1', F, text=' '.join(words[:end])))
            assert current >= previous
            previous = current
        assert previous == pytest.approx(4 / 6)


@allure.feature('Relevance')
@allure.story('Candidate Pool')
@pytest.mark.relevance
class TestScorePool:

    def test_min_max_normalization(self):
        docs = [make_document(i, F) for i in ('a', 'b', 'c')]
        pool = score_pool('q', docs, 3, FixedScorer({'a': 2.0, 'b': 1.0, 'c': 0.0}))
        assert [c.norm_score for c in pool.candidates] == [1.0, 0.5, 0.0]

    def test_equal_scores_normalize_to_half(self):
        docs = [make_document(i, M) for i in ('a', 'b', 'c')]
        pool = score_pool('q', docs, 3, FixedScorer({'a': 0.7, 'b': 0.7, 'c': 0.7}))
        assert all(c.norm_score == 0.5 for c in pool.candidates)

    def test_keeps_top_n_raw_scores(self):
        scores = {f"d{i}": float(i) for i in range(10)}
        docs = [make_document(d, F) for d in scores]
        pool = score_pool('q', docs, 5, FixedScorer(scores))

        assert len(pool) == 5
        assert {c.doc_id for c in pool.candidates} == {'d5', 'd6', 'd7', 'd8', 'd9'}
        assert all(0.0 <= c.norm_score <= 1.0 for c in pool.candidates)

    def test_pool_smaller_than_n(self):
        docs = [make_document('a', F), make_document('b', M)]
        pool = score_pool('q', docs, 50, FixedScorer({'a': 1.0, 'b': 2.0}))
        assert [c.doc_id for c in pool.candidates] == ['b', 'a']
        assert pool.pool_size_n == 50

    def test_raw_ties_broken_by_doc_id(self):
        docs = [make_document(i, F) for i in ('c', 'a', 'b')]
        pool = score_pool('q', docs, 2, FixedScorer({'a': 1.0, 'b': 1.0, 'c': 1.0}))
        assert [c.doc_id for c in pool.candidates] == ['a', 'b']

    def test_empty_document_set(self):
        with pytest.raises(EmptyDocumentSetError):
            score_pool('q', [], 5, LexicalScorer())


@allure.feature('Relevance')
@allure.story('Other Scorers')
@pytest.mark.relevance
class TestScorers:

    def test_synthetic_scores_are_deterministic_and_in_range(self):
        scorer = SyntheticScorer(seed=3, protected_range=(0.0, 0.5), nonprotected_range=(0.5, 1.0))
        female = make_document('f1', F)
        male = make_document('m1', M)

        again = SyntheticScorer(seed=3, protected_range=(0.0, 0.5), nonprotected_range=(0.5, 1.0))
        assert scorer.score('q', female) == again.score('q', female)
        assert 0.0 <= scorer.score('q', female) <= 0.5
        assert 0.5 <= scorer.score('q', male) <= 1.0
        assert scorer.score('q', female) != scorer.score('other query', female)

    def test_external_scores_match_query_then_topic(self, tmp_path):
        path = tmp_path / 'scores.csv'
        pd.DataFrame({
            'query_id': ['my query', 'T1'],
            'doc_id': ['d1', 'd2'],
            'score': [3.5, 1.25]
        }).to_csv(path, index=False)
        scorer = ExternalScorer(path)

        assert scorer.score('my query', make_document('d1', F)) == 3.5
        assert scorer.score('my query', make_document('d2', M, topic='T1')) == 1.25
        assert scorer.score('my query', make_document('d3', M)) == 0.0
        assert scorer.missing_count == 1

    def test_bm25_prefers_term_frequency(self):
        docs = [
            make_document('a', F, text='physics physics physics lab'),
            make_document('b', M, text='physics history'),
            make_document('c', F, text='painting gallery'),
        ]
        scorer = BM25Scorer(docs)
        scores = {d.doc_id: scorer.score('physics', d) for d in docs}
        assert scores['a'] > scores['b'] > scores['c'] == 0.0

    def test_make_scorer_by_name(self):
        assert isinstance(make_scorer('lexical'), LexicalScorer)
        assert isinstance(make_scorer('synthetic', synthetic_seed=1), SyntheticScorer)
        assert isinstance(make_scorer('bm25', documents=[make_document('a', F, text='x')]), BM25Scorer)
        with pytest.raises(UnknownScorerError):
            make_scorer('dense')
