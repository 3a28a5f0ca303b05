"""
Corpus Loader Tests
"""

import allure
import pandas as pd
import pytest

from fairrank.corpus import GroupLabel, load_corpus, pool_for, truncate_text, write_canonical_csv
from fairrank.exceptions import (
    CorpusError, DuplicateDocIdError, EmptyCorpusError, MissingColumnError,
    UnknownGroupError, UnknownTopicError
)

COLUMNS = ['category', 'category_number', 'doc_id', 'gender', 'entity_name', 'text']


def write_rows(path, rows, columns=COLUMNS):
    pd.DataFrame(rows, columns=columns).to_csv(path, index=False)
    return path


@allure.feature('Corpus')
@allure.story('Loading and Validation')
@pytest.mark.corpus
class TestLoadCorpus:

    def test_four_row_corpus_builds_pools(self, four_row_corpus_csv):
        corpus = load_corpus(four_row_corpus_csv)

        assert len(corpus.documents) == 4
        assert corpus.topics == ['T1', 'T2']
        assert len(corpus.global_pools.protected) == 2
        assert len(corpus.global_pools.non_protected) == 2
        for topic in corpus.topics:
            assert len(pool_for(corpus, topic, GroupLabel.PROTECTED)) == 1
            assert len(pool_for(corpus, topic, GroupLabel.NON_PROTECTED)) == 1

    def test_gender_annotation_is_case_insensitive(self, four_row_corpus_csv):
        corpus = load_corpus(four_row_corpus_csv)
        groups = {d.doc_id: d.group for d in corpus.documents}
        assert groups == {
            'd1': GroupLabel.PROTECTED, 'd2': GroupLabel.NON_PROTECTED,
            'd3': GroupLabel.PROTECTED, 'd4': GroupLabel.NON_PROTECTED
        }

    def test_text_truncated_to_limit(self, tmp_path):
        text = ' '.join(f"w{i}" for i in range(150))
        path = write_rows(tmp_path / 'c.csv', [['T1', 1, 'd1', 'female', 'A', text]])

        corpus = load_corpus(path, truncation_limit=100)
        words = corpus.documents[0].text.split()
        assert len(words) == 100
        assert words[-1] == 'w99'

    def test_duplicate_doc_id_names_row(self, tmp_path):
        path = write_rows(tmp_path / 'c.csv', [
            ['T1', 1, 'd1', 'female', 'A', 'x'],
            ['T1', 1, 'd1', 'male', 'B', 'y'],
        ])
        with pytest.raises(DuplicateDocIdError) as error:
            load_corpus(path)
        assert error.value.row == 3
        assert 'row 3' in str(error.value)

    def test_missing_column_is_named(self, tmp_path):
        path = write_rows(tmp_path / 'c.csv', [['T1', 1, 'd1', 'female', 'A']], COLUMNS[:-1])
        with pytest.raises(MissingColumnError) as error:
            load_corpus(path)
        assert error.value.column == 'text'
        assert "'text'" in str(error.value)

    def test_unknown_gender_rejected_with_row(self, tmp_path):
        path = write_rows(tmp_path / 'c.csv', [
            ['T1', 1, 'd1', 'female', 'A', 'x'],
            ['T1', 1, 'd2', 'unknown', 'B', 'y'],
        ])
        with pytest.raises(UnknownGroupError) as error:
            load_corpus(path)
        assert error.value.row == 3
        assert error.value.column == 'gender'

    def test_empty_required_field_rejected(self, tmp_path):
        path = write_rows(tmp_path / 'c.csv', [['T1', 1, '', 'female', 'A', 'x']])
        with pytest.raises(MissingColumnError) as error:
            load_corpus(path)
        assert error.value.column == 'doc_id'

    def test_empty_text_allowed(self, tmp_path):
        path = write_rows(tmp_path / 'c.csv', [['T1', 1, 'd1', 'female', 'A', '']])
        assert load_corpus(path).documents[0].text == ''

    def test_non_integer_topic_number(self, tmp_path):
        path = write_rows(tmp_path / 'c.csv', [['T1', 'one', 'd1', 'female', 'A', 'x']])
        with pytest.raises(CorpusError, match='category_number'):
            load_corpus(path)

    def test_header_only_corpus(self, tmp_path):
        path = tmp_path / 'c.csv'
        path.write_text(','.join(COLUMNS) + '\n', encoding='utf-8')
        with pytest.raises(EmptyCorpusError):
            load_corpus(path)

    def test_zero_byte_file(self, tmp_path):
        path = tmp_path / 'c.csv'
        path.write_bytes(b'')
        with pytest.raises(EmptyCorpusError, match='empty'):
            load_corpus(path)

    def test_invalid_utf8_rejected(self, tmp_path):
        path = tmp_path / 'c.csv'
        path.write_bytes(','.join(COLUMNS).encode() + b'\nT1,1,d1,female,Ren\xe9e,caf\xe9 owner\n')
        with pytest.raises(CorpusError, match='UTF-8'):
            load_corpus(path)

    def test_ragged_row_rejected(self, tmp_path):
        path = tmp_path / 'c.csv'
        path.write_text(
            ','.join(COLUMNS) + '\n'
            'T1,1,d1,female,A,x\n'
            'T1,1,d2,male,B,y,extra,fields\n',
            encoding='utf-8'
        )
        with pytest.raises(CorpusError, match='well-formed CSV'):
            load_corpus(path)

    def test_reordered_header_rejected(self, tmp_path):
        reordered = ['doc_id', 'category', 'category_number', 'gender', 'entity_name', 'text']
        path = write_rows(tmp_path / 'c.csv', [['d1', 'T1', 1, 'female', 'A', 'x']], reordered)
        with pytest.raises(CorpusError) as error:
            load_corpus(path)
        assert error.value.row == 1

    def test_extra_trailing_column_allowed(self, tmp_path):
        path = write_rows(tmp_path / 'c.csv', [['T1', 1, 'd1', 'female', 'A', 'x', 'note']], COLUMNS + ['notes'])
        assert [d.doc_id for d in load_corpus(path).documents] == ['d1']

    def test_topic_number_reused_by_other_category(self, tmp_path):
        path = write_rows(tmp_path / 'c.csv', [
            ['T1', 1, 'd1', 'female', 'A', 'x'],
            ['T2', 1, 'd2', 'male', 'B', 'y'],
        ])
        with pytest.raises(CorpusError, match="already used by category 'T1'") as error:
            load_corpus(path)
        assert error.value.row == 3
        assert error.value.column == 'category'

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_corpus(tmp_path / 'nope.csv')

    def test_text_overrides_replace_csv_text(self, four_row_corpus_csv, tmp_path):
        overrides = tmp_path / 'overrides'
        overrides.mkdir()
        (overrides / 'd3.txt').write_text('full biography text  from file', encoding='utf-8')

        corpus = load_corpus(four_row_corpus_csv, overrides_dir=overrides)
        texts = {d.doc_id: d.text for d in corpus.documents}
        assert texts['d3'] == 'full biography text from file'
        assert texts['d4'] == 'physicist'

    def test_override_with_invalid_utf8_names_row(self, four_row_corpus_csv, tmp_path):
        overrides = tmp_path / 'overrides'
        overrides.mkdir()
        (overrides / 'd2.txt').write_bytes(b'computer scientist \xff\xfe')

        with pytest.raises(CorpusError, match='d2.txt') as error:
            load_corpus(four_row_corpus_csv, overrides_dir=overrides)
        assert error.value.row == 3
        assert error.value.column == 'text'


@allure.feature('Corpus')
@allure.story('Pools')
@pytest.mark.corpus
class TestPools:

    def test_pool_for_returns_topic_group_documents(self, four_row_corpus_csv):
        corpus = load_corpus(four_row_corpus_csv)
        assert [d.doc_id for d in pool_for(corpus, 'T1', GroupLabel.PROTECTED)] == ['d1']
        assert [d.doc_id for d in pool_for(corpus, 'T1', GroupLabel.NON_PROTECTED)] == ['d2']

    def test_unknown_topic(self, four_row_corpus_csv):
        corpus = load_corpus(four_row_corpus_csv)
        with pytest.raises(UnknownTopicError):
            pool_for(corpus, 'T9', GroupLabel.PROTECTED)

    def test_pools_partition_documents(self, sample_corpus):
        for topic in sample_corpus.topics:
            protected = pool_for(sample_corpus, topic, GroupLabel.PROTECTED)
            non_protected = pool_for(sample_corpus, topic, GroupLabel.NON_PROTECTED)
            assert not {d.doc_id for d in protected} & {d.doc_id for d in non_protected}
            assert all(d.topic_id == topic for d in protected + non_protected)
        assert len(sample_corpus.global_pools.all()) == len(sample_corpus.documents)


@allure.feature('Corpus')
@allure.story('Canonical Output')
@pytest.mark.corpus
class TestCanonicalCsv:

    def test_truncate_text_collapses_whitespace(self):
        assert truncate_text('  a   b\n c  d ', 3) == 'a b c'

    @pytest.mark.parametrize('limit', [1, 3, 7, 50])
    def test_truncate_text_is_idempotent(self, limit):
        text = ' \t'.join(f"word{i}" for i in range(20)) + '\n trailing'
        once = truncate_text(text, limit)
        assert truncate_text(once, limit) == once
        assert len(once.split()) == min(limit, 21)

    def test_written_corpus_reloads_identically(self, four_row_corpus_csv, tmp_path):
        corpus = load_corpus(four_row_corpus_csv)
        out = write_canonical_csv(corpus, tmp_path / 'out' / 'canonical.csv')

        assert list(pd.read_csv(out).columns) == COLUMNS
        assert load_corpus(out).documents == corpus.documents
