"""
Corpus Loader
Loads a TREC-Fair-Ranking-style CSV, normalizes documents and builds the
per-topic and global demographic pools
"""

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

import pandas as pd

from config.config import CORPUS_CONFIG
from fairrank.exceptions import (
    CorpusError, DuplicateDocIdError, EmptyCorpusError, MissingColumnError,
    UnknownGroupError, UnknownTopicError
)
from utils.logger import get_logger

logger = get_logger('corpus')

REQUIRED_COLUMNS = CORPUS_CONFIG['columns']


class GroupLabel(str, Enum):
    PROTECTED = 'Protected'
    NON_PROTECTED = 'NonProtected'

    @property
    def gender(self) -> str:
        """Annotation written back to canonical CSV"""
        return 'female' if self is GroupLabel.PROTECTED else 'male'

    @classmethod
    def decode(cls, annotation: str, row: Optional[int] = None) -> 'GroupLabel':
        """Map a gender annotation (case-insensitive) to a group"""
        value = CORPUS_CONFIG['group_mapping'].get(str(annotation).strip().lower())
        if value is None:
            raise UnknownGroupError(
                f"gender annotation {annotation!r} is not one of "
                f"{sorted(CORPUS_CONFIG['group_mapping'])}",
                row=row, column='gender'
            )
        return cls(value)


@dataclass(frozen=True)
class Document:
    doc_id: str
    topic_id: str
    topic_number: int
    group: GroupLabel
    title: str
    text: str


@dataclass(frozen=True)
class TopicPools:
    protected: Tuple[Document, ...]
    non_protected: Tuple[Document, ...]

    def for_group(self, group: GroupLabel) -> Tuple[Document, ...]:
        return self.protected if group is GroupLabel.PROTECTED else self.non_protected

    def all(self) -> List[Document]:
        return list(self.protected) + list(self.non_protected)


@dataclass(frozen=True)
class Corpus:
    """Immutable document collection with demographic pools"""
    documents: Tuple[Document, ...]
    topic_pools: Dict[str, TopicPools] = field(hash=False)
    global_pools: TopicPools

    @property
    def topics(self) -> List[str]:
        """Topic ids in first-seen file order"""
        return list(self.topic_pools)

    def summary(self) -> Dict[str, int]:
        return {
            'documents': len(self.documents),
            'protected': len(self.global_pools.protected),
            'non_protected': len(self.global_pools.non_protected),
            'topics': len(self.topic_pools)
        }


def truncate_text(text: str, limit: int) -> str:
    """Collapse whitespace and keep the first `limit` whitespace-delimited words"""
    if limit < 1:
        raise ValueError(f"truncation limit must be positive, got {limit}")
    return ' '.join(str(text).split()[:limit])


def build_corpus(documents: Iterable[Document]) -> Corpus:
    """
    Build pools from documents, preserving input order

    Raises:
        EmptyCorpusError: no documents
        DuplicateDocIdError: a doc_id repeats
    """
    documents = tuple(documents)
    if not documents:
        raise EmptyCorpusError("corpus contains no documents")

    seen = set()
    topic_groups: Dict[str, Dict[GroupLabel, List[Document]]] = {}
    for doc in documents:
        if doc.doc_id in seen:
            raise DuplicateDocIdError(f"duplicate doc_id {doc.doc_id!r}", column='doc_id')
        seen.add(doc.doc_id)
        groups = topic_groups.setdefault(
            doc.topic_id, {GroupLabel.PROTECTED: [], GroupLabel.NON_PROTECTED: []}
        )
        groups[doc.group].append(doc)

    topic_pools = {
        topic: TopicPools(tuple(groups[GroupLabel.PROTECTED]), tuple(groups[GroupLabel.NON_PROTECTED]))
        for topic, groups in topic_groups.items()
    }
    global_pools = TopicPools(
        tuple(d for d in documents if d.group is GroupLabel.PROTECTED),
        tuple(d for d in documents if d.group is GroupLabel.NON_PROTECTED)
    )
    return Corpus(documents=documents, topic_pools=topic_pools, global_pools=global_pools)


def _is_absent(value) -> bool:
    return value is None or (isinstance(value, float) and pd.isna(value))


def _read_frame(path: Path) -> pd.DataFrame:
    """Read the corpus CSV as strings; decode and parse failures become corpus errors"""
    try:
        return pd.read_csv(path, dtype=str, keep_default_na=False, encoding=CORPUS_CONFIG['encoding'])
    except UnicodeDecodeError as e:
        raise CorpusError(f"corpus {path} is not valid UTF-8 (byte offset {e.start})") from None
    except pd.errors.EmptyDataError:
        raise EmptyCorpusError(f"corpus {path} is empty; a header row is required") from None
    except pd.errors.ParserError as e:
        raise CorpusError(f"corpus {path} is not well-formed CSV: {e}") from None


def _read_override(path: Path, row: int) -> str:
    try:
        return path.read_text(encoding=CORPUS_CONFIG['encoding'])
    except UnicodeDecodeError as e:
        raise CorpusError(
            f"text override {path.name} is not valid UTF-8 (byte offset {e.start})", row=row, column='text'
        ) from None


def load_corpus(
    path: Union[str, Path],
    truncation_limit: int = CORPUS_CONFIG['truncation_limit'],
    overrides_dir: Optional[Union[str, Path]] = None
) -> Corpus:
    """
    Load and validate a corpus CSV

    Args:
        path: CSV with header category, category_number, doc_id, gender, entity_name, text
        truncation_limit: maximum number of words kept per text
        overrides_dir: optional directory of <doc_id>.txt files replacing the CSV text

    Returns:
        Corpus with topic and global pools built

    Raises:
        FileNotFoundError, MissingColumnError, UnknownGroupError,
        DuplicateDocIdError, EmptyCorpusError
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Corpus file not found: {path}")
    if truncation_limit < 1:
        raise CorpusError(f"truncation limit must be positive, got {truncation_limit}")

    df = _read_frame(path)
    df.columns = df.columns.str.strip()

    for column in REQUIRED_COLUMNS:
        if column not in df.columns:
            raise MissingColumnError(f"missing required column '{column}'", row=1, column=column)
    if list(df.columns[:len(REQUIRED_COLUMNS)]) != REQUIRED_COLUMNS:
        raise CorpusError(
            f"header must start with columns {', '.join(REQUIRED_COLUMNS)} in that order, "
            f"got {', '.join(df.columns)}",
            row=1
        )

    if df.empty:
        raise EmptyCorpusError(f"corpus {path} has a header but no rows")

    overrides = Path(overrides_dir) if overrides_dir else None
    if overrides is not None and not overrides.is_dir():
        raise CorpusError(f"overrides directory not found: {overrides}")

    documents: List[Document] = []
    seen: Dict[str, int] = {}
    topic_names: Dict[int, str] = {}
    override_count = 0
    for index, row in enumerate(df[REQUIRED_COLUMNS].itertuples(index=False, name=None)):
        line = index + 2  # header is line 1
        values = dict(zip(REQUIRED_COLUMNS, row))

        for column in REQUIRED_COLUMNS:
            # text may be empty; every other field must carry a value
            value = values[column]
            missing = _is_absent(value) or (column != 'text' and str(value).strip() == '')
            if missing:
                raise MissingColumnError(f"required field '{column}' is empty", row=line, column=column)

        doc_id = str(values['doc_id']).strip()
        if doc_id in seen:
            raise DuplicateDocIdError(
                f"duplicate doc_id {doc_id!r} (first seen on row {seen[doc_id]})",
                row=line, column='doc_id'
            )
        seen[doc_id] = line

        try:
            topic_number = int(str(values['category_number']).strip())
        except ValueError:
            raise CorpusError(
                f"category_number {values['category_number']!r} is not an integer",
                row=line, column='category_number'
            ) from None

        topic_id = str(values['category']).strip()
        first_topic = topic_names.setdefault(topic_number, topic_id)
        if first_topic != topic_id:
            raise CorpusError(
                f"category_number {topic_number} is already used by category {first_topic!r}",
                row=line, column='category'
            )

        text = values['text']
        if overrides is not None:
            override_file = overrides / f"{doc_id}.txt"
            if override_file.exists():
                text = _read_override(override_file, line)
                override_count += 1

        documents.append(Document(
            doc_id=doc_id,
            topic_id=topic_id,
            topic_number=topic_number,
            group=GroupLabel.decode(values['gender'], row=line),
            title=str(values['entity_name']).strip(),
            text=truncate_text(text, truncation_limit)
        ))

    corpus = build_corpus(documents)
    logger.info(
        f"Loaded corpus {path.name}: {len(corpus.documents)} documents, "
        f"{len(corpus.topic_pools)} topics, {override_count} text overrides"
    )
    return corpus


def pool_for(corpus: Corpus, topic_id: str, group: GroupLabel) -> List[Document]:
    """Return the topic-and-group pool in file order"""
    try:
        pools = corpus.topic_pools[topic_id]
    except KeyError:
        raise UnknownTopicError(f"unknown topic {topic_id!r}") from None
    return list(pools.for_group(group))


def write_canonical_csv(corpus: Corpus, path: Union[str, Path]) -> Path:
    """Write the corpus back in the canonical column layout (atomic replace)"""
    from fairrank.run_store import atomic_write_text

    frame = pd.DataFrame(
        [
            [d.topic_id, d.topic_number, d.doc_id, d.group.gender, d.title, d.text]
            for d in corpus.documents
        ],
        columns=REQUIRED_COLUMNS
    )
    return atomic_write_text(path, frame.to_csv(index=False, lineterminator='\n'))
