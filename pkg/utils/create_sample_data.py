"""
Generate a Sample Corpus for Testing
Creates a balanced TREC-style biography CSV (category, category_number, doc_id,
gender, entity_name, text) with synthetic entries
"""

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
import pandas as pd

# Add parent directory to path
sys.path.append(str(Path(__file__).parent.parent))

from config.config import CORPUS_CONFIG, DATA_DIR
from utils.logger import log_action, log_data, log_error, log_info, log_step

DEFAULT_TOPICS = ('Physics', 'Painting', 'Chemistry', 'Literature')

FEMALE_NAMES = ['Ada', 'Marie', 'Grace', 'Rosalind', 'Hedy', 'Emmy', 'Lise', 'Dorothy',
                'Frida', 'Mary', 'Chien-Shiung', 'Barbara', 'Toni', 'Virginia', 'Jane']
MALE_NAMES = ['Alan', 'Pierre', 'Niels', 'Albert', 'Claude', 'Enrico', 'Max', 'Linus',
              'Pablo', 'Vincent', 'James', 'Henri', 'Gabriel', 'Leo', 'Carl']
SURNAMES = ['Abbott', 'Baker', 'Castillo', 'Dubois', 'Eriksen', 'Fischer', 'Gupta', 'Hale',
            'Ivanova', 'Jensen', 'Kimura', 'Laurent', 'Moreau', 'Novak', 'Okafor', 'Petrov']
FILLER = ['studied', 'worked', 'published', 'taught', 'founded', 'received', 'award', 'work',
          'university', 'research', 'career', 'early', 'life', 'later', 'known', 'influential',
          'collaborated', 'contributions', 'field', 'society', 'member', 'born', 'city', 'prize',
          'notable', 'students', 'theory', 'methods', 'museum', 'journal', 'lectures', 'mentor',
          'pioneer', 'leaders', 'recognized', 'impact', 'historical', 'models', 'experiments', 'school']


def _unique_title(first: str, last: str, taken: set) -> str:
    title = f"{first} {last}"
    suffix = 2
    while title in taken:
        title = f"{first} {last} {suffix}"
        suffix += 1
    taken.add(title)
    return title


def build_sample_frame(
    topics: Sequence[str] = DEFAULT_TOPICS,
    per_group: int = 10,
    seed: int = 0,
    text_words: int = 60
) -> pd.DataFrame:
    """
    Build a corpus frame with `per_group` female and male entries per topic

    Texts mention the topic a random number of times so lexical scores vary.
    """
    rng = np.random.default_rng(seed)
    taken: set = set()
    rows = []
    for number, topic in enumerate(topics, start=1):
        for gender, names in (('female', FEMALE_NAMES), ('male', MALE_NAMES)):
            for i in range(per_group):
                first = names[int(rng.integers(len(names)))]
                last = SURNAMES[int(rng.integers(len(SURNAMES)))]
                title = _unique_title(first, last, taken)
                words = list(rng.choice(FILLER, size=text_words))
                mentions = int(rng.integers(1, 8))
                for position in rng.choice(text_words, size=mentions, replace=False):
                    words[int(position)] = topic.lower()
                rows.append({
                    'category': topic,
                    'category_number': number,
                    'doc_id': f"T{number:02d}-{gender[0].upper()}{i:03d}",
                    'gender': gender,
                    'entity_name': title,
                    'text': f"{title} " + ' '.join(words)
                })
    return pd.DataFrame(rows, columns=CORPUS_CONFIG['columns'])


def create_sample_corpus(
    path: Optional[Union[str, Path]] = None,
    topics: Sequence[str] = DEFAULT_TOPICS,
    per_group: int = 10,
    seed: int = 0
) -> str:
    """Write the sample corpus CSV and return its path"""
    try:
        log_step("Creating Sample Corpus")
        log_action("Building rows", f"{len(topics)} topics x 2 groups x {per_group}")
        frame = build_sample_frame(topics, per_group, seed)

        file_path = Path(path) if path else DATA_DIR / 'sample_corpus.csv'
        file_path.parent.mkdir(parents=True, exist_ok=True)
        log_action("Writing CSV file", str(file_path))
        frame.to_csv(file_path, index=False, encoding=CORPUS_CONFIG['encoding'])

        log_info(f"Corpus file created successfully: {file_path}")
        log_data("File Details", {
            "Path": str(file_path),
            "Documents": len(frame),
            "Topics": ', '.join(topics),
            "Seed": seed
        })
        return str(file_path)

    except Exception as e:
        log_error(f"Failed to create corpus file: {str(e)}", exc_info=True)
        raise


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description='Generate a synthetic biography corpus CSV')
    parser.add_argument('--out', type=str, help='Output CSV (default data/sample_corpus.csv)')
    parser.add_argument('--per-group', type=int, default=10, help='Entries per topic and gender')
    parser.add_argument('--seed', type=int, default=0, help='Random seed')
    parser.add_argument('--topics', type=str, default=','.join(DEFAULT_TOPICS),
                        help='Comma-separated topic names')
    args = parser.parse_args()

    print("\n" + "=" * 80)
    print("CREATING SAMPLE CORPUS")
    print("=" * 80 + "\n")

    file_path = create_sample_corpus(
        args.out, [t.strip() for t in args.topics.split(',') if t.strip()], args.per_group, args.seed
    )

    print("\n" + "=" * 80)
    print(f"SUCCESS! File created at: {file_path}")
    print("=" * 80 + "\n")
