"""
Configuration file for FairRank
Contains default settings for corpus ingestion, ranking, generation and analysis
"""

import os
from pathlib import Path

from config.endpoint_config import ENDPOINT_CONFIG

# Project Paths
BASE_DIR = Path(__file__).parent.parent
DATA_DIR = BASE_DIR / "data"
LOGS_DIR = BASE_DIR / "logs"

# Corpus Configuration
CORPUS_CONFIG = {
    # CSV header, in this exact order
    'columns': ['category', 'category_number', 'doc_id', 'gender', 'entity_name', 'text'],
    'truncation_limit': 100,
    'encoding': 'utf-8',
    # Case-insensitive gender annotation -> group
    'group_mapping': {
        'female': 'Protected',
        'male': 'NonProtected'
    }
}

# Relevance Configuration
RELEVANCE_CONFIG = {
    'scorers': ['lexical', 'synthetic', 'external', 'bm25'],
    'synthetic': {
        'seed': 0,
        'protected_score_low': 0.0,
        'protected_score_high': 1.0,
        'nonprotected_score_low': 0.0,
        'nonprotected_score_high': 1.0
    },
    'bm25': {
        'k1': 1.5,
        'b': 0.75
    },
    # Score assigned when all raw scores in a pool are equal
    'degenerate_norm_score': 0.5
}

# Ranker Configuration
RANKER_CONFIG = {
    'rankers': ['standard', 'stochastic', 'forced', 'representative'],
    'alpha': 5.0,           # Plackett-Luce concentration for the stochastic ranker
    'gamma': 2.0,           # Representative correction gain
    'tau': 0.5,             # Target protected exposure share
    'correction_cap': 1.0,
    'min_per_group': None,  # None -> floor(k / 2)
    'feasibility_guard': True,
    'weight_floor': 1e-9
}

# Simulated Generator Configuration
GENERATOR_CONFIG = {
    'modes': ['simulated', 'endpoint'],
    'num_citations': 5,
    'position_bias_beta': 1.0,
    'group_bias_b': 0.0,
    'hallucination_prob_h': 0.0,
    'prompt_version': 'v1'
}

# Statistics Configuration
STATS_CONFIG = {
    'alpha_level': 0.01,
    'supported_alpha_levels': [0.01, 0.05],
    'z_threshold': 3.0
}

# Experiment Configuration (keys accepted in a run config file)
EXPERIMENT_CONFIG = {
    'corpus_path': '',
    'overrides_dir': '',
    'truncation_limit': CORPUS_CONFIG['truncation_limit'],
    'scorer_name': 'lexical',
    'external_scores_path': '',
    'synthetic_seed': RELEVANCE_CONFIG['synthetic']['seed'],
    'protected_score_low': RELEVANCE_CONFIG['synthetic']['protected_score_low'],
    'protected_score_high': RELEVANCE_CONFIG['synthetic']['protected_score_high'],
    'nonprotected_score_low': RELEVANCE_CONFIG['synthetic']['nonprotected_score_low'],
    'nonprotected_score_high': RELEVANCE_CONFIG['synthetic']['nonprotected_score_high'],
    'ranker_name': 'standard',
    'k': 5,
    'pool_size_n': 50,
    'trials_per_ranker': 80,
    'scenarios': '1,2,3,4',
    'topics': '',           # empty -> every topic in the corpus
    'candidate_scope': 'topic',
    'base_seed': 0,
    'generator_mode': 'simulated',
    'alpha': RANKER_CONFIG['alpha'],
    'gamma': RANKER_CONFIG['gamma'],
    'tau': RANKER_CONFIG['tau'],
    'min_per_group': -1,    # -1 -> floor(k / 2)
    'feasibility_guard': RANKER_CONFIG['feasibility_guard'],
    'num_citations': GENERATOR_CONFIG['num_citations'],
    'position_bias_beta': GENERATOR_CONFIG['position_bias_beta'],
    'group_bias_b': GENERATOR_CONFIG['group_bias_b'],
    'hallucination_prob_h': GENERATOR_CONFIG['hallucination_prob_h'],
    'workers': 1,
    'failure_threshold': 0.10,
    'alpha_level': STATS_CONFIG['alpha_level'],
    'z_threshold': STATS_CONFIG['z_threshold'],
    'endpoint_url': ENDPOINT_CONFIG['url'],
    'endpoint_model': ENDPOINT_CONFIG['model'],
    'endpoint_temperature': ENDPOINT_CONFIG['temperature'],
    'endpoint_api_key_env': ENDPOINT_CONFIG['api_key_env'],
    'requests_per_minute': ENDPOINT_CONFIG['requests_per_minute']
}

# Report Configuration
REPORT_SETTINGS = {
    'report_metrics': ['exposure_disparity', 'exposure_share', 'generation_parity', 'utility'],
    'aggregate_metrics': [
        'exposure_disparity', 'exposure_share', 'count_share', 'generation_parity',
        'utility', 'fairness_gap', 'fairness_gap_magnitude'
    ],
    'ranker_order': ['standard', 'stochastic', 'forced', 'representative'],
    'supported_extensions': ['.svg', '.csv', '.xlsx'],
    'decimals': 4,
    'svg': {
        'width': 900,
        'height': 420,
        'bar_colors': ['#4472C4', '#ED7D31', '#A5A5A5', '#70AD47']
    }
}

# Logging Configuration
LOGGING_CONFIG = {
    'level': 'INFO',
    'console_format': '%(asctime)s | %(levelname)-8s | %(message)s',
    'file_format': '%(asctime)s | %(levelname)-8s | %(name)s | %(filename)s:%(lineno)d | %(message)s',
    'file_logging': os.getenv('FAIRRANK_LOG_TO_FILE', '1') != '0',
    'dir': str(LOGS_DIR)
}
