"""
FairRank
Fairness-aware ranking for retrieval-augmented generation: rankers, exposure and
citation metrics, simulated or live generation, and significance testing
"""

__version__ = '1.0.0'
