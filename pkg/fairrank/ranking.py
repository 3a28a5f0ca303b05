"""
Top-k Rankers
Standard, Stochastic (Plackett-Luce), Forced-Exposure and Representative
Stochastic rankers plus the shared exposure-weight model
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from config.config import RANKER_CONFIG
from fairrank.corpus import GroupLabel
from fairrank.exceptions import EmptyPoolError, RankingError
from fairrank.relevance import CandidatePool, ScoredCandidate

WEIGHT_FLOOR = RANKER_CONFIG['weight_floor']


def exposure_weight(position: int) -> float:
    """Logarithmic position discount: 1 / log2(position + 1)"""
    if position < 1:
        raise ValueError(f"positions are 1-based, got {position}")
    return 1.0 / math.log2(position + 1)


def exposure_weights(length: int) -> np.ndarray:
    return 1.0 / np.log2(np.arange(1, length + 1) + 1)


@dataclass(frozen=True)
class RankedEntry:
    position: int
    candidate: ScoredCandidate


@dataclass(frozen=True)
class RankedList:
    entries: Tuple[RankedEntry, ...]
    k: int
    # Groups whose forced-exposure quota could not be met
    infeasible_groups: Tuple[GroupLabel, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def candidates(self) -> List[ScoredCandidate]:
        return [e.candidate for e in self.entries]

    @property
    def doc_ids(self) -> List[str]:
        return [e.candidate.doc_id for e in self.entries]

    @property
    def groups(self) -> List[GroupLabel]:
        return [e.candidate.group for e in self.entries]

    @property
    def titles(self) -> List[str]:
        return [e.candidate.document.title for e in self.entries]

    @classmethod
    def from_candidates(
        cls,
        candidates: Sequence[ScoredCandidate],
        k: int,
        infeasible_groups: Tuple[GroupLabel, ...] = ()
    ) -> 'RankedList':
        entries = tuple(RankedEntry(i, c) for i, c in enumerate(candidates, start=1))
        return cls(entries=entries, k=k, infeasible_groups=infeasible_groups)


@dataclass(frozen=True)
class StochasticParams:
    alpha: float = RANKER_CONFIG['alpha']

    def __post_init__(self):
        if self.alpha < 0:
            raise RankingError(f"alpha must be non-negative, got {self.alpha}")


@dataclass(frozen=True)
class RepresentativeParams:
    # Kept for config parity with the stochastic ranker; sampling weights use norm_score directly
    alpha: float = RANKER_CONFIG['alpha']
    tau: float = RANKER_CONFIG['tau']
    gamma: float = RANKER_CONFIG['gamma']
    correction_cap: float = RANKER_CONFIG['correction_cap']
    feasibility_guard: bool = RANKER_CONFIG['feasibility_guard']

    def __post_init__(self):
        if self.alpha < 0:
            raise RankingError(f"alpha must be non-negative, got {self.alpha}")
        if not 0.0 <= self.tau <= 1.0:
            raise RankingError(f"tau must lie in [0, 1], got {self.tau}")
        if self.gamma < 0:
            raise RankingError(f"gamma must be non-negative, got {self.gamma}")
        if self.correction_cap <= 0:
            raise RankingError(f"correction_cap must be positive, got {self.correction_cap}")


@dataclass(frozen=True)
class ForcedExposureParams:
    min_per_group: Optional[int] = RANKER_CONFIG['min_per_group']

    def quota(self, k: int) -> int:
        m = k // 2 if self.min_per_group is None else self.min_per_group
        if m < 0 or 2 * m > k:
            raise RankingError(f"min_per_group={m} is infeasible for k={k} (need 0 <= 2*m <= k)")
        return m


def _check_pool(pool: CandidatePool, k: int):
    if not pool.candidates:
        raise EmptyPoolError(f"candidate pool for query {pool.query!r} is empty")
    if k < 1:
        raise RankingError(f"k must be positive, got {k}")


def rank_standard(pool: CandidatePool, k: int) -> RankedList:
    """Deterministic top-k by descending norm_score, ties by ascending doc_id"""
    _check_pool(pool, k)
    ordered = sorted(pool.candidates, key=lambda c: (-c.norm_score, c.doc_id))
    return RankedList.from_candidates(ordered[:k], k)


def _draw(rng: np.random.Generator, weights: np.ndarray) -> int:
    weights = np.maximum(weights, WEIGHT_FLOOR)
    return int(rng.choice(len(weights), p=weights / weights.sum()))


def plackett_luce_sample(
    pool: CandidatePool,
    k: int,
    alpha: float,
    rng: np.random.Generator
) -> RankedList:
    """
    Sequential Plackett-Luce sampling without replacement

    Each step draws candidate i with probability w_i / sum(w) over the remaining
    candidates, where w_i = exp(alpha * norm_score_i).
    """
    _check_pool(pool, k)
    if alpha < 0:
        raise RankingError(f"alpha must be non-negative, got {alpha}")

    remaining = list(pool.candidates)
    scores = np.array([c.norm_score for c in remaining], dtype=float)
    # shift by the max score; ratios are unchanged and exp cannot overflow
    weights = np.exp(alpha * (scores - scores.max()))

    chosen: List[ScoredCandidate] = []
    for _ in range(min(k, len(remaining))):
        index = int(rng.choice(len(weights), p=weights / weights.sum()))
        chosen.append(remaining.pop(index))
        weights = np.delete(weights, index)
    return RankedList.from_candidates(chosen, k)


def rank_forced_exposure(pool: CandidatePool, k: int, params: ForcedExposureParams) -> RankedList:
    """
    Greedy group-interleaving top-k with a per-group minimum

    A group's head is forced when its outstanding quota equals the slots left;
    otherwise the higher-scoring head wins, ties going to the protected head.
    """
    _check_pool(pool, k)
    quota = params.quota(k)
    queues: Dict[GroupLabel, List[ScoredCandidate]] = {
        group: sorted(pool.by_group(group), key=lambda c: (-c.norm_score, c.doc_id))
        for group in GroupLabel
    }

    total = min(k, len(pool.candidates))
    # quotas a group cannot reach are reduced to what its pool holds
    needs = {group: min(quota, len(queue)) for group, queue in queues.items()}
    infeasible = tuple(g for g in GroupLabel if len(queues[g]) < quota)

    chosen: List[ScoredCandidate] = []
    for filled in range(total):
        slots_left = total - filled
        forced = next(
            (g for g in GroupLabel if queues[g] and needs[g] > 0 and needs[g] >= slots_left),
            None
        )
        if forced is not None:
            group = forced
        else:
            heads = [(g, q[0]) for g, q in queues.items() if q]
            # protected listed first in GroupLabel, so max() keeps it on ties
            group = max(heads, key=lambda item: item[1].norm_score)[0]
        chosen.append(queues[group].pop(0))
        needs[group] = max(0, needs[group] - 1)

    return RankedList.from_candidates(chosen, k, infeasible_groups=infeasible)


def representative_correction(deficit: float, group: GroupLabel, params: RepresentativeParams) -> float:
    """Additive weight correction for one candidate given the current deficit"""
    if deficit > 0 and group is GroupLabel.PROTECTED:
        return min(max(params.gamma * deficit, 0.0), params.correction_cap)
    if deficit < 0 and group is GroupLabel.NON_PROTECTED:
        return min(max(params.gamma * -deficit, 0.0), params.correction_cap)
    return 0.0


def rank_representative_stochastic(
    pool: CandidatePool,
    k: int,
    params: RepresentativeParams,
    rng: np.random.Generator
) -> RankedList:
    """
    Exposure-tracked sequential sampling toward a target protected share

    Before each position the protected exposure share of the partial list is
    compared with tau; the lagging group's candidates get an additive, capped
    correction on top of their normalized relevance. When even an all-protected
    remainder cannot reach tau, the draw is restricted to protected candidates.
    """
    _check_pool(pool, k)
    remaining = list(pool.candidates)
    total = min(k, len(remaining))
    weights_by_position = exposure_weights(total)
    total_exposure = float(weights_by_position.sum())

    chosen: List[ScoredCandidate] = []
    protected_exposure = 0.0
    filled_exposure = 0.0
    for index in range(total):
        deficit = params.tau - protected_exposure / filled_exposure if chosen else 0.0

        candidates = remaining
        if params.feasibility_guard:
            best_case = protected_exposure + float(weights_by_position[index:].sum())
            if best_case / total_exposure < params.tau:
                protected = [c for c in remaining if c.group is GroupLabel.PROTECTED]
                if protected:
                    candidates = protected

        weights = np.array(
            [c.norm_score + representative_correction(deficit, c.group, params) for c in candidates],
            dtype=float
        )
        pick = candidates[_draw(rng, weights)]
        remaining.remove(pick)
        chosen.append(pick)

        position_weight = float(weights_by_position[index])
        filled_exposure += position_weight
        if pick.group is GroupLabel.PROTECTED:
            protected_exposure += position_weight

    return RankedList.from_candidates(chosen, k)


def protected_count(ranked: RankedList) -> int:
    return sum(1 for group in ranked.groups if group is GroupLabel.PROTECTED)


RankerParams = Union[None, StochasticParams, ForcedExposureParams, RepresentativeParams]


def rank(
    name: str,
    pool: CandidatePool,
    k: int,
    params: RankerParams = None,
    rng: Optional[np.random.Generator] = None
) -> RankedList:
    """Dispatch to a ranker by its configured name"""
    if name == 'standard':
        return rank_standard(pool, k)
    if name == 'stochastic':
        params = params or StochasticParams()
        return plackett_luce_sample(pool, k, params.alpha, _require_rng(rng, name))
    if name == 'forced':
        return rank_forced_exposure(pool, k, params or ForcedExposureParams())
    if name == 'representative':
        return rank_representative_stochastic(
            pool, k, params or RepresentativeParams(), _require_rng(rng, name)
        )
    raise RankingError(f"unknown ranker {name!r}; expected one of {RANKER_CONFIG['rankers']}")


def _require_rng(rng: Optional[np.random.Generator], name: str) -> np.random.Generator:
    if rng is None:
        raise RankingError(f"ranker {name!r} needs a seeded random generator")
    return rng
