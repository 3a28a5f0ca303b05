"""
Fairness and utility metrics for retrieval and generation
"""

from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence

from fairrank.corpus import GroupLabel
from fairrank.exceptions import EmptyListError
from fairrank.ranking import RankedList, exposure_weight

PARITY = 0.5


@dataclass(frozen=True)
class RetrievalMetrics:
    exposure_share_protected: float
    exposure_disparity: float
    # unweighted protected fraction of the top-k
    count_share_protected: float


@dataclass(frozen=True)
class GenerationMetrics:
    demographic_parity: Optional[float]
    utility: float
    fairness_gap: Optional[float]
    fairness_gap_magnitude: Optional[float]


def exposure_share(ranked: RankedList) -> float:
    """Protected share of the list's total position-weighted exposure"""
    if not ranked.entries:
        raise EmptyListError("exposure share is undefined for an empty list")
    total = 0.0
    protected = 0.0
    for entry in ranked.entries:
        weight = exposure_weight(entry.position)
        total += weight
        if entry.candidate.group is GroupLabel.PROTECTED:
            protected += weight
    return protected / total


def count_share(ranked: RankedList) -> float:
    if not ranked.entries:
        raise EmptyListError("count share is undefined for an empty list")
    return sum(1 for g in ranked.groups if g is GroupLabel.PROTECTED) / len(ranked.entries)


def exposure_disparity(share: float) -> float:
    return abs(share - PARITY)


def generation_parity(citations: Iterable) -> Optional[float]:
    """Protected fraction of grounded citations; None when nothing grounded"""
    grounded = [c for c in citations if c.grounded]
    if not grounded:
        return None
    return sum(1 for c in grounded if c.group is GroupLabel.PROTECTED) / len(grounded)


def utility(citations: Sequence, context: RankedList) -> float:
    """Fraction of parsed citations whose title exactly matches a context title (after trim)"""
    if not citations:
        return 0.0
    titles = {title.strip() for title in context.titles}
    return sum(1 for c in citations if c.doc_title.strip() in titles) / len(citations)


def fairness_gap(gen_parity: float, share: float) -> float:
    """Signed shift from retrieval share to generation parity"""
    return gen_parity - share


def fairness_gap_magnitude(gen_parity: float, share: float) -> float:
    """Positive when generation sits further from parity than retrieval did"""
    return abs(gen_parity - PARITY) - abs(share - PARITY)


def retrieval_metrics(ranked: RankedList) -> RetrievalMetrics:
    share = exposure_share(ranked)
    return RetrievalMetrics(
        exposure_share_protected=share,
        exposure_disparity=exposure_disparity(share),
        count_share_protected=count_share(ranked)
    )


def generation_metrics(citations: Sequence, context: RankedList, share: float) -> GenerationMetrics:
    parity = generation_parity(citations)
    return GenerationMetrics(
        demographic_parity=parity,
        utility=utility(citations, context),
        fairness_gap=None if parity is None else fairness_gap(parity, share),
        fairness_gap_magnitude=None if parity is None else fairness_gap_magnitude(parity, share)
    )


def flip_groups(ranked: RankedList) -> RankedList:
    """Same list with every document's group swapped"""
    flipped = []
    for entry in ranked.entries:
        document = entry.candidate.document
        other = (GroupLabel.NON_PROTECTED if document.group is GroupLabel.PROTECTED
                 else GroupLabel.PROTECTED)
        candidate = replace(entry.candidate, document=replace(document, group=other))
        flipped.append(replace(entry, candidate=candidate))
    return replace(ranked, entries=tuple(flipped))
