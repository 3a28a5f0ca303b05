"""
Generation Stage
Builds the grounded-citation prompt, parses cited titles from model output and
simulates a citation-selecting generator for LLM-free experiments
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.config import GENERATOR_CONFIG, RANKER_CONFIG
from fairrank.corpus import GroupLabel
from fairrank.exceptions import EmptyContextError, GenerationError
from fairrank.ranking import RankedList, exposure_weight

SCENARIO_IDS = (1, 2, 3, 4)

# "- Name (DocTitle: Title)", tolerating "*" / "1." bullets; titles may contain parentheses
_CITATION = re.compile(
    r"^\s*(?:[-*•]|\d+[.)])?\s*(?P<name>.+?)\s*\(DocTitle:\s*(?P<title>.*)\)\s*$"
)


@lru_cache(maxsize=None)
def load_templates(version: str = GENERATOR_CONFIG['prompt_version']) -> Dict[str, object]:
    """Read the versioned prompt resources"""
    root = resources.files('fairrank.prompts').joinpath(version)

    def read(name: str) -> str:
        try:
            return root.joinpath(name).read_text(encoding='utf-8').strip()
        except FileNotFoundError:
            raise GenerationError(f"prompt resource {version}/{name} not found") from None

    return {
        'role': read('role.txt'),
        'output_format': read('output_format.txt'),
        'rules': tuple(line.strip() for line in read('rules.txt').splitlines() if line.strip()),
        'scenarios': {sid: read(f'scenario_{sid}.txt') for sid in SCENARIO_IDS}
    }


def scenario_question(scenario_id: int, topic: str, version: str = GENERATOR_CONFIG['prompt_version']) -> str:
    """Scenario task text with the topic substituted"""
    scenarios = load_templates(version)['scenarios']
    if scenario_id not in scenarios:
        raise GenerationError(f"unknown scenario {scenario_id}; expected one of {SCENARIO_IDS}")
    return scenarios[scenario_id].replace('{TOPIC}', topic)


@dataclass(frozen=True)
class PromptSpec:
    role_line: str
    scenario_template: str
    topic: str
    context_block: Tuple[Tuple[str, str], ...]
    rules: Tuple[str, ...]
    output_format: str

    @classmethod
    def for_context(
        cls,
        scenario_id: int,
        topic: str,
        context: RankedList,
        version: str = GENERATOR_CONFIG['prompt_version']
    ) -> 'PromptSpec':
        templates = load_templates(version)
        if scenario_id not in templates['scenarios']:
            raise GenerationError(f"unknown scenario {scenario_id}; expected one of {SCENARIO_IDS}")
        return cls(
            role_line=templates['role'],
            scenario_template=templates['scenarios'][scenario_id],
            topic=topic,
            context_block=tuple(
                (c.document.title, c.document.text) for c in context.candidates
            ),
            rules=templates['rules'],
            output_format=templates['output_format']
        )


def build_prompt(spec: PromptSpec) -> str:
    """
    Render the prompt: role, context, task, output format, rules

    Raises:
        EmptyContextError: no context documents
        GenerationError: template is not one of the known scenarios
    """
    if not spec.context_block:
        raise EmptyContextError("cannot build a prompt without context documents")
    known = load_templates()['scenarios'].values()
    if spec.scenario_template not in known:
        raise GenerationError("scenario template is not one of the known scenarios")

    context = '\n\n'.join(f"Title: {title}\nText: {text}" for title, text in spec.context_block)
    rules = '\n'.join(f"- {rule}" for rule in spec.rules)
    return (
        f"{spec.role_line}\n\n"
        f"Context:\n{context}\n\n"
        f"Task: {spec.scenario_template.replace('{TOPIC}', spec.topic)}\n\n"
        f"Output format (one bullet per person):\n- {spec.output_format}\n\n"
        f"Rules:\n{rules}\n"
    )


@dataclass(frozen=True)
class Citation:
    person_name: str
    doc_title: str
    grounded: bool
    group: Optional[GroupLabel] = None


def parse_citations(model_output: str, context: RankedList) -> List[Citation]:
    """Extract '<name> (DocTitle: <title>)' lines and ground them against the context"""
    groups_by_title: Dict[str, GroupLabel] = {}
    for candidate in context.candidates:
        groups_by_title.setdefault(candidate.document.title.strip(), candidate.group)

    citations = []
    for line in (model_output or '').splitlines():
        match = _CITATION.match(line)
        if not match:
            continue
        title = match.group('title').strip()
        group = groups_by_title.get(title)
        citations.append(Citation(
            person_name=match.group('name').strip(),
            doc_title=title,
            grounded=group is not None,
            group=group
        ))
    return citations


def citation_counts(citations: Sequence[Citation]) -> Dict[str, int]:
    grounded = sum(1 for c in citations if c.grounded)
    return {
        'citations': len(citations),
        'grounded': grounded,
        'ungrounded': len(citations) - grounded,
        'duplicates': len(citations) - len({c.doc_title for c in citations})
    }


@dataclass(frozen=True)
class GeneratorSimParams:
    num_citations: int = GENERATOR_CONFIG['num_citations']
    position_bias_beta: float = GENERATOR_CONFIG['position_bias_beta']
    group_bias_b: float = GENERATOR_CONFIG['group_bias_b']
    hallucination_prob_h: float = GENERATOR_CONFIG['hallucination_prob_h']

    def __post_init__(self):
        if self.num_citations < 1:
            raise GenerationError(f"num_citations must be positive, got {self.num_citations}")
        if self.position_bias_beta < 0:
            raise GenerationError(f"position_bias_beta must be non-negative, got {self.position_bias_beta}")
        if self.group_bias_b < -1:
            raise GenerationError(f"group_bias_b must be >= -1, got {self.group_bias_b}")
        if not 0.0 <= self.hallucination_prob_h <= 1.0:
            raise GenerationError(f"hallucination_prob_h must lie in [0, 1], got {self.hallucination_prob_h}")


def format_citation(name: str, title: str) -> str:
    return f"- {name} (DocTitle: {title})"


def _hallucinated_title(taken: set, counter: int) -> str:
    title = f"Unlisted Figure {counter}"
    while title in taken:
        counter += 1
        title = f"Unlisted Figure {counter}"
    return title


def simulate_generation(context: RankedList, params: GeneratorSimParams, rng: np.random.Generator) -> str:
    """
    Emit bullet citations drawn from the context

    Picks min(num_citations, k) distinct documents without replacement with
    probability proportional to exposure_weight(pos)**beta * (1 + b * [protected]);
    each pick is swapped for an invented title with probability h.
    """
    if not context.entries:
        raise EmptyContextError("cannot simulate generation without context documents")

    entries = list(context.entries)
    weights = np.array([
        exposure_weight(e.position) ** params.position_bias_beta
        * (1.0 + params.group_bias_b * (e.candidate.group is GroupLabel.PROTECTED))
        for e in entries
    ], dtype=float)

    titles = {t.strip() for t in context.titles}
    lines = []
    for counter in range(min(params.num_citations, len(entries))):
        floored = np.maximum(weights, RANKER_CONFIG['weight_floor'])
        index = int(rng.choice(len(entries), p=floored / floored.sum()))
        entry = entries.pop(index)
        weights = np.delete(weights, index)

        if rng.random() < params.hallucination_prob_h:
            invented = _hallucinated_title(titles, counter + 1)
            lines.append(format_citation(invented, invented))
        else:
            title = entry.candidate.document.title
            lines.append(format_citation(title, title))
    return '\n'.join(lines)


def call_chat_endpoint(prompt: str, endpoint_config: Optional[dict] = None, connector=None) -> str:
    """
    Send a prompt to a chat-completion endpoint and return the completion text

    Args:
        prompt: rendered prompt
        endpoint_config: overrides for ENDPOINT_CONFIG (url, model, temperature, ...)
        connector: an open ChatEndpointConnector to reuse (shares its rate limiter)
    """
    from fairrank.chat_client import ChatEndpointConnector

    if connector is not None:
        return connector.complete(prompt)
    with ChatEndpointConnector(endpoint_config) as client:
        return client.complete(prompt)
