"""Sentence-level scores between a hypothesis and its reference.

All five scores are oriented so that higher is better: TER and the subword
length difference are negated.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from ..corpus_io import SentenceGroup
from ..errors import UnknownMetric
from .bleu import sentence_bleu, tokenize_13a
from .chrf import sentence_chrf
from .subword import SubwordSegmenter, whitespace_segmenter
from .ter import sentence_ter, sentence_ter_neg, tokenize_tercom

__all__ = [
    "MetricKind",
    "MetricVector",
    "ScoredGroup",
    "SubwordSegmenter",
    "score_group",
    "score_groups",
    "sentence_bleu",
    "sentence_chrf",
    "sentence_sp_neg",
    "sentence_ter",
    "sentence_ter_neg",
    "tokenize_13a",
    "tokenize_tercom",
]


class MetricKind(enum.Enum):
    BLEU = "bleu"
    CHRF = "chrf"
    TER_NEG = "ter"
    SP_NEG = "sp"
    SCORE = "score"

    @property
    def field(self) -> str:
        return _FIELDS[self]

    @classmethod
    def from_name(cls, name: str) -> "MetricKind":
        try:
            return cls(name.lower())
        except ValueError:
            raise UnknownMetric(f"unknown metric {name!r}") from None


_FIELDS = {
    MetricKind.BLEU: "bleu",
    MetricKind.CHRF: "chrf",
    MetricKind.TER_NEG: "ter_neg",
    MetricKind.SP_NEG: "sp_neg",
    MetricKind.SCORE: "score",
}

#: Fixed order used wherever "all metrics" are enumerated.
ALL_METRICS = (MetricKind.BLEU, MetricKind.CHRF, MetricKind.TER_NEG, MetricKind.SP_NEG,
               MetricKind.SCORE)


@dataclass(frozen=True)
class MetricVector:
    bleu: float
    chrf: float
    ter_neg: float
    sp_neg: float
    score: float

    def __getitem__(self, metric: MetricKind) -> float:
        return getattr(self, metric.field)

    def as_tuple(self) -> tuple[float, ...]:
        return (self.bleu, self.chrf, self.ter_neg, self.sp_neg, self.score)


@dataclass(frozen=True)
class ScoredGroup:
    group: SentenceGroup
    metrics: tuple[MetricVector, ...]

    @property
    def group_id(self) -> int:
        return self.group.group_id


def sentence_sp_neg(hyp: str, ref: str, seg: SubwordSegmenter | None = None) -> float:
    seg = seg or whitespace_segmenter()
    return -float(abs(seg.count(hyp) - seg.count(ref)))


def score_hypothesis(text: str, reference: str, norm_score: float,
                     seg: SubwordSegmenter) -> MetricVector:
    return MetricVector(
        bleu=sentence_bleu(text, reference),
        chrf=sentence_chrf(text, reference),
        ter_neg=sentence_ter_neg(text, reference),
        sp_neg=sentence_sp_neg(text, reference, seg),
        score=norm_score,
    )


def score_group(g: SentenceGroup, seg: SubwordSegmenter | None = None) -> ScoredGroup:
    seg = seg or whitespace_segmenter()
    return ScoredGroup(
        g,
        tuple(score_hypothesis(h.text, g.reference, h.norm_score, seg) for h in g.hypotheses),
    )


def _score_chunk(args):
    groups, seg = args
    return [score_group(g, seg) for g in groups]


def score_groups(groups: Sequence[SentenceGroup], seg: SubwordSegmenter | None = None,
                 workers: int = 1, chunk_size: int = 256) -> list[ScoredGroup]:
    """Score every group, optionally across worker processes; output is in input order."""
    seg = seg or whitespace_segmenter()
    if workers <= 1 or len(groups) <= chunk_size:
        return [score_group(g, seg) for g in groups]
    chunks = [(groups[i:i + chunk_size], seg) for i in range(0, len(groups), chunk_size)]
    out: list[ScoredGroup] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_score_chunk, chunks):
            out.extend(part)
    return out
