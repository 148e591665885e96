"""Evaluation of sampling expressions over scored n-best groups."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .corpus_io import Dataset, ParallelCorpus
from .dsl import (
    Dedup,
    Expr,
    Greater,
    Intersect,
    Original,
    Replicate,
    Skew,
    SumMetrics,
    Top,
    Union,
)
from .errors import DuplicateJobName, EmptyInput, InputError, UnexpandedSumMetrics, UnknownMetric
from .metrics import ALL_METRICS, MetricKind, ScoredGroup

# Per-group contributions: one list of (source, target, multiplicity) per group.
_Rows = list[list[tuple[str, str, int]]]


@dataclass(frozen=True)
class RankedGroup:
    """A scored group plus, for each metric, hypothesis indices from best to worst.

    Ties are broken by decoder score (higher first), then by beam position.
    """

    scored: ScoredGroup
    order: Mapping[MetricKind, tuple[int, ...]]

    @property
    def group_id(self) -> int:
        return self.scored.group_id


def rank_group(g: ScoredGroup) -> RankedGroup:
    vectors = g.metrics
    order = {}
    for m in ALL_METRICS:
        field = m.field
        order[m] = tuple(sorted(
            range(len(vectors)),
            key=lambda i: (-getattr(vectors[i], field), -vectors[i].score, i),
        ))
    return RankedGroup(g, order)


def rank_groups(groups: Iterable[ScoredGroup | RankedGroup]) -> list[RankedGroup]:
    return [g if isinstance(g, RankedGroup) else rank_group(g) for g in groups]


def pair_key(source: str, target: str) -> tuple[str, str]:
    """Identity of a sentence pair for deduplication and intersection."""
    return unicodedata.normalize("NFC", source), unicodedata.normalize("NFC", target)


class _Evaluator:
    def __init__(self, groups: Sequence[RankedGroup], original: ParallelCorpus):
        if len(groups) != len(original):
            raise InputError(f"{len(groups)} scored groups for a corpus of {len(original)} lines")
        self.groups = groups
        self.original = original
        self.memo: dict[Expr, _Rows] = {}

    def rows(self, e: Expr) -> _Rows:
        hit = self.memo.get(e)
        if hit is None:
            hit = self._rows(e)
            self.memo[e] = hit
        return hit

    def _select(self, e, pick) -> _Rows:
        if e.metric is None:
            raise UnexpandedSumMetrics("metric placeholder outside SumMetrics; expand first")
        if not isinstance(e.metric, MetricKind):
            raise UnknownMetric(f"unknown metric {e.metric!r}")
        out = []
        for g in self.groups:
            hyps = g.scored.group.hypotheses
            src = g.scored.group.source
            out.append([(src, hyps[i].text, k) for i, k in pick(g, g.order[e.metric])])
        return out

    def _rows(self, e: Expr) -> _Rows:
        if isinstance(e, Original):
            return [[(s, r, 1)] for s, r in zip(self.original.sources, self.original.references)]
        if isinstance(e, Top):
            return self._select(e, lambda g, order: ((i, 1) for i in order[:e.n]))
        if isinstance(e, Skew):
            return self._select(e, lambda g, order: zip(order, e.ks))
        if isinstance(e, Greater):
            field = e.metric.field if isinstance(e.metric, MetricKind) else None

            def pick(g, order):
                vectors = g.scored.metrics
                return ((i, 1) for i in order if getattr(vectors[i], field) >= e.threshold)

            return self._select(e, pick)
        if isinstance(e, Union):
            parts = [self.rows(c) for c in e.children]
            return [[row for part in parts for row in part[gi]] for gi in range(len(self.groups))]
        if isinstance(e, Replicate):
            return [[(s, t, m * e.k) for s, t, m in rows] for rows in self.rows(e.child)]
        if isinstance(e, Dedup):
            seen: set = set()
            out = []
            for rows in self.rows(e.child):
                kept = []
                for s, t, _ in rows:
                    key = pair_key(s, t)
                    if key not in seen:
                        seen.add(key)
                        kept.append((s, t, 1))
                out.append(kept)
            return out
        if isinstance(e, Intersect):
            right = {pair_key(s, t) for rows in self.rows(e.right) for s, t, _ in rows}
            seen = set()
            out = []
            for rows in self.rows(e.left):
                kept = []
                for s, t, _ in rows:
                    key = pair_key(s, t)
                    if key in right and key not in seen:
                        seen.add(key)
                        kept.append((s, t, 1))
                out.append(kept)
            return out
        if isinstance(e, SumMetrics):
            raise UnexpandedSumMetrics("run expand_sum_metrics before evaluating")
        raise TypeError(f"not a sampling expression: {e!r}")

    def dataset(self, e: Expr) -> Dataset:
        return Dataset(tuple(row for rows in self.rows(e) for row in rows))


def evaluate(e: Expr, groups: Sequence[ScoredGroup | RankedGroup],
             original: ParallelCorpus) -> Dataset:
    """Build the dataset an expression denotes.

    Output is grouped by source line in corpus order; inside a line, entries
    follow the operator (rank order for T/S/G, left to right for unions).
    Replicated entries keep a single row with a scaled multiplicity.
    """
    return _Evaluator(rank_groups(groups), original).dataset(e)


def eval_job(jobs: Sequence[tuple[str, Expr]], groups: Sequence[ScoredGroup | RankedGroup],
             original: ParallelCorpus) -> dict[str, Dataset]:
    """Evaluate many expressions over one ranking pass, sharing common subterms."""
    names = [name for name, _ in jobs]
    dupes = sorted({n for n in names if names.count(n) > 1})
    if dupes:
        raise DuplicateJobName(f"duplicate job names: {', '.join(dupes)}")
    if not jobs:
        return {}
    ev = _Evaluator(rank_groups(groups), original)
    return {name: ev.dataset(e) for name, e in jobs}


@dataclass(frozen=True)
class Calibration:
    threshold: float
    ratio: float
    exact: bool

    @property
    def not_exact(self) -> bool:
        return not self.exact


def calibrate_threshold(metric: MetricKind, groups: Sequence[ScoredGroup | RankedGroup],
                        lo_ratio: float = 1.0, hi_ratio: float = 1.5) -> Calibration:
    """Pick a G^t threshold so the selected size is ``lo..hi`` times the group count.

    Candidates are the distinct metric values. The largest one whose ratio
    falls inside the band wins; if none does, the one whose ratio is closest
    to the band is returned with ``exact=False``.
    """
    if lo_ratio > hi_ratio:
        raise InputError(f"invalid band: lo {lo_ratio} > hi {hi_ratio}")
    if not groups:
        raise EmptyInput("no groups to calibrate on")
    scored = [g.scored if isinstance(g, RankedGroup) else g for g in groups]
    values = sorted((v[metric] for g in scored for v in g.metrics), reverse=True)
    if not values:
        raise EmptyInput("no hypotheses to calibrate on")
    n_groups = len(scored)

    best = None  # (distance, threshold, ratio)
    i = 0
    while i < len(values):
        v = values[i]
        while i < len(values) and values[i] == v:
            i += 1
        ratio = i / n_groups
        if lo_ratio <= ratio <= hi_ratio:
            return Calibration(v, ratio, True)
        distance = lo_ratio - ratio if ratio < lo_ratio else ratio - hi_ratio
        if best is None or distance < best[0]:
            best = (distance, v, ratio)
    return Calibration(best[1], best[2], False)
