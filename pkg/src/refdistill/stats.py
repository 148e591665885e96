"""Diagnostics over sampled datasets and a centred two-sample t-test."""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from itertools import combinations
from typing import Any, Sequence

from scipy import stats as _scipy_stats

from .corpus_io import Dataset, ParallelCorpus
from .errors import DegenerateVariance, InputError, TooFewMetrics
from .metrics import MetricKind, ScoredGroup
from .sampler import RankedGroup, rank_groups


def overlap(metrics: Sequence[MetricKind], n_top: int,
            groups: Sequence[ScoredGroup | RankedGroup]) -> float:
    """Mean pairwise agreement of the top-``n_top`` selections of several metrics.

    For each unordered pair of list positions the shared selected hypotheses
    are counted and divided by the selection size, ``n_top * len(groups)``
    when every group holds at least ``n_top`` hypotheses. Hypotheses are
    identified by (group, beam position), so repeated strings in one n-best
    list stay distinct.
    """
    if len(metrics) < 2:
        raise TooFewMetrics("overlap needs at least two metrics")
    if n_top < 1:
        raise InputError("n_top must be positive")
    ranked = rank_groups(groups)
    if not ranked:
        return 0.0
    selections = [
        {(gi, i) for gi, g in enumerate(ranked) for i in g.order[m][:n_top]} for m in metrics
    ]
    # short groups contribute what they have, so a metric always overlaps itself fully
    denom = sum(min(n_top, len(g.scored.metrics)) for g in ranked)
    pairs = list(combinations(range(len(metrics)), 2))
    return sum(len(selections[a] & selections[b]) / denom for a, b in pairs) / len(pairs)


def preserved_fraction(d: Dataset, original: ParallelCorpus) -> float:
    """Share of original lines whose source sentence occurs in ``d``."""
    if len(original) == 0:
        return 0.0
    sources = {s for s, _, _ in d.pairs}
    return sum(1 for s in original.sources if s in sources) / len(original)


def size_ratio(d: Dataset, original: ParallelCorpus) -> float:
    if len(original) == 0:
        return 0.0
    return d.total_size / len(original)


def paired_ttest_centered(a: Sequence[float], b: Sequence[float],
                          group_labels: Sequence) -> tuple[float, float]:
    """Student's t-test (pooled variance, two-sided) after removing per-label means.

    Each observation in ``a`` and ``b`` has the matching label subtracted: the
    mean of all values of both samples carrying that label. This lets e.g.
    scores from several translation directions be pooled into two samples.
    """
    if not len(a) == len(b) == len(group_labels):
        raise InputError("a, b and group_labels must have equal length")
    if len(a) < 2:
        raise InputError("need at least two observations per sample")
    pooled = defaultdict(list)
    for x, y, label in zip(a, b, group_labels):
        pooled[label].extend((x, y))
    means = {label: math.fsum(v) / len(v) for label, v in pooled.items()}
    ca = [x - means[label] for x, label in zip(a, group_labels)]
    cb = [y - means[label] for y, label in zip(b, group_labels)]
    if max(ca) == min(ca) and max(cb) == min(cb):
        raise DegenerateVariance("both centred samples are constant")
    result = _scipy_stats.ttest_ind(ca, cb, equal_var=True)
    return float(result.statistic), float(result.pvalue)


def report(d: Dataset, groups: Sequence[Any] | None, original: ParallelCorpus) -> dict:
    """Flat, JSON-ready summary of a sampled dataset (stable key order)."""
    counts = d.counter()
    histogram = Counter(counts.values())
    return {
        "total_size": d.total_size,
        "original_size": len(original),
        "n_groups": len(groups) if groups is not None else len(original),
        "size_ratio": size_ratio(d, original),
        "preserved_fraction": preserved_fraction(d, original),
        "distinct_pairs": len(counts),
        "multiplicity_histogram": {str(k): histogram[k] for k in sorted(histogram)},
    }
