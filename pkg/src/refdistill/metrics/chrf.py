"""Sentence chrF2 over character 1..6-grams with whitespace removed, in [0, 1]."""

from __future__ import annotations

import re
from collections import Counter

CHAR_ORDER = 6
BETA = 2.0

_WHITESPACE = re.compile(r"\s+")


def _char_ngrams(s: str, n: int) -> Counter:
    return Counter(s[i:i + n] for i in range(len(s) - n + 1))


def chrf_stats(hyp: str, ref: str, order: int = CHAR_ORDER) -> list[tuple[int, int, int]]:
    """Per order: (hypothesis n-grams, reference n-grams, matched n-grams)."""
    hyp = _WHITESPACE.sub("", hyp).strip()
    ref = _WHITESPACE.sub("", ref).strip()
    stats = []
    for n in range(1, order + 1):
        h = _char_ngrams(hyp, n)
        r = _char_ngrams(ref, n)
        stats.append((sum(h.values()), sum(r.values()), sum((h & r).values())))
    return stats


def chrf_from_stats(stats: list[tuple[int, int, int]], beta: float = BETA) -> float:
    # P and R are averaged over the orders where both sides have n-grams,
    # then combined into a single F-beta.
    precision = recall = 0.0
    effective = 0
    for n_hyp, n_ref, n_match in stats:
        if n_hyp > 0 and n_ref > 0:
            precision += n_match / n_hyp
            recall += n_match / n_ref
            effective += 1
    if effective == 0:
        return 0.0
    precision /= effective
    recall /= effective
    if precision + recall == 0:
        return 0.0
    b2 = beta ** 2
    return (1 + b2) * (precision * recall) / (b2 * precision + recall)


def sentence_chrf(hyp: str, ref: str) -> float:
    return chrf_from_stats(chrf_stats(hyp, ref))
