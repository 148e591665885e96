"""Sentence BLEU: 13a tokenisation, mixed case, one reference, exponential smoothing."""

from __future__ import annotations

import math
import re
from collections import Counter

MAX_ORDER = 4

# mteval-v13a rules, applied in order after the language-independent unescaping.
_13A_RULES = [
    (re.compile(r"([\{-\~\[-\` -\&\(-\+\:-\@\/])"), r" \1 "),
    (re.compile(r"([^0-9])([\.,])"), r"\1 \2 "),
    (re.compile(r"([\.,])([^0-9])"), r" \1 \2"),
    (re.compile(r"([0-9])(-)"), r"\1 \2 "),
    (re.compile(r"\s+"), " "),
]
_UNESCAPE = [
    ("<skipped>", ""),
    ("-\n", ""),
    ("\n", " "),
    ("&quot;", '"'),
    ("&amp;", "&"),
    ("&lt;", "<"),
    ("&gt;", ">"),
]


def tokenize_13a(line: str) -> list[str]:
    for old, new in _UNESCAPE:
        line = line.replace(old, new)
    line = f" {line} "
    for pattern, repl in _13A_RULES:
        line = pattern.sub(repl, line)
    return line.split()


def _ngrams(tokens: list[str]) -> Counter:
    counts: Counter = Counter()
    for n in range(1, MAX_ORDER + 1):
        for i in range(len(tokens) - n + 1):
            counts[tuple(tokens[i:i + n])] += 1
    return counts


def _log(x: float) -> float:
    # log(0) floored so that a zero precision drives the score to 0
    return math.log(x) if x != 0.0 else -9999999999


def bleu_from_stats(correct: list[int], total: list[int], hyp_len: int, ref_len: int) -> float:
    """BLEU in [0, 100] from per-order match counts, using effective order.

    Orders for which the hypothesis has no n-grams are dropped; an order with
    zero matches gets precision ``1 / (s * total)`` with ``s`` doubling at each
    such order.
    """
    precisions = [0.0] * MAX_ORDER
    smooth = 1.0
    effective_order = MAX_ORDER
    for n in range(MAX_ORDER):
        if total[n] == 0:
            break
        effective_order = n + 1
        if correct[n] == 0:
            smooth *= 2
            precisions[n] = 100.0 / (smooth * total[n])
        else:
            precisions[n] = 100.0 * correct[n] / total[n]

    if hyp_len < ref_len:
        bp = math.exp(1 - ref_len / hyp_len) if hyp_len > 0 else 0.0
    else:
        bp = 1.0
    return bp * math.exp(sum(map(_log, precisions[:effective_order])) / effective_order)


def sentence_bleu(hyp: str, ref: str) -> float:
    hyp_tokens = tokenize_13a(hyp.rstrip())
    ref_tokens = tokenize_13a(ref.rstrip())
    hyp_ngrams = _ngrams(hyp_tokens)
    ref_ngrams = _ngrams(ref_tokens)
    correct = [0] * MAX_ORDER
    total = [0] * MAX_ORDER
    for ngram, count in hyp_ngrams.items():
        n = len(ngram) - 1
        correct[n] += min(count, ref_ngrams.get(ngram, 0))
        total[n] += count
    return bleu_from_stats(correct, total, len(hyp_tokens), len(ref_tokens))
