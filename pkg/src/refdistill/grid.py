"""The grid of sampling configurations compared in the distillation experiments.

Threshold rows carry one cutoff per language pair of the original runs; the
other rows do not depend on the corpus.
"""

from __future__ import annotations

from .dsl import Expr, parse

BASELINES = [
    ("original", "Original"),
    ("t1_score", "T^1_score"),
    ("t12_any", "T^12_any"),
]

BEST_HYPOTHESES = [
    ("t1_bleu", "T^1_bleu"),
    ("t1_chrf", "T^1_chrf"),
    ("t1_ter", "T^1_ter"),
    ("t1_sp", "T^1_sp"),
    ("t4_bleu", "T^4_bleu"),
    ("t4_chrf", "T^4_chrf"),
    ("t4_ter", "T^4_ter"),
    ("t4_sp", "T^4_sp"),
    ("t4_score", "T^4_score"),
]

THRESHOLDS = [
    ("g_bleu_65", "G^65_bleu"),
    ("g_bleu_60", "G^60_bleu"),
    ("g_bleu_55", "G^55_bleu"),
    ("g_chrf_0.82", "G^{0.82}_chrf"),
    ("g_chrf_0.81", "G^{0.81}_chrf"),
    ("g_chrf_0.80", "G^{0.80}_chrf"),
    ("g_ter_-0.2", "G^{-0.2}_ter"),
    ("g_ter_-0.25", "G^{-0.25}_ter"),
    ("g_ter_-0.24", "G^{-0.24}_ter"),
    ("g_sp_-1", "G^{-1}_sp"),
    ("g_sp_-2", "G^{-2}_sp"),
    ("g_score_-0.08", "G^{-0.08}_score"),
    ("g_score_-0.09", "G^{-0.09}_score"),
    ("g_score_-0.11", "G^{-0.11}_score"),
]

UPSAMPLING = [
    (f"s{''.join(map(str, ks))}_{m}", f"S^{{{','.join(map(str, ks))}}}_{m}")
    for ks in ((4, 3, 2, 1), (2, 2, 1, 1))
    for m in ("bleu", "chrf", "ter", "sp", "score")
]

COMBINATIONS = [
    ("t1_score+original", "T^1_score + Original"),
    ("dedup_t4_bleu_t4_score+original", "Dedup[T^4_bleu + T^4_score] + Original"),
    ("s4321_score+2x_original", "S^{4,3,2,1}_score + 2xOriginal"),
    ("s4321_bleu+2x_original", "S^{4,3,2,1}_bleu + 2xOriginal"),
    ("s4321_bleu+4x_original", "S^{4,3,2,1}_bleu + 4xOriginal"),
    ("t4_score+t12_any", "T^4_score + T^12_any"),
    ("t4_bleu+t12_any", "T^4_bleu + T^12_any"),
    ("t4_bleu+t4_score", "T^4_bleu + T^4_score"),
    ("dedup_sum_t2", "Dedup[SumMetrics[T^2_metric]]"),
    ("dedup_sum_t2+t12_any", "Dedup[SumMetrics[T^2_metric]] + T^12_any"),
    ("dedup_t4_bleu_t4_score+t1_bleu+t1_score",
     "Dedup[T^4_bleu + T^4_score] + T^1_bleu + T^1_score"),
    ("dedup_t4_bleu_t4_score+dedup_t1_bleu_t1_score",
     "Dedup[T^4_bleu + T^4_score] + Dedup[T^1_bleu + T^1_score]"),
    ("dedup_t4_bleu_t4_score", "Dedup[T^4_bleu + T^4_score]"),
]

PRUNING = [
    ("t1_score_and_g_ter_-0.8", "Intersect[T^1_score, G^{-0.8}_ter]"),
]

GRID = BASELINES + BEST_HYPOTHESES + THRESHOLDS + UPSAMPLING + COMBINATIONS + PRUNING


def grid_jobs(rows=None) -> list[tuple[str, Expr]]:
    return [(name, parse(text)) for name, text in (GRID if rows is None else rows)]


def grid_job_file(rows=None) -> str:
    return "".join(f"{name}\t{text}\n" for name, text in (GRID if rows is None else rows))
