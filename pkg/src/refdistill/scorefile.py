"""Per-hypothesis score table (TSV), the cache shared by sampling runs.

Columns: group_id, beam_index, bleu, chrf, ter_neg, sp_neg, score; values are
fixed-point with six decimals. A header row names the columns.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .corpus_io import SentenceGroup
from .errors import CorpusError
from .metrics import MetricVector, ScoredGroup

COLUMNS = ("group_id", "beam_index", "bleu", "chrf", "ter_neg", "sp_neg", "score")
DECIMALS = 6


def quantize(x: float) -> float:
    # + 0.0 turns -0.0 into 0.0
    return float(f"{x:.{DECIMALS}f}") + 0.0


def quantize_group(g: ScoredGroup) -> ScoredGroup:
    """Round every score to the precision stored in the TSV."""
    return ScoredGroup(
        g.group, tuple(MetricVector(*(quantize(x) for x in v.as_tuple())) for v in g.metrics)
    )


def write_scores(groups: Sequence[ScoredGroup], path: str | Path) -> int:
    rows = 0
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\t".join(COLUMNS) + "\n")
        for g in groups:
            for h, v in zip(g.group.hypotheses, g.metrics):
                values = "\t".join(f"{quantize(x):.{DECIMALS}f}" for x in v.as_tuple())
                f.write(f"{g.group_id}\t{h.beam_index}\t{values}\n")
                rows += 1
    return rows


def read_scores(path: str | Path, groups: Sequence[SentenceGroup]) -> list[ScoredGroup]:
    """Attach cached scores to ``groups``; every hypothesis must have exactly one row."""
    vectors: dict[tuple[int, int], MetricVector] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            fields = line.rstrip("\n").split("\t")
            if lineno == 1 and fields[0] == COLUMNS[0]:
                continue
            if not line.strip():
                continue
            if len(fields) != len(COLUMNS):
                raise CorpusError(f"{path}:{lineno}: expected {len(COLUMNS)} columns")
            try:
                key = (int(fields[0]), int(fields[1]))
                vec = MetricVector(*(float(x) for x in fields[2:]))
            except ValueError:
                raise CorpusError(f"{path}:{lineno}: non-numeric field") from None
            if key in vectors:
                raise CorpusError(f"{path}:{lineno}: duplicate row for {key}")
            vectors[key] = vec
    out = []
    for g in groups:
        try:
            out.append(ScoredGroup(
                g, tuple(vectors.pop((g.group_id, h.beam_index)) for h in g.hypotheses)))
        except KeyError as exc:
            raise CorpusError(f"{path}: no scores for hypothesis {exc.args[0]}") from None
    if vectors:
        raise CorpusError(f"{path}: {len(vectors)} rows do not match any hypothesis")
    return out
