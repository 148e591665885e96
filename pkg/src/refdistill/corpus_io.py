"""Reading parallel corpora and n-best lists, writing sampled datasets."""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

from .errors import (
    CorpusError,
    EncodingError,
    IdOutOfRange,
    LineCountMismatch,
    MalformedLine,
    NonNumericScore,
    SeparatorCollision,
    SplitTooLarge,
)

logger = logging.getLogger(__name__)

SEPARATOR = "|||"
DEFAULT_BEAM_SIZE = 12


@dataclass(frozen=True)
class ParallelCorpus:
    sources: tuple[str, ...]
    references: tuple[str, ...]

    def __post_init__(self):
        if len(self.sources) != len(self.references):
            raise LineCountMismatch(len(self.sources), len(self.references))

    def __len__(self) -> int:
        return len(self.sources)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]]) -> "ParallelCorpus":
        pairs = list(pairs)
        return cls(tuple(s for s, _ in pairs), tuple(r for _, r in pairs))


@dataclass(frozen=True)
class HypothesisEntry:
    text: str
    total_logprob: float
    norm_score: float
    beam_index: int
    features: str = ""


@dataclass(frozen=True)
class SentenceGroup:
    group_id: int
    source: str
    reference: str
    hypotheses: tuple[HypothesisEntry, ...]


@dataclass
class LoadReport:
    """Diagnostics collected while reading an n-best file."""

    n_groups: int = 0
    n_hypotheses: int = 0
    beam_size: int = DEFAULT_BEAM_SIZE
    short_groups: list[int] = field(default_factory=list)


@dataclass(frozen=True)
class Dataset:
    """Ordered multiset of (source, target) pairs.

    ``pairs`` holds ``(source, target, multiplicity)`` triples; the same pair may
    occur in several entries; use :meth:`counter` to compare as multisets.
    """

    pairs: tuple[tuple[str, str, int], ...] = ()

    def __post_init__(self):
        for entry in self.pairs:
            if entry[2] < 1:
                raise ValueError(f"multiplicity must be >= 1, got {entry!r}")

    @property
    def total_size(self) -> int:
        return sum(m for _, _, m in self.pairs)

    def __len__(self) -> int:
        return self.total_size

    def counter(self) -> Counter:
        c: Counter = Counter()
        for s, t, m in self.pairs:
            c[(s, t)] += m
        return c

    def support(self) -> set[tuple[str, str]]:
        return {(s, t) for s, t, _ in self.pairs}

    def expand(self) -> Iterator[tuple[str, str]]:
        for s, t, m in self.pairs:
            for _ in range(m):
                yield s, t


def whitespace_token_count(text: str) -> int:
    """Normalisation length for decoder scores; an empty hypothesis counts as 1."""
    return max(1, len(text.split()))


def _read_lines(path: str | Path) -> list[str]:
    data = Path(path).read_bytes()
    if not data:
        return []
    chunks = data.split(b"\n")
    if chunks[-1] == b"":
        chunks.pop()
    lines = []
    for i, chunk in enumerate(chunks, start=1):
        try:
            lines.append(chunk.decode("utf-8"))
        except UnicodeDecodeError:
            raise EncodingError(str(path), i) from None
    return lines


def load_parallel(src_path: str | Path, ref_path: str | Path) -> ParallelCorpus:
    sources = _read_lines(src_path)
    references = _read_lines(ref_path)
    if len(sources) != len(references):
        raise LineCountMismatch(len(sources), len(references))
    for path, lines in ((src_path, sources), (ref_path, references)):
        for i, line in enumerate(lines, start=1):
            if SEPARATOR in line:
                raise SeparatorCollision(str(path), i)
    return ParallelCorpus(tuple(sources), tuple(references))


def parse_nbest_line(line: str, lineno: int) -> tuple[int, str, str, float]:
    fields = line.split(SEPARATOR)
    if len(fields) != 4:
        raise MalformedLine(lineno)
    raw_id, text, features, raw_score = (f.strip() for f in fields)
    try:
        id_ = int(raw_id)
    except ValueError:
        raise MalformedLine(lineno, f"id {raw_id!r} is not an integer") from None
    try:
        score = float(raw_score)
    except ValueError:
        raise NonNumericScore(lineno, raw_score) from None
    if score != score:  # NaN
        raise NonNumericScore(lineno, raw_score)
    return id_, text, features, score


def load_nbest(
    nbest_path: str | Path,
    corpus: ParallelCorpus,
    beam_size: int = DEFAULT_BEAM_SIZE,
    token_count: Callable[[str], int] = whitespace_token_count,
) -> tuple[list[SentenceGroup], LoadReport]:
    """Group an n-best file into one :class:`SentenceGroup` per corpus line.

    Lines look like ``id ||| text ||| features ||| total_logprob``. Beam order in
    the file becomes ``beam_index``; ``norm_score`` is the total log-probability
    divided by ``token_count(text)``. Groups with fewer than ``beam_size``
    hypotheses are accepted and listed in the returned report.
    """
    if beam_size < 1:
        raise ValueError("beam_size must be positive")
    buckets: list[list[HypothesisEntry]] = [[] for _ in range(len(corpus))]
    last_id = -1
    report = LoadReport(beam_size=beam_size)
    for lineno, line in enumerate(_read_lines(nbest_path), start=1):
        if not line.strip():
            continue
        id_, text, features, score = parse_nbest_line(line, lineno)
        if not 0 <= id_ < len(corpus):
            raise IdOutOfRange(id_, len(corpus))
        if id_ < last_id:
            raise MalformedLine(lineno, f"id {id_} after {last_id}; ids must be ascending")
        last_id = id_
        bucket = buckets[id_]
        if len(bucket) >= beam_size:
            raise MalformedLine(lineno, f"more than {beam_size} hypotheses for id {id_}")
        n_tokens = max(1, token_count(text))
        bucket.append(HypothesisEntry(text, score, score / n_tokens, len(bucket), features))

    groups = []
    for i, bucket in enumerate(buckets):
        if not bucket:
            raise CorpusError(f"no hypotheses for corpus line {i}")
        if len(bucket) < beam_size:
            report.short_groups.append(i)
        groups.append(SentenceGroup(i, corpus.sources[i], corpus.references[i], tuple(bucket)))
        report.n_hypotheses += len(bucket)
    report.n_groups = len(groups)
    if report.short_groups:
        logger.warning(
            "%d of %d groups have fewer than %d hypotheses",
            len(report.short_groups), len(groups), beam_size,
        )
    return groups, report


def write_nbest(groups: Sequence[SentenceGroup], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for g in groups:
            for h in g.hypotheses:
                features = h.features or f"F0= {h.total_logprob!r}"
                f.write(f"{g.group_id} ||| {h.text} ||| {features} ||| {h.total_logprob!r}\n")


def write_parallel(corpus: ParallelCorpus, src_path: str | Path, ref_path: str | Path) -> None:
    for path, lines in ((src_path, corpus.sources), (ref_path, corpus.references)):
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for line in lines:
                f.write(line + "\n")


def emit_dataset(
    d: Dataset,
    out_src: str | Path,
    out_tgt: str | Path,
    shuffle_seed: int | None = None,
) -> int:
    """Write each pair ``multiplicity`` times as aligned lines; returns lines written."""
    expanded = list(d.expand())
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(expanded)
    with open(out_src, "w", encoding="utf-8", newline="\n") as fs, \
            open(out_tgt, "w", encoding="utf-8", newline="\n") as ft:
        for s, t in expanded:
            fs.write(s + "\n")
            ft.write(t + "\n")
    return len(expanded)


def load_dataset(src_path: str | Path, tgt_path: str | Path) -> Dataset:
    """Read emitted files back; adjacent identical lines are folded into one entry."""
    sources = _read_lines(src_path)
    targets = _read_lines(tgt_path)
    if len(sources) != len(targets):
        raise LineCountMismatch(len(sources), len(targets))
    entries: list[tuple[str, str, int]] = []
    for s, t in zip(sources, targets):
        if entries and entries[-1][0] == s and entries[-1][1] == t:
            entries[-1] = (s, t, entries[-1][2] + 1)
        else:
            entries.append((s, t, 1))
    return Dataset(tuple(entries))


def split_corpus(
    c: ParallelCorpus, dev_n: int, test_n: int, seed: int
) -> tuple[ParallelCorpus, ParallelCorpus, ParallelCorpus]:
    """Seeded random train/dev/test split; each part keeps the original line order."""
    if dev_n < 0 or test_n < 0 or dev_n + test_n > len(c):
        raise SplitTooLarge(dev_n, test_n, len(c))
    perm = list(range(len(c)))
    random.Random(seed).shuffle(perm)
    dev_idx = sorted(perm[:dev_n])
    test_idx = sorted(perm[dev_n:dev_n + test_n])
    train_idx = sorted(perm[dev_n + test_n:])

    def take(idx):
        return ParallelCorpus(
            tuple(c.sources[i] for i in idx), tuple(c.references[i] for i in idx)
        )

    return take(train_idx), take(dev_idx), take(test_idx)
