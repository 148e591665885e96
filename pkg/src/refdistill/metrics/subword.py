"""Subword segmentation used by the length-difference metric."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path


@dataclass(frozen=True)
class SubwordSegmenter:
    """Either whitespace tokens, or characters greedily joined by an ordered merge table.

    In ``merge_table`` mode each whitespace word starts as its characters; every
    rule ``(left, right)`` is then applied once, in table order, merging each
    adjacent ``left right`` occurrence left to right.
    """

    mode: str = "whitespace"
    merges: tuple[tuple[str, str], ...] = ()
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.mode not in ("whitespace", "merge_table"):
            raise ValueError(f"unknown segmenter mode {self.mode!r}")

    @classmethod
    def from_file(cls, path: str | Path) -> "SubwordSegmenter":
        merges = []
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: merge rule must be 'left right'")
            merges.append((parts[0], parts[1]))
        return cls("merge_table", tuple(merges))

    def segment(self, text: str) -> list[str]:
        words = text.split()
        if self.mode == "whitespace":
            return words
        out: list[str] = []
        for word in words:
            out.extend(self._segment_word(word))
        return out

    def count(self, text: str) -> int:
        return len(self.segment(text))

    def _segment_word(self, word: str) -> tuple[str, ...]:
        cached = self._cache.get(word)
        if cached is None:
            cached = _apply_merges(word, self.merges)
            self._cache[word] = cached
        return cached


def _apply_merges(word: str, merges: tuple[tuple[str, str], ...]) -> tuple[str, ...]:
    symbols = list(word)
    for left, right in merges:
        if len(symbols) < 2:
            break
        if left not in symbols or right not in symbols:
            continue
        merged = []
        i = 0
        while i < len(symbols):
            if i + 1 < len(symbols) and symbols[i] == left and symbols[i + 1] == right:
                merged.append(left + right)
                i += 2
            else:
                merged.append(symbols[i])
                i += 1
        symbols = merged
    return tuple(symbols)


@lru_cache(maxsize=None)
def whitespace_segmenter() -> SubwordSegmenter:
    return SubwordSegmenter()
