"""Translation edit rate with greedy block shifts (tercom conventions).

Tokenisation is lowercasing plus whitespace splitting; punctuation is kept
attached. The search follows tercom: at each step every legal block shift is
scored and the one with the largest edit-distance reduction is applied
(ties: longer block, earlier start, earlier destination); a shift costs one
edit; the search stops when no shift helps.
"""

from __future__ import annotations

import math
from typing import Sequence

MAX_SHIFT_SIZE = 10
MAX_SHIFT_DIST = 50
BEAM_WIDTH = 25
MAX_SHIFT_CANDIDATES = 1000
_MAX_CACHE_NODES = 10000
_INF = 10 ** 16

# Edit operations recorded in the DP, rewriting hypothesis into reference.
_NOP, _SUB, _DEL, _INS, _UNDEF = 0, 1, 2, 3, 4


def tokenize_tercom(sentence: str) -> list[str]:
    return sentence.lower().split()


class _EditDistance:
    """Word-level Levenshtein distance to a fixed reference.

    Only a band of cells around the length-scaled diagonal is filled, as in
    tercom. Cost rows are memoised in a trie keyed by hypothesis prefix; within
    one TER computation all inputs have the same length, so rows are reusable.
    """

    def __init__(self, ref: Sequence[str]):
        self.ref = ref
        self._row0 = tuple(range(len(ref) + 1))
        self._trie: dict = {}
        self._nodes = 0

    def __call__(self, hyp: Sequence[str], with_path: bool = True):
        """Return (distance, ops) where ops lists (op, hyp_pos, ref_pos); ops is None
        unless ``with_path``."""
        if with_path:
            costs, ops = self._fill(hyp, [self._row0], 0, True)
            return costs[-1][-1], self._backtrack(hyp, ops)
        rows = [self._row0]
        node = self._trie
        for word in hyp:
            hit = node.get(word)
            if hit is None:
                break
            node, row = hit
            rows.append(row)
        start = len(rows) - 1
        self._fill(hyp, rows, start, False)
        self._remember(hyp, rows, start)
        return rows[-1][-1], None

    def _fill(self, hyp, rows, start, want_ops):
        ref = self.ref
        n_ref = len(ref)
        n_hyp = len(hyp)
        ratio = n_ref / n_hyp if n_hyp else 1
        beam = math.ceil(ratio / 2 + BEAM_WIDTH) if BEAM_WIDTH < ratio / 2 else BEAM_WIDTH
        op_rows = [(_INS,) * (n_ref + 1)] if want_ops else None
        for i in range(start + 1, n_hyp + 1):
            prev_cost = rows[i - 1]
            cost = [_INF] * (n_ref + 1)
            diag = math.floor(i * ratio)
            lo = max(0, diag - beam)
            hi = n_ref + 1 if i == n_hyp else min(n_ref + 1, diag + beam)
            word = hyp[i - 1]
            if lo == 0:
                cost[0] = prev_cost[0] + 1
                lo = 1
            left = cost[lo - 1]
            if want_ops:
                ops = [_UNDEF] * (n_ref + 1)
                if lo == 1:
                    ops[0] = _DEL
                # preference on ties: match/substitution, then deletion, then insertion
                for j in range(lo, hi):
                    if word == ref[j - 1]:
                        best, op = prev_cost[j - 1], _NOP
                    else:
                        best, op = prev_cost[j - 1] + 1, _SUB
                    c = prev_cost[j] + 1
                    if c < best:
                        best, op = c, _DEL
                    if left + 1 < best:
                        best, op = left + 1, _INS
                    if best >= _INF:
                        best, op = _INF, _UNDEF
                    cost[j] = left = best
                    ops[j] = op
                op_rows.append(ops)
            else:
                # values above _INF only arise outside the band and never win a min
                row = cost[:lo]
                for r, diag_cost, up in zip(ref[lo - 1:hi - 1], prev_cost[lo - 1:hi - 1],
                                            prev_cost[lo:hi]):
                    best = diag_cost if word == r else diag_cost + 1
                    if up + 1 < best:
                        best = up + 1
                    if left + 1 < best:
                        best = left + 1
                    row.append(best)
                    left = best
                row.extend(cost[hi:])
                cost = row
            rows.append(cost)
        return rows, op_rows

    def _remember(self, hyp, rows, start):
        if self._nodes >= _MAX_CACHE_NODES:
            return
        node = self._trie
        for word in hyp[:start]:
            node = node[word][0]
        for i in range(start, len(hyp)):
            word = hyp[i]
            if word not in node:
                node[word] = ({}, rows[i + 1])
                self._nodes += 1
            node = node[word][0]

    @staticmethod
    def _backtrack(hyp, op_rows):
        i, j = len(hyp), len(op_rows[0]) - 1
        path = []
        while i > 0 or j > 0:
            op = op_rows[i][j]
            path.append((op, i - 1, j - 1))
            if op == _NOP or op == _SUB:
                i -= 1
                j -= 1
            elif op == _INS:
                j -= 1
            elif op == _DEL:
                i -= 1
            else:
                raise RuntimeError("edit distance backtrack left the beam")
        path.reverse()
        return path


def _alignment(path, n_hyp: int, n_ref: int):
    """Map each reference position to a hypothesis position and mark errors."""
    align = {}
    hyp_err = [0] * n_hyp
    ref_err = [0] * n_ref
    pos_hyp = -1
    for op, hi, rj in path:
        if op == _NOP or op == _SUB:
            pos_hyp = hi
            align[rj] = hi
            if op == _SUB:
                hyp_err[hi] = 1
                ref_err[rj] = 1
        elif op == _DEL:
            # hypothesis word with no reference counterpart
            pos_hyp = hi
            hyp_err[hi] = 1
        else:
            # reference word missing from the hypothesis
            align[rj] = pos_hyp
            ref_err[rj] = 1
    return align, ref_err, hyp_err


def _matching_blocks(hyp: Sequence[str], ref: Sequence[str]):
    """Yield (hyp_start, ref_start, length) for every common sub-span, growing lengths."""
    n_hyp, n_ref = len(hyp), len(ref)
    for sh in range(n_hyp):
        for sr in range(n_ref):
            if abs(sr - sh) > MAX_SHIFT_DIST:
                continue
            length = 0
            while hyp[sh + length] == ref[sr + length] and length < MAX_SHIFT_SIZE:
                length += 1
                yield sh, sr, length
                if sh + length == n_hyp or sr + length == n_ref:
                    break


def apply_shift(words: Sequence[str], start: int, length: int, target: int) -> list[str]:
    """Move ``words[start:start+length]`` so that it begins before index ``target``."""
    words = list(words)
    block = words[start:start + length]
    if target < start:
        return words[:target] + block + words[target:start] + words[start + length:]
    if target > start + length:
        return words[:start] + words[start + length:target] + block + words[target:]
    return words[:start] + words[start + length:length + target] + block + words[length + target:]


def _best_shift(hyp, ref, ed: _EditDistance, checked: int):
    base, path = ed(hyp)
    align, ref_err, hyp_err = _alignment(path, len(hyp), len(ref))
    best = None
    for sh, sr, length in _matching_blocks(hyp, ref):
        if not any(hyp_err[sh:sh + length]) or not any(ref_err[sr:sr + length]):
            continue
        if sh <= align[sr] < sh + length:
            continue
        prev_target = -1
        for offset in range(-1, length):
            if sr + offset == -1:
                target = 0
            elif sr + offset in align:
                target = align[sr + offset] + 1
            else:
                break
            if target == prev_target:
                continue
            prev_target = target
            shifted = apply_shift(hyp, sh, length, target)
            key = (base - ed(shifted, False)[0], length, -sh, -target, shifted)
            checked += 1
            if best is None or key > best:
                best = key
        if checked >= MAX_SHIFT_CANDIDATES:
            break
    if best is None:
        return 0, hyp, checked
    return best[0], best[4], checked


def ter_edits(hyp: Sequence[str], ref: Sequence[str]) -> tuple[int, int]:
    """Number of edits (shifts plus Levenshtein edits) and reference length."""
    if not ref:
        return len(hyp), 0
    ed = _EditDistance(ref)
    shifts = 0
    checked = 0
    current = list(hyp)
    while True:
        gain, shifted, checked = _best_shift(current, ref, ed, checked)
        if checked >= MAX_SHIFT_CANDIDATES or gain <= 0:
            break
        shifts += 1
        current = shifted
    return shifts + ed(current, False)[0], len(ref)


def sentence_ter(hyp: str, ref: str) -> float:
    """TER (lower is better). An empty reference yields 1.0."""
    edits, ref_len = ter_edits(tokenize_tercom(hyp), tokenize_tercom(ref))
    if ref_len == 0:
        return 1.0
    return edits / ref_len


def sentence_ter_neg(hyp: str, ref: str) -> float:
    return -sentence_ter(hyp, ref)
