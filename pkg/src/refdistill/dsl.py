"""Sampling expressions: AST, parser and canonical printer.

Surface syntax (ASCII, whitespace-insensitive, keywords case-insensitive)::

    expr    := term ('+' term)*
    term    := [INT 'x'] factor
    factor  := 'Original'
             | 'T^' INT '_' METRIC
             | 'S^' '{' INT (',' INT)* '}' '_' METRIC
             | 'G^' '{' REAL '}' '_' METRIC
             | 'Dedup[' expr ']'
             | 'Intersect[' expr ',' expr ']'
             | 'SumMetrics[' expr ']'
             | '(' expr ')'

Braces around the superscript and the metric are optional. METRIC is one of
bleu, chrf, ter, sp, score; ``any`` and ``-`` mean "order irrelevant" and
resolve to score; ``metric`` is the placeholder filled in by SumMetrics.
Thresholds are compared against the higher-is-better value, so TER, SP and
score thresholds are negative.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Union as _U

from .errors import DuplicateJobName, InputError, ParseError, ValidationError
from .metrics import ALL_METRICS, MetricKind

PLACEHOLDER_NAMES = ("metric", "metrics")
_ANY_NAMES = ("any", "-")


class SkewOrderWarning(UserWarning):
    """An upsampling list that is not nonincreasing."""


@dataclass(frozen=True)
class Original:
    pass


@dataclass(frozen=True)
class Top:
    n: int
    metric: MetricKind | None

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValidationError(f"T^n needs n >= 1, got {self.n!r}")


@dataclass(frozen=True)
class Skew:
    ks: tuple[int, ...]
    metric: MetricKind | None

    def __post_init__(self):
        if not self.ks:
            raise ValidationError("S^{...} needs at least one weight")
        if any(not isinstance(k, int) or k < 1 for k in self.ks):
            raise ValidationError(f"S^{{...}} weights must be positive integers, got {self.ks}")
        if any(a < b for a, b in zip(self.ks, self.ks[1:])):
            warnings.warn(f"upsampling weights {self.ks} are not nonincreasing",
                          SkewOrderWarning, stacklevel=3)


@dataclass(frozen=True)
class Greater:
    threshold: float
    metric: MetricKind | None

    def __post_init__(self):
        if not math.isfinite(self.threshold):
            raise ValidationError(f"threshold must be finite, got {self.threshold}")


@dataclass(frozen=True)
class Dedup:
    child: "Expr"


@dataclass(frozen=True)
class Intersect:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Replicate:
    k: int
    child: "Expr"

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ValidationError(f"replication factor must be >= 1, got {self.k!r}")


@dataclass(frozen=True)
class Union:
    children: tuple["Expr", ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValidationError("a union needs at least two operands")


@dataclass(frozen=True)
class SumMetrics:
    template: "Expr"

    def __post_init__(self):
        n = sum(1 for _ in _placeholders(self.template))
        if n != 1:
            raise ValidationError(
                f"SumMetrics template must contain exactly one metric placeholder, found {n}")


Expr = _U[Original, Top, Skew, Greater, Dedup, Intersect, Replicate, Union, SumMetrics]
_METRIC_NODES = (Top, Skew, Greater)


def children(e: Expr) -> tuple[Expr, ...]:
    if isinstance(e, (Dedup, Replicate)):
        return (e.child,)
    if isinstance(e, Intersect):
        return (e.left, e.right)
    if isinstance(e, Union):
        return e.children
    if isinstance(e, SumMetrics):
        return (e.template,)
    return ()


def _placeholders(e: Expr) -> Iterator[Expr]:
    # placeholders already bound by a nested SumMetrics do not count
    if isinstance(e, SumMetrics):
        return
    if isinstance(e, _METRIC_NODES) and e.metric is None:
        yield e
    for c in children(e):
        yield from _placeholders(c)


# ---------------------------------------------------------------- parsing

_INT = re.compile(r"\d+")
_REAL = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_WORD = re.compile(r"[A-Za-z]+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, expected: str, pos: int | None = None):
        return ParseError(self.text, self.pos if pos is None else pos, expected)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos:self.pos + 1]

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.accept(ch):
            raise self.error(repr(ch))

    def match(self, pattern: re.Pattern, expected: str) -> str:
        self.skip()
        m = pattern.match(self.text, self.pos)
        if not m:
            raise self.error(expected)
        self.pos = m.end()
        return m.group()

    def parse(self) -> Expr:
        e = self.expr()
        self.skip()
        if self.pos != len(self.text):
            raise self.error("'+' or end of expression")
        return e

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.accept("+"):
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Union(tuple(terms))

    def term(self) -> Expr:
        self.skip()
        m = _INT.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            self.skip()
            if self.text[self.pos:self.pos + 1] not in ("x", "X", "×", "*"):
                raise self.error("'x' after replication factor")
            self.pos += 1
            start = self.pos
            k = int(m.group())
            try:
                return Replicate(k, self.factor())
            except ValidationError as exc:
                raise ParseError(self.text, start, str(exc)) from None
        return self.factor()

    def factor(self) -> Expr:
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        start = self.pos
        self.skip()
        start = self.pos
        word = self.match(_WORD, "Original, T^, S^, G^, Dedup[, Intersect[, SumMetrics[ or '('")
        key = word.lower()
        try:
            if key == "original":
                return Original()
            if key in ("t", "s", "g"):
                self.expect("^")
                if key == "t":
                    n = int(self.braced(lambda: self.match(_INT, "integer")))
                    return Top(n, self.metric())
                if key == "s":
                    ks = tuple(self.braced(self.int_list))
                    return Skew(ks, self.metric())
                t = float(self.braced(lambda: self.match(_REAL, "number")))
                return Greater(t, self.metric())
            if key == "dedup":
                self.expect("[")
                e = self.expr()
                self.expect("]")
                return Dedup(e)
            if key == "intersect":
                self.expect("[")
                a = self.expr()
                self.expect(",")
                b = self.expr()
                self.expect("]")
                return Intersect(a, b)
            if key == "summetrics":
                self.expect("[")
                e = self.expr()
                self.expect("]")
                return SumMetrics(e)
        except ValidationError as exc:
            raise ParseError(self.text, start, str(exc)) from None
        raise self.error("Original, T^, S^, G^, Dedup[, Intersect[, SumMetrics[ or '('", start)

    def braced(self, inner):
        if self.accept("{"):
            value = inner()
            self.expect("}")
            return value
        return inner()

    def int_list(self) -> list[int]:
        values = [int(self.match(_INT, "integer"))]
        while self.peek() == "," and _INT.match(self.text, self._after_space(self.pos + 1)):
            self.pos += 1
            values.append(int(self.match(_INT, "integer")))
        return values

    def _after_space(self, pos: int) -> int:
        while pos < len(self.text) and self.text[pos].isspace():
            pos += 1
        return pos

    def metric(self) -> MetricKind | None:
        self.expect("_")
        pos = self._after_space(self.pos)

        def name():
            self.skip()
            if self.text.startswith("-", self.pos):
                self.pos += 1
                return "-"
            return self.match(_WORD, "metric name")

        raw = self.braced(name).lower()
        if raw in PLACEHOLDER_NAMES:
            return None
        if raw in _ANY_NAMES:
            return MetricKind.SCORE
        try:
            return MetricKind(raw)
        except ValueError:
            raise self.error("one of bleu, chrf, ter, sp, score", pos) from None


def parse(text: str) -> Expr:
    """Parse a sampling expression.

    >>> parse("S^{4,3,2,1}_bleu + 4xOriginal")
    Union(children=(Skew(ks=(4, 3, 2, 1), metric=<MetricKind.BLEU: 'bleu'>), Replicate(k=4, child=Original())))
    """
    e = _Parser(text).parse()
    if next(_placeholders(e), None) is not None:
        raise ValidationError("metric placeholder used outside SumMetrics[...]")
    return e


# ---------------------------------------------------------------- printing

def _metric_name(m: MetricKind | None) -> str:
    return "metric" if m is None else m.value


def _number(x: float) -> str:
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def to_canonical(e: Expr) -> str:
    if isinstance(e, Original):
        return "Original"
    if isinstance(e, Top):
        return f"T^{e.n}_{_metric_name(e.metric)}"
    if isinstance(e, Skew):
        return "S^{" + ",".join(map(str, e.ks)) + "}_" + _metric_name(e.metric)
    if isinstance(e, Greater):
        return "G^{" + _number(e.threshold) + "}_" + _metric_name(e.metric)
    if isinstance(e, Dedup):
        return f"Dedup[{to_canonical(e.child)}]"
    if isinstance(e, Intersect):
        return f"Intersect[{to_canonical(e.left)}, {to_canonical(e.right)}]"
    if isinstance(e, SumMetrics):
        return f"SumMetrics[{to_canonical(e.template)}]"
    if isinstance(e, Replicate):
        inner = to_canonical(e.child)
        if isinstance(e.child, (Union, Replicate)):
            inner = f"({inner})"
        return f"{e.k}x{inner}"
    if isinstance(e, Union):
        return " + ".join(
            f"({to_canonical(c)})" if isinstance(c, Union) else to_canonical(c)
            for c in e.children
        )
    raise TypeError(f"not a sampling expression: {e!r}")


# ---------------------------------------------------------------- rewriting

def _substitute(e: Expr, metric: MetricKind) -> Expr:
    if isinstance(e, Top):
        return Top(e.n, metric) if e.metric is None else e
    if isinstance(e, Skew):
        return Skew(e.ks, metric) if e.metric is None else e
    if isinstance(e, Greater):
        return Greater(e.threshold, metric) if e.metric is None else e
    if isinstance(e, Dedup):
        return Dedup(_substitute(e.child, metric))
    if isinstance(e, Intersect):
        return Intersect(_substitute(e.left, metric), _substitute(e.right, metric))
    if isinstance(e, Replicate):
        return Replicate(e.k, _substitute(e.child, metric))
    if isinstance(e, Union):
        return Union(tuple(_substitute(c, metric) for c in e.children))
    return e


def expand_sum_metrics(e: Expr) -> Expr:
    """Replace every ``SumMetrics[t]`` by the union of ``t`` over all five metrics."""
    if isinstance(e, SumMetrics):
        template = expand_sum_metrics(e.template)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SkewOrderWarning)
            return Union(tuple(_substitute(template, m) for m in ALL_METRICS))
    if isinstance(e, Dedup):
        return Dedup(expand_sum_metrics(e.child))
    if isinstance(e, Intersect):
        return Intersect(expand_sum_metrics(e.left), expand_sum_metrics(e.right))
    if isinstance(e, Replicate):
        return Replicate(e.k, expand_sum_metrics(e.child))
    if isinstance(e, Union):
        return Union(tuple(expand_sum_metrics(c) for c in e.children))
    return e


def contains_sum_metrics(e: Expr) -> bool:
    return isinstance(e, SumMetrics) or any(contains_sum_metrics(c) for c in children(e))


# ---------------------------------------------------------------- job files

def parse_jobs(text: str, source: str = "<jobs>") -> list[tuple[str, Expr]]:
    """Parse ``name<TAB>expression`` lines; blank lines and ``#`` comments are skipped."""
    jobs: list[tuple[str, Expr]] = []
    seen: set[str] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" not in line:
            raise InputError(f"{source}:{lineno}: expected 'name<TAB>expression'")
        name, expression = line.split("\t", 1)
        name = name.strip()
        if not name or "/" in name:
            raise InputError(f"{source}:{lineno}: invalid job name {name!r}")
        if name in seen:
            raise DuplicateJobName(f"{source}:{lineno}: duplicate job name {name!r}")
        seen.add(name)
        try:
            jobs.append((name, parse(expression)))
        except ParseError as exc:
            exc.args = (f"{source}:{lineno}: {exc}",)
            raise
    return jobs


def load_jobs(path: str | Path) -> list[tuple[str, Expr]]:
    return parse_jobs(Path(path).read_text(encoding="utf-8"), str(path))
