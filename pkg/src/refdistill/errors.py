"""Exception types raised across the package."""


class RefDistillError(Exception):
    """Base class for all errors raised by refdistill."""


class InputError(RefDistillError):
    """Bad user input (flags, expressions, job files). Maps to CLI exit code 2."""


class CorpusError(RefDistillError):
    """Malformed or inconsistent corpus / n-best input. Maps to CLI exit code 1."""


class LineCountMismatch(CorpusError):
    def __init__(self, src_n: int, ref_n: int):
        super().__init__(f"source has {src_n} lines but reference has {ref_n}")
        self.src_n = src_n
        self.ref_n = ref_n


class EncodingError(CorpusError):
    def __init__(self, path: str, line: int):
        super().__init__(f"{path}:{line}: not valid UTF-8")
        self.path = path
        self.line = line


class SeparatorCollision(CorpusError):
    def __init__(self, path: str, line: int):
        super().__init__(f"{path}:{line}: sentence contains the reserved separator '|||'")
        self.path = path
        self.line = line


class MalformedLine(CorpusError):
    def __init__(self, lineno: int, reason: str = "expected 4 ' ||| '-separated fields"):
        super().__init__(f"n-best line {lineno}: {reason}")
        self.lineno = lineno


class IdOutOfRange(CorpusError):
    def __init__(self, id_: int, size: int):
        super().__init__(f"n-best id {id_} outside corpus of size {size}")
        self.id = id_


class NonNumericScore(CorpusError):
    def __init__(self, lineno: int, value: str):
        super().__init__(f"n-best line {lineno}: score {value!r} is not a number")
        self.lineno = lineno


class SplitTooLarge(InputError):
    def __init__(self, dev_n: int, test_n: int, size: int):
        super().__init__(f"dev ({dev_n}) + test ({test_n}) exceeds corpus size {size}")


class ParseError(InputError):
    """Sampling expression could not be parsed."""

    def __init__(self, text: str, position: int, expected: str):
        self.text = text
        self.position = position
        self.expected = expected
        super().__init__(f"at position {position}: expected {expected}")

    def caret(self) -> str:
        """Two-line rendering of the expression with a caret under the error."""
        return f"{self.text}\n{' ' * self.position}^"


class ValidationError(InputError):
    """Structurally invalid sampling expression (e.g. T^0)."""


class UnexpandedSumMetrics(RefDistillError):
    pass


class UnknownMetric(InputError):
    pass


class DuplicateJobName(InputError):
    pass


class EmptyInput(RefDistillError):
    pass


class TooFewMetrics(InputError):
    pass


class DegenerateVariance(RefDistillError):
    pass
