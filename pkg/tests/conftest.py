import pytest

from helpers import scored_group

_criteria: dict[str, tuple[str, str]] = {}


@pytest.fixture
def criterion(request):
    """Register the running test as an acceptance criterion; the verdict is
    printed in the terminal summary."""

    def register(number: int, title: str):
        request.node.user_properties.append(("criterion", (number, title)))

    return register


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            number, title = value
            verdict = "PASS" if report.passed else "FAIL"
            _criteria[f"{number:02d}"] = (verdict, f"criterion {number}: {title}")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria):
        verdict, line = _criteria[key]
        terminalreporter.write_line(f"[{verdict}] {line}")


@pytest.fixture
def three_groups():
    """Three groups of three hypotheses; BLEU and score pick the same best
    hypothesis only in group 1."""
    return [
        scored_group(0, "s0", "r0", [
            ("x0", 90.0, 0.5, -0.1, 0.0, -0.5),
            ("y0", 10.0, 0.5, -0.1, 0.0, -0.1),
            ("z0", 5.0, 0.5, -0.1, 0.0, -0.9),
        ]),
        scored_group(1, "s1", "r1", [
            ("x1", 80.0, 0.5, -0.1, 0.0, -0.2),
            ("y1", 20.0, 0.5, -0.1, 0.0, -0.4),
            ("z1", 5.0, 0.5, -0.1, 0.0, -0.9),
        ]),
        scored_group(2, "s2", "r2", [
            ("x2", 70.0, 0.5, -0.1, 0.0, -0.7),
            ("y2", 30.0, 0.5, -0.1, 0.0, -0.3),
            ("z2", 5.0, 0.5, -0.1, 0.0, -0.9),
        ]),
    ]
