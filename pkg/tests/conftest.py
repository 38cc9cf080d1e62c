import numpy as np
import pytest

from entrothresh import JointHistogram


def sparse_counts(rng, levels=16, cells=None, max_count=50):
    """Random integer count grid with a handful of occupied cells."""
    counts = np.zeros((levels, levels), dtype=np.int64)
    k = cells or int(rng.integers(2, levels * 2))
    ii = rng.integers(0, levels, size=k)
    jj = rng.integers(0, levels, size=k)
    counts[ii, jj] += rng.integers(1, max_count, size=k)
    return counts


def masses(points, levels=256, scale=4):
    """Histogram with the given {(i, j): weight} integer masses."""
    counts = np.zeros((levels, levels), dtype=np.int64)
    for (i, j), w in points.items():
        counts[i, j] = w * scale
    return JointHistogram(counts)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def acceptance(record_property):
    """Attach a one-line detail string to an acceptance test's report."""

    def note(detail):
        record_property("acceptance", str(detail))

    return note


_ACCEPTANCE_LINES = []


def pytest_runtest_logreport(report):
    if "acceptance" not in report.keywords:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        outcome = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        details = [v for k, v in report.user_properties if k == "acceptance"]
        if report.skipped and isinstance(report.longrepr, tuple):
            details.append(report.longrepr[2])
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE_LINES.append(f"{outcome}  {name}: {'; '.join(details)}")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
