import numpy as np
import pytest

from rankfuse import RankingList

R1 = (1, 2, 4, 3, 5)
R2 = (2, 1, 3, 4, 5)


@pytest.fixture
def pair():
    """The two five-object rankings used as the running example."""
    return RankingList.from_orders([R1, R2])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_CRITERIA: dict[str, tuple[bool | None, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion's verdict; printed in the terminal summary."""

    def record(name: str, passed: bool | None, detail: str) -> None:
        _CRITERIA[name] = (None if passed is None else bool(passed), detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        ok, detail = _CRITERIA[name]
        status = "SKIP" if ok is None else "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{status}  {name}: {detail}")
