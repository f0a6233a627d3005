import pytest

from venndim import builtin_map, edwards_grid
from venndim.corpus import lifted


@pytest.fixture(scope="session")
def circles():
    return {n: builtin_map(n) for n in (1, 2, 3)}


@pytest.fixture(scope="session")
def edwards():
    return {n: edwards_grid(n) for n in range(1, 7)}


@pytest.fixture(scope="session")
def small_edwards():
    return {n: edwards_grid(n, 128) for n in range(1, 6)}


@pytest.fixture(scope="session")
def lifts():
    """Lifted corpus diagrams keyed by (m, n)."""
    return {(m, n): lifted(n, m) for m, n in ((3, 3), (3, 4), (3, 5), (4, 4), (4, 5))}


_VERDICTS: list[str] = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line for an acceptance criterion."""

    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        _VERDICTS.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_VERDICTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
