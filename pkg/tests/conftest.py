"""Shared fixtures."""
import pytest

from oracles import pencil


@pytest.fixture
def xyz_pencil():
    return pencil(3, [[(0, {}), (0, {0: 1}), (0, {})],
                      [(0, {}), (1, {}), (0, {1: -1})],
                      [(0, {2: -1}), (0, {}), (1, {})]])


@pytest.fixture
def x1x2_pencil():
    return pencil(2, [[(0, {}), (0, {0: 1})], [(0, {1: -1}), (1, {})]])


@pytest.fixture
def generic2_pencil():
    return pencil(4, [[(0, {0: 1}), (0, {1: 1})], [(0, {2: 1}), (0, {3: 1})]])


@pytest.fixture
def nonhom_pencil():
    return pencil(3, [[(1, {0: 1}), (0, {1: 1})], [(1, {}), (0, {2: 1})]])


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        ok, detail = RESULTS[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
