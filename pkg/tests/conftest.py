import itertools
import math
from pathlib import Path

import pytest

from incidence_pebble.geometry import IncidenceGeometry, read_geometry, validate_and_normalize_params

DATA = Path(__file__).parent / "data"

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def data_geometry(name: str) -> IncidenceGeometry:
    return read_geometry(DATA / name)


def small_params(max_lam=2, max_k=3, max_l=4):
    """Every normalized parameter tuple satisfying k1 + k2 - lam >= l within the given ranges."""
    out = []
    for lam in range(1, max_lam + 1):
        for k1, k2, l in itertools.product(range(max_k + 1), range(max_k + 1), range(max_l + 1)):
            if k1 + k2 - lam >= l and math.gcd(lam, k1, k2, l) == 1:
                out.append(validate_and_normalize_params(lam, k1, k2, l))
    return out


def all_geometries(max_points=3, max_lines=3):
    """Every incidence pattern on 1..max_points points and 1..max_lines lines."""
    for a in range(1, max_points + 1):
        for b in range(1, max_lines + 1):
            points = [f"p{i}" for i in range(1, a + 1)]
            lines = [f"l{j}" for j in range(1, b + 1)]
            cells = list(itertools.product(points, lines))
            for mask in range(1 << len(cells)):
                yield IncidenceGeometry(points, lines, [c for t, c in enumerate(cells) if mask >> t & 1])


@pytest.fixture
def example1():
    return data_geometry("example1.json")


@pytest.fixture
def fig3_left():
    return data_geometry("fig3-left.json")


@pytest.fixture
def fig3_right():
    return data_geometry("fig3-right.json")


@pytest.fixture
def k4():
    return data_geometry("k4.json")


@pytest.fixture
def rods():
    return validate_and_normalize_params(2, 2, 3, 3)
