import csv
import time
from fractions import Fraction
from pathlib import Path

import pytest

from canonstrip.constructions import ConstructionKind
from canonstrip.report import generate_table

DATA = Path(__file__).parent / "data"
TIMINGS = {}


def load_reference_table():
    """{(g, kind): Fraction} from the published ten-decimal table."""
    out = {}
    with open(DATA / "table1.csv", newline="") as fh:
        for row in csv.DictReader(fh):
            g = int(row.pop("g"))
            for name, value in row.items():
                out[(g, ConstructionKind.parse(name))] = Fraction(value)
    return out


@pytest.fixture(scope="session")
def reference_table():
    return load_reference_table()


@pytest.fixture(scope="session")
def full_table():
    # Expensive (a couple of minutes on one core); shared by every test that needs g <= 25.
    start = time.perf_counter()
    table = generate_table(2, 25, jobs=1)
    TIMINGS["table"] = time.perf_counter() - start
    return table


def pytest_terminal_summary(terminalreporter):
    acceptance = __import__("sys").modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
