from pathlib import Path

import pytest

from ghorkit.corpus import CORPUS_DIR
from ghorkit.matchings import build_label_table, parse_names
from ghorkit.quiver import load_dqif

GOLDEN = Path(__file__).parent / "golden"


def load_entry(name):
    quiver = load_dqif(CORPUS_DIR / f"{name}.dqif")
    names_file = CORPUS_DIR / f"{name}.names"
    names = parse_names(names_file.read_text()) if names_file.exists() else None
    return quiver, build_label_table(quiver, names)


@pytest.fixture(scope="session")
def fig1():
    return load_entry("ex-fig1")


@pytest.fixture(scope="session")
def hexq():
    return load_entry("hex-c3")


@pytest.fixture(scope="session")
def g2():
    return load_entry("g2-c5")


@pytest.fixture(scope="session", params=["ex-fig1", "hex-c3", "g2-c5"])
def corpus_entry(request):
    return request.param, *load_entry(request.param)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
