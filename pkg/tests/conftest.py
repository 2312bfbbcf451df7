import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import _report
from rbgroups.corpus import corpus_group

GOLDENS = Path(__file__).parent / "goldens"


@pytest.fixture
def rng():
    return random.Random(20260822)


@pytest.fixture
def s3():
    return corpus_group("S3")


@pytest.fixture
def d4():
    return corpus_group("D4")


@pytest.fixture
def q8():
    return corpus_group("Q8")


@pytest.fixture
def z4():
    return corpus_group("Z4")


@pytest.fixture
def z6():
    return corpus_group("Z6")


@pytest.fixture
def heis3():
    return corpus_group("Heis3")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _report.results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_report.results, key=lambda k: int(k.lstrip("c"))):
        terminalreporter.write_line(f"{key}: {_report.results[key]}")
