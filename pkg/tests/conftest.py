import functools
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from eqalg.core import diamond
from eqalg.search import enumerate_algebras

DATA = os.path.join(os.path.dirname(__file__), "data")


@functools.lru_cache(maxsize=None)
def corpus(max_size: int = 4):
    """Every algebra of size 1..max_size, one per isomorphism class."""
    out = []
    for k in range(1, max_size + 1):
        out.extend(enumerate_algebras(k))
    return tuple(out)


@pytest.fixture
def dia():
    return diamond()


@pytest.fixture
def data_path():
    return lambda name: os.path.join(DATA, name)


def pytest_terminal_summary(terminalreporter):
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
