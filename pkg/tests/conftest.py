import pytest

from topochat.graph import build_graph
from topochat.literature import build_index
from topochat.pipeline import Pipeline
from topochat.sampledata import (
    fixture_pairs,
    fixture_records,
    golden_backend,
    table3_records,
)


@pytest.fixture(scope="session")
def records():
    return fixture_records()


@pytest.fixture(scope="session")
def graph(records):
    return build_graph(records)


@pytest.fixture(scope="session")
def trio_graph():
    # the three canonical demo materials, SOC classification only
    return build_graph(table3_records())


@pytest.fixture(scope="session")
def pairs():
    return fixture_pairs()


@pytest.fixture(scope="session")
def index(pairs):
    return build_index(pairs)


@pytest.fixture
def pipeline(graph, index):
    return Pipeline(graph, index, golden_backend())
