"""Shared graphs and random generators for the test suite."""

from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gtpt.graph import from_edges  # noqa: E402

G1_EDGES = [((1, 1), (2, 1)), ((1, 1), (2, 2)), ((1, 2), (2, 2))]
G2_EDGES = [((1, 1), (1, 2)), ((1, 2), (2, 2)), ((1, 2), (2, 1))]
G3_EDGES = [
    ((1, 1), (2, 1)), ((1, 1), (2, 2)), ((1, 2), (2, 2)), ((1, 3), (2, 2)),
    ((1, 3), (2, 3)), ((2, 1), (2, 2)), ((2, 2), (2, 3)),
]
# two isomorphic stars whose transposes differ
EX1_G_EDGES = [((1, 1), (2, 2)), ((1, 3), (2, 2)), ((2, 1), (2, 2)), ((2, 2), (2, 3))]
EX1_H_EDGES = [((1, 1), (2, 2)), ((1, 2), (2, 2)), ((2, 1), (2, 2)), ((2, 2), (2, 3))]
FIG1_EDGES = [
    ((2, 1), (2, 2)), ((2, 1), (2, 3)), ((2, 1), (2, 4)), ((1, 1), (1, 2)),
    ((1, 2), (1, 3)), ((1, 2), (1, 4)), ((1, 4), (2, 2)),
]
EX2_EDGES = [((1, 1), (2, 1)), ((1, 1), (2, 2)), ((2, 1), (3, 1)), ((2, 2), (3, 2))]
EX3_H_EDGES = [
    ((1, 1), (2, 1)), ((1, 1), (2, 2)), ((1, 3), (2, 2)), ((1, 3), (2, 3)),
    ((2, 1), (3, 1)), ((2, 2), (3, 2)), ((2, 3), (3, 3)),
]


@pytest.fixture
def G1():
    return from_edges(2, 2, G1_EDGES)


@pytest.fixture
def G2():
    return from_edges(2, 2, G2_EDGES)


@pytest.fixture
def G3():
    return from_edges(2, 3, G3_EDGES)


@pytest.fixture
def ex1():
    return from_edges(2, 3, EX1_G_EDGES), from_edges(2, 3, EX1_H_EDGES)


@pytest.fixture
def fig1():
    return from_edges(2, 4, FIG1_EDGES)


@pytest.fixture
def ex2():
    return from_edges(3, 2, EX2_EDGES)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
