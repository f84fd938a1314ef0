from __future__ import annotations

import sys

import pytest
from hypothesis import strategies as st

from sgtransform import oracle
from sgtransform.sgcore import NumericalSemigroup, from_small_elements

POPULATION_GENUS = 12


def to_fast(s: oracle.NaiveSemigroup) -> NumericalSemigroup:
    return NumericalSemigroup.from_members(s.small_elements(), s.conductor)


@pytest.fixture(scope="session")
def naive_population() -> list[oracle.NaiveSemigroup]:
    return list(oracle.iter_population(POPULATION_GENUS))


@pytest.fixture(scope="session")
def population(naive_population) -> list[NumericalSemigroup]:
    return [to_fast(s) for s in naive_population]


@pytest.fixture(scope="session")
def non_special(population) -> list[NumericalSemigroup]:
    return [s for s in population if not s.is_special]


def small(*members_then_conductor: int) -> NumericalSemigroup:
    *members, c = members_then_conductor
    return from_small_elements(list(members), c)


@st.composite
def semigroups(draw, max_genus: int = 30) -> NumericalSemigroup:
    """Random walk down the classical tree (remove a generator above F)."""
    s = NumericalSemigroup.naturals()
    depth = draw(st.integers(0, max_genus))
    for _ in range(depth):
        kids = [x for x in s.minimal_generators if x > s.frobenius]
        if not kids:
            break
        s = s.remove_minimal_generator(draw(st.sampled_from(kids)))
    return s


# The (8, 4) A-tree drawn out by hand: labels -> small elements below c = 12.
T84_NODES = {
    "S1": (0, 4, 8, 10),
    "S2": (0, 4, 8, 9),
    "S3": (0, 5, 9, 10),
    "S4": (0, 5, 8, 10),
    "S5": (0, 6, 9, 10),
    "S6": (0, 6, 8, 10),
    "S7": (0, 6, 8, 9),
    "S8": (0, 7, 9, 10),
    "S9": (0, 7, 8, 10),
    "S10": (0, 7, 8, 9),
    "S11": (0, 3, 6, 9),
    "S12": (0, 5, 7, 10),
    "S13": (0, 6, 7, 10),
    "S14": (0, 6, 7, 9),
    "S15": (0, 6, 7, 8),
}
T84_PARENT = {f"S{i}": "root" for i in range(1, 11)}
T84_PARENT.update({"S11": "S5", "S12": "S8", "S13": "S8", "S14": "S8", "S15": "S9"})


def t84_labels() -> dict[NumericalSemigroup, str]:
    out = {from_small_elements(list(v), 12): k for k, v in T84_NODES.items()}
    out[from_small_elements([0, 8, 9, 10], 12)] = "root"
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
