import pathlib

import pytest

from quartets import (
    LeafSet,
    QuartetSet,
    caterpillar,
    integer_leaves,
    make_quartet,
    minimal_definitive_set,
    normalized_quartet,
)

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def leaves6() -> LeafSet:
    return integer_leaves(6)


@pytest.fixture(scope="session")
def t6():
    return caterpillar(6)


@pytest.fixture(scope="session")
def q6() -> QuartetSet:
    return minimal_definitive_set(6)


def quartet_set_from_indices(leaves: LeafSet, index_rows) -> QuartetSet:
    qs = frozenset(normalized_quartet(*row) for row in index_rows)
    return QuartetSet(leaves, qs)


def qset(leaves: LeafSet, *numbered) -> QuartetSet:
    """QuartetSet from (a, b, c, d) leaf-number tuples like (1, 2, 3, 5)."""
    return QuartetSet(
        leaves, frozenset(make_quartet(leaves, *row) for row in numbered)
    )
