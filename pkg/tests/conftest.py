from __future__ import annotations

import pytest

from braidfoliation import corpus
from braidfoliation.fixtures import load_fixture

DISC_FIXTURES = ("disc_three_aa", "disc_two_pockets", "disc_four_pockets")


@pytest.fixture(scope="session")
def discs():
    """Realizable random disc tilings (some with several discs)."""
    return corpus.corpus(40, seed=5)


@pytest.fixture(scope="session")
def ab_rich():
    """Random tilings grown with unstabilization as well: more ab and bb tiles."""
    return corpus.corpus(40, seed=6, unstabilizing=True)


@pytest.fixture
def fixture_a():
    return load_fixture("disc_three_aa")


@pytest.fixture
def fixture_b():
    return load_fixture("disc_two_pockets")


@pytest.fixture
def fixture_c():
    return load_fixture("disc_four_pockets")
