import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from analysis.Oracle import Oracle
from combinatorics.Poset import commutator


@pytest.fixture
def commutator7():
    return commutator(7)


@pytest.fixture
def commutator5():
    return commutator(5)


@pytest.fixture(scope="session")
def oracle_factory():
    '''
    Oracles are expensive to build, share one per (P, p) across the session
    '''
    cache = {}

    def make(P, p):
        if (P, p) not in cache:
            cache[(P, p)] = Oracle(P, p)
        return cache[(P, p)]
    return make
