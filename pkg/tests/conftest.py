import random

import pytest

from drivensat import parse_dimacs
from drivensat.pup import PupInstance

# Running example used across the suite: over atoms a..d = 1..4 the clauses
# are {a,b,-c}, {a}, {-b}, {c,d}, {c,-d}.  Unit propagation fixes a and -b;
# c must be true; d is free.
EX1_TEXT = "p cnf 4 5\n1 2 -3 0\n1 0\n-2 0\n3 4 0\n3 -4 0\n"


@pytest.fixture
def ex1():
    return parse_dimacs(EX1_TEXT)


def station_instance(num_units=3):
    """A small chain layout: six sensors, five zones, each zone covering a
    consecutive sensor pair, with caps 2/2.  Solvable with three units."""
    zones = tuple("z%d" % i for i in range(1, 6))
    sensors = tuple("s%d" % i for i in range(1, 7))
    edges = []
    for i in range(1, 6):
        edges.append(("z%d" % i, "s%d" % i))
        edges.append(("z%d" % i, "s%d" % (i + 1)))
    return PupInstance(zones, sensors, tuple(edges),
                       num_units=num_units, ucap=2, iucap=2)


@pytest.fixture
def station():
    return station_instance()


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
