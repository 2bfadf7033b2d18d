import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))  # for the oracles module

from knotfield.laurent import LaurentPolynomial
from knotfield.mosaic import load

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "knotfield", "data")

# Pinned Jones polynomials in s = t^(1/2) units.
TREFOIL_JONES = LaurentPolynomial({-8: -1, -6: 1, -2: 1})
FIG8_JONES = LaurentPolynomial({-4: 1, -2: -1, 0: 1, 2: -1, 4: 1})
UNKNOT_JONES = LaurentPolynomial({0: 1})


def data_path(name):
    return os.path.join(DATA, name)


def load_fixture(name):
    with open(data_path(name)) as fh:
        return load(fh.read())


@pytest.fixture(scope="session")
def trefoil():
    return load_fixture("trefoil4.mosaic")


@pytest.fixture(scope="session")
def fig8():
    return load_fixture("fig8_5.mosaic")


@pytest.fixture(scope="session")
def granny():
    return load_fixture("granny8.mosaic")
