from fractions import Fraction

import pytest

from splab import GaussianRational, LaurentSeries, builtin_map
from splab.conformal import MapSpec


def gq(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


def series(terms, trunc):
    """terms: {degree: (re, im) | re}"""
    pairs = []
    for d, c in terms.items():
        if isinstance(c, tuple):
            pairs.append((d, gq(*c)))
        else:
            pairs.append((d, gq(c)))
    return LaurentSeries.make(pairs, trunc)


@pytest.fixture(scope="session")
def map_one():
    return builtin_map("one", 96)


@pytest.fixture(scope="session")
def map_cos():
    return builtin_map("cos", 96)


@pytest.fixture(scope="session")
def map_onez():
    # h = 1 + z: breaks the parity degeneracies of the builtins
    return MapSpec("onez", (gq(1), gq(1)), True)


def mobius_coeffs(order):
    # (1 + 2z)/(1 + z) = 1 + z - z^2 + z^3 - ...
    coeffs = [gq(1)]
    for k in range(1, order + 1):
        coeffs.append(gq(1) if k % 2 else gq(-1))
    return tuple(coeffs)


@pytest.fixture(scope="session")
def map_mobius():
    return MapSpec("mobius", mobius_coeffs(40), False)
