import random

import pytest

from esymfano.fields import QQ, PrimeField


@pytest.fixture
def rng():
    return random.Random(20260826)


def qm(rows):
    """Rational matrix from a nested list of ints/fractions-as-strings."""
    return tuple(tuple(QQ.parse(str(x)) for x in row) for row in rows)


def fpm(rows, p):
    f = PrimeField(p)
    return tuple(tuple(f.from_int(x) for x in row) for row in rows)
