"""Shared samplers for randomized tests.

The acceptance criteria prescribe the sampling ranges: matrix entries in
[-3, 3] with nonzero determinant, coordinates from a fixed small set of
rationals.
"""

import random
from fractions import Fraction

import pytest

from monoheight import InputError, IntMatrix, PointGm

COORD_CHOICES = [
    Fraction(1), Fraction(-1),
    Fraction(2), Fraction(-2),
    Fraction(3), Fraction(-3),
    Fraction(1, 2), Fraction(-1, 2),
    Fraction(2, 3), Fraction(-2, 3),
]


def random_matrix(rng, n, lo=-3, hi=3):
    while True:
        rows = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]
        try:
            return IntMatrix(rows)
        except InputError:
            continue


def random_point(rng, n, choices=COORD_CHOICES):
    return PointGm(tuple(rng.choice(choices) for _ in range(n)))


@pytest.fixture
def rng():
    return random.Random(20260815)
