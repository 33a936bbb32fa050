"""Seeded network families shared by the unit and acceptance tests."""

from fractions import Fraction
from functools import lru_cache

from hcontinuation.network import build_random, build_uniform
from hcontinuation.transfer import modified_h

LO, HI = Fraction(1, 8), Fraction(8)
SWEEP_SIZE = 100


@lru_cache(maxsize=None)
def sweep_net(R: int, seed: int, cols: int):
    return build_random(R, cols, seed, LO, HI)


@lru_cache(maxsize=None)
def sweep_operator(R: int, seed: int, s: int, cols: int):
    return modified_h(sweep_net(R, seed, cols), s)


def headline_sweep():
    """R = 3, s in {1, 2, 3}, 100 random networks with 5 columns."""
    for seed in range(SWEEP_SIZE):
        for s in (1, 2, 3):
            yield 3, seed, s, 5


def extended_sweep():
    """R in {2, 4, 5}, s in {1, 2}, 100 random networks with 4 columns."""
    for R in (2, 4, 5):
        for seed in range(SWEEP_SIZE):
            for s in (1, 2):
                yield R, seed, s, 4


def uniform(R: int, C: int, g=1):
    return build_uniform(R, C, g)
