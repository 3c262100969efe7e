import random
from fractions import Fraction

import pytest

from qp_harmonic.padic import Ball, PAdicApprox, ball_split
from qp_harmonic.step import StepFunction

PRIMES = (2, 3, 5)


def mod_q(q, p, hi):
    """Rational representative of q mod p^hi Z_p in [0, p^hi), for p-power denominators."""
    modulus = Fraction(p) ** hi
    return q - (q // modulus) * modulus


def random_value(rng, nonneg=False):
    if nonneg:
        return complex(rng.random(), 0.0)
    return complex(rng.uniform(-1, 1), rng.uniform(-1, 1))


def random_step(rng, p, level, window, density=0.7, nonneg=False):
    """Random function at ``level`` supported in p^-window Z_p."""
    region = Ball.of(p, 0, -window)
    pieces = {
        b: random_value(rng, nonneg)
        for b in ball_split(region, level)
        if rng.random() < density
    }
    return StepFunction(p, level, pieces)


def random_zp_step(rng, p, level, density=0.8, nonneg=False):
    return random_step(rng, p, level, 0, density, nonneg)


def random_point(rng, p, lo, hi):
    return PAdicApprox.from_int(p, lo, hi, rng.randrange(p ** (hi - lo)))


def points_of(f, hi=None):
    """One point in every ball of f's level inside p^-m Z_p, m = support window + 1."""
    p = f.prime
    m = f.support_window() + 1
    n = max(f.level, -m) if hi is None else hi
    return [b.center for b in ball_split(Ball.of(p, 0, -m), n)]


@pytest.fixture
def rng():
    return random.Random(20261016)
