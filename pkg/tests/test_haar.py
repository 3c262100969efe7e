from fractions import Fraction
import math

import pytest

from qp_harmonic.haar import (
    HaarMeasure,
    ball_measure,
    inner_product,
    integrate,
    l2_norm,
    uniqueness_ratio,
)
from qp_harmonic.padic import Ball, DomainError
from qp_harmonic.step import indicator, scale, shift, zero

from conftest import PRIMES, random_point, random_step


def test_ball_measures():
    m = HaarMeasure(2)
    assert ball_measure(m, Ball.of(2, 0, 0)) == 1
    assert ball_measure(m, Ball.of(2, 0, 1)) == Fraction(1, 2)
    assert ball_measure(m, Ball.of(2, 0, -1)) == 2
    assert ball_measure(HaarMeasure(3, Fraction(7)), Ball.of(3, 1, 2)) == Fraction(7, 9)


def test_scale_must_be_positive():
    with pytest.raises(DomainError):
        HaarMeasure(2, 0)
    with pytest.raises(DomainError):
        HaarMeasure(2, Fraction(-1, 3))


def test_integrate_examples():
    assert integrate(HaarMeasure(5), indicator(Ball.of(5, 0, 0))) == 1
    assert integrate(HaarMeasure(2, 3), indicator(Ball.of(2, 0, 1))) == 1.5
    assert integrate(HaarMeasure(2), zero(2)) == 0


@pytest.mark.parametrize("p", PRIMES)
def test_linearity_positivity_scaling(p, rng):
    m = HaarMeasure(p)
    m7 = HaarMeasure(p, Fraction(22, 7))
    for _ in range(20):
        f1 = random_step(rng, p, rng.randint(-1, 2), 1)
        f2 = random_step(rng, p, rng.randint(-1, 2), 1)
        a, b = complex(rng.uniform(-1, 1), 1), complex(0.5, rng.uniform(-1, 1))
        lhs = integrate(m, scale(f1, a) + scale(f2, b))
        rhs = a * integrate(m, f1) + b * integrate(m, f2)
        assert abs(lhs - rhs) <= 1e-12
        assert abs(integrate(m7, f1) - float(Fraction(22, 7)) * integrate(m, f1)) <= 1e-12
        pos = random_step(rng, p, 1, 1, nonneg=True)
        s = integrate(m, pos)
        assert s.imag == 0 and s.real >= 0


@pytest.mark.parametrize("p", PRIMES)
def test_translation_invariance(p, rng):
    m = HaarMeasure(p)
    for _ in range(30):
        f = random_step(rng, p, rng.randint(-1, 3), 2)
        g = random_point(rng, p, -3, 3)
        assert abs(integrate(m, shift(f, g)) - integrate(m, f)) <= 1e-12 * (1 + abs(integrate(m, f)))


def test_inner_product_examples():
    m = HaarMeasure(2)
    a, b = indicator(Ball.of(2, 0, 1)), indicator(Ball.of(2, 1, 1))
    assert inner_product(m, a, b) == 0
    assert inner_product(m, a, a) == 0.5
    assert l2_norm(m, a) == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert l2_norm(m, zero(2)) == 0


@pytest.mark.parametrize("p", PRIMES)
def test_sesquilinear_and_cauchy_schwarz(p, rng):
    m = HaarMeasure(p)
    for _ in range(20):
        f = random_step(rng, p, rng.randint(0, 2), 1)
        g = random_step(rng, p, rng.randint(0, 2), 1)
        c = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        ff = inner_product(m, f, f)
        assert ff.imag == 0 and ff.real >= 0
        assert math.sqrt(ff.real) == pytest.approx(l2_norm(m, f), rel=1e-14, abs=1e-300)
        assert abs(inner_product(m, f, scale(g, c)) - c.conjugate() * inner_product(m, f, g)) <= 1e-12
        assert abs(inner_product(m, g, f) - inner_product(m, f, g).conjugate()) <= 1e-14
        assert abs(inner_product(m, f, g)) <= l2_norm(m, f) * l2_norm(m, g) + 1e-12


def test_uniqueness_ratio_examples(rng):
    lam, mu = HaarMeasure(3), HaarMeasure(3, 7)
    phi = random_step(rng, 3, 1, 1, nonneg=True)
    eta = random_step(rng, 3, 2, 0, nonneg=True)
    r1 = uniqueness_ratio(lam, mu, phi, eta)
    r2 = uniqueness_ratio(mu, lam, phi, eta)
    assert abs(r1 - r2) <= 1e-12 * abs(r1)
    assert uniqueness_ratio(lam, lam, eta, eta) == 1
    # lam = (1/7) mu
    assert abs(integrate(lam, phi) - integrate(mu, phi) / 7) <= 1e-12
    with pytest.raises(DomainError):
        uniqueness_ratio(lam, mu, phi, zero(3))
    with pytest.raises(DomainError):
        uniqueness_ratio(lam, mu, phi, scale(eta, -1))
    with pytest.raises(DomainError):
        uniqueness_ratio(lam, HaarMeasure(2), phi, eta)
