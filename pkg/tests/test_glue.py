from fractions import Fraction

import numpy as np
import pytest

from qp_harmonic.characters import Character, character_function, fourier_truncate
from qp_harmonic.glue import (
    CosetPiece,
    approximate,
    approximate_at_level,
    approximate_piece,
    coset_decompose,
    membership_check,
)
from qp_harmonic.haar import HaarMeasure, l2_norm
from qp_harmonic.padic import Ball, DomainError, PAdicApprox, negate
from qp_harmonic.step import StepFunction, indicator, lift, restrict, scale, shift, to_array, zero

from conftest import PRIMES, random_step, random_zp_step


def test_decompose_single_coset(rng):
    f = random_zp_step(rng, 3, 2)
    pieces = coset_decompose(f)
    assert len(pieces) == 1
    assert pieces[0].rep.to_fraction() == 0
    assert pieces[0].piece == f


def test_decompose_two_cosets():
    f = StepFunction(2, 1, {Ball.of(2, 0, 1): 1, Ball.of(2, Fraction(1, 2), 1): 2, Ball.of(2, Fraction(3, 2), 1): 3})
    pieces = coset_decompose(f)
    assert [cp.rep.to_fraction() for cp in pieces] == [0, Fraction(1, 2)]
    assert all((cp.rep.lo, cp.rep.hi) == (-1, 0) for cp in pieces)
    total = zero(2, 1)
    for cp in pieces:
        total = total + cp.piece
        assert cp.piece == restrict(f, Ball.around(cp.rep, 0))
    assert total == f


def test_decompose_negative_level():
    f = indicator(Ball.of(3, 0, -1))
    pieces = coset_decompose(f)
    assert [cp.rep.to_fraction() for cp in pieces] == [0, Fraction(1, 3), Fraction(2, 3)]
    assert coset_decompose(zero(3)) == []


@pytest.mark.parametrize("p", PRIMES)
def test_decompose_reassembles(p, rng):
    for _ in range(10):
        f = random_step(rng, p, rng.randint(-1, 2), 2, density=0.3)
        pieces = coset_decompose(f)
        total = zero(p)
        for cp in pieces:
            total = total + cp.piece
            assert all(b.within(Ball.around(cp.rep, 0)) for b in cp.piece.pieces)
        assert total == f
        reps = [cp.rep.to_fraction() for cp in pieces]
        assert reps == sorted(set(reps))


def test_piece_of_character_combination_reproduced():
    on_h = character_function(Character(5, 1, 3), 2) + scale(character_function(Character.trivial(5), 2), 0.5)
    piece = shift(lift(on_h), negate(PAdicApprox.from_rational(5, Fraction(2, 5), 2)))
    cp = CosetPiece(PAdicApprox.from_int(5, -1, 0, 2), piece)
    phi = approximate_piece(cp, 1)
    assert l2_norm(HaarMeasure(5), piece - phi) <= 1e-9


@pytest.mark.parametrize("p", PRIMES)
def test_piece_error_transported(p, rng):
    m = HaarMeasure(p)
    for _ in range(10):
        f = random_step(rng, p, rng.randint(0, 3), 2, density=0.5)
        for cp in coset_decompose(f):
            g = PAdicApprox.from_rational(p, cp.rep.to_fraction(), cp.piece.level)
            on_h = shift(cp.piece, g)
            for k in range(cp.piece.level + 1):
                phi = approximate_piece(cp, k)
                g_err = l2_norm(m, cp.piece - phi)
                h_err = l2_norm(m, on_h - fourier_truncate(on_h, k))
                assert abs(g_err - h_err) <= 1e-12
            assert l2_norm(m, cp.piece - approximate_piece(cp, cp.piece.level + 1)) <= 1e-9


def test_approximate_indicator_is_exact():
    for p in PRIMES:
        f = indicator(Ball.of(p, 0, 0))
        for N in (1, 10, 1000):
            phi, report = approximate(f, N)
            assert report.total_error <= 1e-15
            assert report.k_used == [0]
            assert report.t == 1


def test_approximate_rejects_bad_n():
    with pytest.raises(DomainError):
        approximate(indicator(Ball.of(2, 0, 0)), 0)
    with pytest.raises(DomainError):
        approximate_at_level(indicator(Ball.of(2, 0, 0)), -1)


def test_at_level_zero_on_indicator():
    f = indicator(Ball.of(2, 0, 1))
    _, report = approximate_at_level(f, 0)
    assert report.t == 1
    assert report.total_error == pytest.approx(0.5, abs=1e-15)


def test_exact_reconstruction_regime(rng):
    for _ in range(5):
        f = random_step(rng, 2, 4, 1, density=1.0)
        _, report = approximate(f, 10**6)
        assert report.k_used == [4, 4]
        assert report.total_error < 1e-9


@pytest.mark.parametrize("p", PRIMES)
def test_minimal_level_selected(p, rng):
    m = HaarMeasure(p)
    for _ in range(10):
        f = random_step(rng, p, rng.randint(0, 3), 1, density=0.6)
        for N in (1, 2, 4, 8):
            _, report = approximate(f, N)
            for cp, k, err in zip(coset_decompose(f), report.k_used, report.per_coset_errors):
                assert err < 1 / N
                if k > 0:
                    coarser = l2_norm(m, cp.piece - approximate_piece(cp, k - 1))
                    assert coarser >= 1 / N


@pytest.mark.parametrize("p", PRIMES)
def test_specialization_to_zp(p, rng):
    for _ in range(10):
        f = random_zp_step(rng, p, rng.randint(0, 3))
        if not f.pieces:
            continue
        for N in (1, 3, 9):
            phi, report = approximate(f, N)
            assert report.t == 1
            t = fourier_truncate(f, report.k_used[0])
            n = max(phi.level, t.level)
            assert np.max(np.abs(to_array(phi, n) - to_array(t, n)), initial=0) <= 1e-12


def test_membership():
    assert membership_check(zero(2))
    assert membership_check(indicator(Ball.of(2, 0, 1)))
    f = StepFunction(3, 2, {Ball.of(3, Fraction(1, 9), 2): 1 + 1j, Ball.of(3, 4, 2): -2})
    phi, _ = approximate(f, 3)
    assert membership_check(phi)


def test_report_serializes():
    _, report = approximate(indicator(Ball.of(2, Fraction(1, 2), 1)), 2)
    d = report.to_dict()
    assert list(d) == ["t", "per_coset_errors", "total_error", "bound", "k_used", "sup_error", "runtime_ms"]
    assert d["t"] == 1 and d["bound"] == 0.5
