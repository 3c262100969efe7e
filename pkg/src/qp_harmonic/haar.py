"""Haar measure on Q_p, integrals, inner products and L2 norms of step functions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .padic import Ball, DomainError, _check_prime
from .step import StepFunction, refine


@dataclass(frozen=True)
class HaarMeasure:
    """``scale`` times the Haar measure giving Z_p mass 1."""

    prime: int
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "prime", _check_prime(self.prime))
        s = Fraction(self.scale)
        if s <= 0:
            raise DomainError(f"scale must be positive, got {s}")
        object.__setattr__(self, "scale", s)

    def __call__(self, f: StepFunction) -> complex:
        return integrate(self, f)


def _measure(m: HaarMeasure, prime: int) -> HaarMeasure:
    if m.prime != prime:
        raise DomainError(f"mismatched primes {m.prime} and {prime}")
    return m


def level_measure(m: HaarMeasure, level: int) -> Fraction:
    return m.scale * Fraction(m.prime) ** (-level)


def ball_measure(m: HaarMeasure, B: Ball) -> Fraction:
    _measure(m, B.prime)
    return level_measure(m, B.level)


def _fsum_complex(values) -> complex:
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def integrate(m: HaarMeasure, f: StepFunction) -> complex:
    """Sum of value times ball measure.

    Every ball has the same measure, so the value sum is taken once with
    ``fsum``; the result is independent of piece order and hence exactly
    invariant under shifts.
    """
    _measure(m, f.prime)
    total = _fsum_complex(f.pieces.values())
    w = level_measure(m, f.level)
    if w == 1:
        return total
    return total * float(w)


def inner_product(m: HaarMeasure, f1: StepFunction, f2: StepFunction) -> complex:
    """``integral of f1 * conj(f2)``, conjugate-linear in ``f2``."""
    _measure(m, f1.prime)
    _measure(m, f2.prime)
    n = max(f1.level, f2.level)
    g1, g2 = refine(f1, n), refine(f2, n)
    terms = (v * g2.pieces[b].conjugate() for b, v in g1.pieces.items() if b in g2.pieces)
    return _fsum_complex(terms) * float(level_measure(m, n))


def l2_norm(m: HaarMeasure, f: StepFunction) -> float:
    _measure(m, f.prime)
    sq = math.fsum(v.real * v.real + v.imag * v.imag for v in f.pieces.values())
    return math.sqrt(sq * float(level_measure(m, f.level)))


def is_nonnegative(f: StepFunction) -> bool:
    return all(v.imag == 0 and v.real >= 0 for v in f.pieces.values())


def uniqueness_ratio(lam: HaarMeasure, mu: HaarMeasure, phi: StepFunction, eta: StepFunction) -> complex:
    """``lam(phi) / lam(eta)`` for nonzero nonnegative ``eta``.

    Any two Haar measures give the same ratio; ``mu`` is only checked for
    compatibility here, the comparison is the caller's.
    """
    _measure(mu, phi.prime)
    if not is_nonnegative(eta):
        raise DomainError("eta must be real and nonnegative")
    if not eta.pieces:
        raise DomainError("eta must be nonzero")
    return integrate(lam, phi) / integrate(lam, eta)
