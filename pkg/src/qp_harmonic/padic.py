"""Truncated p-adic numbers, balls of Q_p and coset representatives.

A :class:`PAdicApprox` is a finite window of base-p digits ``d_lo .. d_{hi-1}``
standing for the coset ``sum(d_i p^i) + p^hi Z_p``.  All arithmetic is exact
integer arithmetic on that window; asking for digits that were never stored
raises :class:`PrecisionError` instead of guessing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache


class PAdicError(ValueError):
    """Base class for errors raised by this package."""


class PrecisionError(PAdicError):
    """A truncated expansion does not carry enough digits for the request."""


class DomainError(PAdicError):
    """An argument lies outside the domain of the operation."""


class RefinementError(PAdicError):
    """A refinement was requested towards a coarser level."""


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Prime(int):
    """An ``int`` that is known to be prime."""

    def __new__(cls, p):
        p = int(p)
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        return super().__new__(cls, p)


def _check_prime(p) -> int:
    if isinstance(p, Prime):
        return int(p)
    if not is_prime(int(p)):
        raise DomainError(f"{p} is not prime")
    return int(p)


@dataclass(frozen=True, eq=False)
class PAdicApprox:
    """Digits ``d_lo, ..., d_{hi-1}`` (lowest exponent first) of an element of Q_p mod p^hi."""

    prime: int
    lo: int
    hi: int
    digits: tuple
    # value = _unit * p**lo, with 0 <= _unit < p**(hi - lo)
    _unit: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        p = _check_prime(self.prime)
        if self.hi < self.lo:
            raise DomainError(f"window [{self.lo}, {self.hi}) is empty in the wrong direction")
        digits = tuple(int(d) for d in self.digits)
        if len(digits) != self.hi - self.lo:
            raise DomainError(f"expected {self.hi - self.lo} digits, got {len(digits)}")
        unit = 0
        for d in reversed(digits):
            if not 0 <= d < p:
                raise DomainError(f"digit {d} out of range for p={p}")
            unit = unit * p + d
        object.__setattr__(self, "prime", p)
        object.__setattr__(self, "digits", digits)
        object.__setattr__(self, "_unit", unit)

    @classmethod
    def from_int(cls, p: int, lo: int, hi: int, n: int) -> PAdicApprox:
        """The class of ``n * p**lo`` on the window ``[lo, hi)``."""
        p = _check_prime(p)
        n %= p ** (hi - lo)
        return cls._trusted(p, lo, hi, n)

    @classmethod
    def _trusted(cls, p: int, lo: int, hi: int, unit: int) -> PAdicApprox:
        obj = object.__new__(cls)
        digits = []
        u = unit
        for _ in range(hi - lo):
            u, d = divmod(u, p)
            digits.append(d)
        object.__setattr__(obj, "prime", p)
        object.__setattr__(obj, "lo", lo)
        object.__setattr__(obj, "hi", hi)
        object.__setattr__(obj, "digits", tuple(digits))
        object.__setattr__(obj, "_unit", unit)
        return obj

    @classmethod
    def zero(cls, p: int, hi: int = 0, lo: int | None = None) -> PAdicApprox:
        lo = hi if lo is None else lo
        return cls.from_int(p, lo, hi, 0)

    @classmethod
    def from_rational(cls, p: int, q, hi: int) -> PAdicApprox:
        """Expand a rational whose denominator is a power of ``p``, modulo ``p**hi``.

        The window starts at ``-m`` for a denominator ``p**m`` (at 0 for integers),
        or at ``hi`` if that is lower.
        """
        p = _check_prime(p)
        q = Fraction(q)
        den = q.denominator
        m = 0
        while den % p == 0:
            den //= p
            m += 1
        if den != 1:
            raise DomainError(f"{q} has a denominator that is not a power of {p}")
        lo = min(-m, hi)
        # q * p**-lo is an integer since -lo >= m
        return cls.from_int(p, lo, hi, q.numerator * p ** (-lo - m))

    def to_fraction(self) -> Fraction:
        """The representative ``sum(d_i p^i)`` as an exact rational in ``[0, p**hi)``."""
        if self.lo >= 0:
            return Fraction(self._unit * self.prime**self.lo)
        return Fraction(self._unit, self.prime ** (-self.lo))

    def is_zero(self) -> bool:
        return self._unit == 0

    def in_zp(self) -> bool:
        """True when no nonzero digit sits below exponent 0."""
        if self.lo >= 0:
            return True
        return self._unit % self.prime ** min(-self.lo, self.hi - self.lo) == 0

    def residue(self, n: int) -> int:
        """The integer in ``[0, p**n)`` congruent to this element of Z_p."""
        if self.hi < n:
            raise PrecisionError(f"need digits up to exponent {n}, have up to {self.hi}")
        if not self.in_zp():
            raise DomainError("element is not in Z_p")
        r = reduce(self, n)
        if r.lo >= 0:
            return r._unit * self.prime**r.lo
        return r._unit // self.prime ** (-r.lo)

    def __eq__(self, other):
        if not isinstance(other, PAdicApprox):
            return NotImplemented
        return (self.prime, self.lo, self.hi, self._unit) == (other.prime, other.lo, other.hi, other._unit)

    def __hash__(self):
        return hash((self.prime, self.lo, self.hi, self._unit))

    def __str__(self):
        ds = " ".join(str(d) for d in self.digits)
        return f"{ds} | p={self.prime}, lo={self.lo}"

    def __neg__(self):
        return negate(self)

    def __add__(self, other):
        if not isinstance(other, PAdicApprox):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, PAdicApprox):
            return NotImplemented
        return add(self, negate(other))


def reduce(x: PAdicApprox, n: int) -> PAdicApprox:
    """Discard the digits at exponents ``>= n``."""
    if n > x.hi:
        raise PrecisionError(f"cannot reduce mod p^{n}: digits known only below exponent {x.hi}")
    if n == x.hi:
        return x
    if n <= x.lo:
        return PAdicApprox._trusted(x.prime, n, n, 0)
    return PAdicApprox._trusted(x.prime, x.lo, n, x._unit % x.prime ** (n - x.lo))


def pad(x: PAdicApprox, hi: int) -> PAdicApprox:
    """Extend the window to ``hi`` with zero digits.

    Only meaningful when ``x`` denotes the exact rational ``sum(d_i p^i)``,
    as coset representatives do.
    """
    if hi <= x.hi:
        return x
    return PAdicApprox._trusted(x.prime, x.lo, hi, x._unit)


def normalize(x: PAdicApprox) -> PAdicApprox:
    """Raise ``lo`` past low-order zero digits; zero becomes the empty window at ``hi``."""
    if x._unit == 0:
        if x.lo == x.hi:
            return x
        return PAdicApprox._trusted(x.prime, x.hi, x.hi, 0)
    p, unit, lo = x.prime, x._unit, x.lo
    if unit % p:
        return x
    while unit % p == 0:
        unit //= p
        lo += 1
    return PAdicApprox._trusted(p, lo, x.hi, unit)


def _same_prime(x: PAdicApprox, y: PAdicApprox) -> int:
    if x.prime != y.prime:
        raise DomainError(f"mismatched primes {x.prime} and {y.prime}")
    return x.prime


def add(x: PAdicApprox, y: PAdicApprox) -> PAdicApprox:
    """Sum on the window ``[min(lo), min(hi))``."""
    p = _same_prime(x, y)
    lo = min(x.lo, y.lo)
    hi = min(x.hi, y.hi)
    total = x._unit * p ** (x.lo - lo) + y._unit * p ** (y.lo - lo)
    return PAdicApprox._trusted(p, lo, hi, total % p ** (hi - lo))


def negate(x: PAdicApprox) -> PAdicApprox:
    return PAdicApprox._trusted(x.prime, x.lo, x.hi, -x._unit % x.prime ** (x.hi - x.lo))


def valuation(x: PAdicApprox) -> int | None:
    """Exponent of the lowest nonzero digit, or None for the zero class."""
    if x.is_zero():
        return None
    return normalize(x).lo


@dataclass(frozen=True, eq=False)
class Ball:
    """The coset ``center + p^level Z_p``; ``center`` is reduced and normalized."""

    prime: int
    level: int
    center: PAdicApprox

    def __post_init__(self):
        if self.center.prime != self.prime:
            raise DomainError("center has a different prime")
        if self.center.hi != self.level:
            raise DomainError(f"center must be reduced mod p^{self.level}")
        if normalize(self.center) != self.center:
            raise DomainError("center is not normalized")

    @classmethod
    def around(cls, x: PAdicApprox, level: int) -> Ball:
        """The ball of the given level containing ``x``."""
        c = normalize(reduce(x, level))
        obj = object.__new__(cls)
        object.__setattr__(obj, "prime", x.prime)
        object.__setattr__(obj, "level", level)
        object.__setattr__(obj, "center", c)
        return obj

    @classmethod
    def of(cls, p: int, center, level: int) -> Ball:
        """Ball from a rational center (denominator a power of ``p``)."""
        if isinstance(center, PAdicApprox):
            return cls.around(center, level)
        return cls.around(PAdicApprox.from_rational(p, center, level), level)

    def contains(self, x: PAdicApprox) -> bool:
        if x.prime != self.prime:
            raise DomainError(f"mismatched primes {x.prime} and {self.prime}")
        if x.hi < self.level:
            raise PrecisionError(f"need digits below exponent {self.level}, have below {x.hi}")
        return normalize(reduce(x, self.level)) == self.center

    def within(self, other: Ball) -> bool:
        """True when this ball is a subset of ``other``."""
        if other.level > self.level:
            return False
        return normalize(reduce(self.center, other.level)) == other.center

    def __eq__(self, other):
        if not isinstance(other, Ball):
            return NotImplemented
        a, b = self.center, other.center
        return (self.prime, self.level, a.lo, a._unit) == (other.prime, other.level, b.lo, b._unit)

    def __hash__(self):
        return hash((self.level, self.center.lo, self.center._unit))

    def __str__(self):
        return f"{format_rational(self.prime, self.center.to_fraction())} mod {self.prime}^{self.level}"


def ball_split(B: Ball, n2: int) -> list:
    """The ``p**(n2 - level)`` sub-balls of ``B`` at level ``n2``, ascending."""
    if n2 < B.level:
        raise RefinementError(f"cannot split level {B.level} ball to coarser level {n2}")
    if n2 == B.level:
        return [B]
    p, n, c = B.prime, B.level, B.center
    lo = min(c.lo, n)
    base = c._unit * p ** (c.lo - lo)
    step = p ** (n - lo)
    return [
        Ball.around(PAdicApprox._trusted(p, lo, n2, base + j * step), n2)
        for j in range(p ** (n2 - n))
    ]


def coset_reps(p: int, m: int) -> list:
    """Representatives ``a/p^m`` (``0 <= a < p^m``) of ``p^-m Z_p / Z_p``, window ``[-m, 0)``."""
    p = _check_prime(p)
    if m < 0:
        raise DomainError(f"m must be nonnegative, got {m}")
    return [PAdicApprox._trusted(p, -m, 0, a) for a in range(p**m)]


@lru_cache(maxsize=256)
def zp_balls(p: int, n: int) -> tuple:
    """Balls of Z_p at level ``n >= 0`` indexed by their integer residue."""
    return tuple(Ball.around(PAdicApprox._trusted(p, 0, n, r), n) for r in range(p**n))


def format_rational(p: int, q: Fraction) -> str:
    """``a/p^m`` sugar for a rational with p-power denominator."""
    q = Fraction(q)
    den = q.denominator
    m = 0
    while den % p == 0:
        den //= p
        m += 1
    if den != 1:
        raise DomainError(f"{q} has a denominator that is not a power of {p}")
    return f"{q.numerator}/{p}^{m}"


_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*(?:\^\s*(-?\d+))?)?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``a``, ``a/b`` or ``a/b^m``."""
    m = _RATIONAL.match(text)
    if not m:
        raise ValueError(f"not a rational: {text!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return Fraction(num)
    base = int(m.group(2))
    exp = int(m.group(3)) if m.group(3) is not None else 1
    if base == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num) / Fraction(base) ** exp


_DIGITS = re.compile(r"^\s*([\d\s]*)\|\s*p\s*=\s*(\d+)\s*,\s*lo\s*=\s*(-?\d+)\s*$")


def parse_padic(text: str, p: int | None = None, hi: int | None = None) -> PAdicApprox:
    """Parse ``"d_lo d_lo+1 ... | p=<p>, lo=<lo>"`` or rational sugar ``a/p^m``.

    The rational form needs ``p`` and the window top ``hi``.
    """
    m = _DIGITS.match(text)
    if m:
        digits = tuple(int(d) for d in m.group(1).split())
        prime = int(m.group(2))
        if p is not None and p != prime:
            raise DomainError(f"text has p={prime}, expected {p}")
        lo = int(m.group(3))
        return PAdicApprox(prime, lo, lo + len(digits), digits)
    if p is None or hi is None:
        raise ValueError(f"rational form {text!r} needs p and hi")
    return PAdicApprox.from_rational(p, parse_rational(text), hi)
