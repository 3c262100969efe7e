"""Locally constant, compactly supported functions on Q_p.

A :class:`StepFunction` assigns complex values to finitely many disjoint balls
of one common level.  Ball combinatorics are exact; only the values are
floating point.
"""

from __future__ import annotations

import json
from types import MappingProxyType

import numpy as np

from .padic import (
    Ball,
    DomainError,
    PAdicApprox,
    PrecisionError,
    RefinementError,
    add,
    ball_split,
    negate,
    parse_rational,
    reduce,
    zp_balls,
    _check_prime,
)


class StepFunction:
    """Finite map from balls (all at ``level``) to nonzero complex values."""

    __slots__ = ("prime", "level", "pieces")

    def __init__(self, prime: int, level: int, pieces=None):
        p = _check_prime(prime)
        clean = {}
        for ball, value in (pieces or {}).items():
            if ball.prime != p:
                raise DomainError(f"ball {ball} has prime {ball.prime}, expected {p}")
            if ball.level != level:
                raise DomainError(f"ball {ball} is not at level {level}")
            if ball in clean:
                raise DomainError(f"duplicate ball {ball}")
            value = complex(value)
            if value != 0:
                clean[ball] = value
        self._set(p, level, clean)

    @classmethod
    def _trusted(cls, p: int, level: int, pieces: dict) -> StepFunction:
        obj = object.__new__(cls)
        obj._set(p, level, {b: v for b, v in pieces.items() if v != 0})
        return obj

    def _set(self, p, level, pieces):
        object.__setattr__(self, "prime", p)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "pieces", MappingProxyType(pieces))

    def __setattr__(self, name, value):
        raise AttributeError("StepFunction is immutable")

    def __repr__(self):
        return f"StepFunction(p={self.prime}, level={self.level}, pieces={len(self.pieces)})"

    def __len__(self):
        return len(self.pieces)

    def __eq__(self, other):
        if not isinstance(other, StepFunction) or other.prime != self.prime:
            return NotImplemented
        n = max(self.level, other.level)
        return dict(refine(self, n).pieces) == dict(refine(other, n).pieces)

    __hash__ = None

    def __add__(self, other):
        return combine(self, other, "add")

    def __sub__(self, other):
        return combine(self, scale(other, -1), "add")

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, StepFunction):
            return combine(self, other, "multiply")
        return scale(self, other)

    __rmul__ = __mul__

    def __call__(self, x: PAdicApprox) -> complex:
        return evaluate(self, x)

    def sorted_items(self) -> list:
        """Pieces in ascending order of center."""
        return sorted(self.pieces.items(), key=lambda kv: kv[0].center.to_fraction())

    def support_window(self) -> int:
        """Smallest ``m >= 0`` with support inside ``p^-m Z_p``."""
        m = 0
        for ball in self.pieces:
            m = max(m, -ball.level, -ball.center.lo)
        return m

    def to_json(self) -> str:
        return json.dumps(to_dict(self))


def zero(p: int, level: int = 0) -> StepFunction:
    return StepFunction(p, level)


def indicator(B: Ball) -> StepFunction:
    return StepFunction._trusted(B.prime, B.level, {B: 1.0 + 0j})


def constant_on(B: Ball, c: complex) -> StepFunction:
    return StepFunction._trusted(B.prime, B.level, {B: complex(c)})


def evaluate(f: StepFunction, x: PAdicApprox) -> complex:
    if x.prime != f.prime:
        raise DomainError(f"mismatched primes {x.prime} and {f.prime}")
    if x.hi < f.level:
        raise PrecisionError(f"point known mod p^{x.hi}, function resolves level {f.level}")
    return f.pieces.get(Ball.around(x, f.level), 0j)


def shift(f: StepFunction, g: PAdicApprox) -> StepFunction:
    """``x -> f(x + g)``: each ball ``c + p^n Z_p`` moves to ``c - g + p^n Z_p``."""
    if g.prime != f.prime:
        raise DomainError(f"mismatched primes {g.prime} and {f.prime}")
    if g.hi < f.level:
        raise PrecisionError(f"shift known mod p^{g.hi}, function resolves level {f.level}")
    n = f.level
    minus_g = negate(reduce(g, n))
    return StepFunction._trusted(
        f.prime, n, {Ball.around(add(b.center, minus_g), n): v for b, v in f.pieces.items()}
    )


def _in_zp(ball: Ball) -> bool:
    return ball.level >= 0 and ball.center.lo >= 0


def lift(k: StepFunction) -> StepFunction:
    """Extension by zero of a function on Z_p to all of Q_p."""
    for ball in k.pieces:
        if not _in_zp(ball):
            raise DomainError(f"piece {ball} is not contained in Z_p")
    return StepFunction._trusted(k.prime, k.level, dict(k.pieces))


def refine(f: StepFunction, n2: int) -> StepFunction:
    if n2 < f.level:
        raise RefinementError(f"cannot refine level {f.level} to coarser level {n2}")
    if n2 == f.level:
        return f
    pieces = {}
    for ball, v in f.pieces.items():
        for child in ball_split(ball, n2):
            pieces[child] = v
    return StepFunction._trusted(f.prime, n2, pieces)


def restrict(f: StepFunction, B: Ball) -> StepFunction:
    """``f`` times the indicator of ``B``."""
    if B.prime != f.prime:
        raise DomainError(f"mismatched primes {B.prime} and {f.prime}")
    if B.level > f.level:
        f = refine(f, B.level)
    return StepFunction._trusted(
        f.prime, f.level, {b: v for b, v in f.pieces.items() if b.within(B)}
    )


def _aligned(f1: StepFunction, f2: StepFunction):
    if f1.prime != f2.prime:
        raise DomainError(f"mismatched primes {f1.prime} and {f2.prime}")
    n = max(f1.level, f2.level)
    return refine(f1, n), refine(f2, n), n


def combine(f1: StepFunction, f2: StepFunction, op: str) -> StepFunction:
    """Pointwise ``add`` or ``multiply`` after refining to the finer level."""
    g1, g2, n = _aligned(f1, f2)
    if op == "add":
        pieces = dict(g1.pieces)
        for b, v in g2.pieces.items():
            pieces[b] = pieces.get(b, 0j) + v
    elif op == "multiply":
        pieces = {b: v * g2.pieces[b] for b, v in g1.pieces.items() if b in g2.pieces}
    else:
        raise ValueError(f"unknown operation {op!r}")
    return StepFunction._trusted(g1.prime, n, pieces)


def scale(f: StepFunction, c: complex) -> StepFunction:
    c = complex(c)
    return StepFunction._trusted(f.prime, f.level, {b: c * v for b, v in f.pieces.items()})


def conj(f: StepFunction) -> StepFunction:
    return StepFunction._trusted(f.prime, f.level, {b: v.conjugate() for b, v in f.pieces.items()})


def absolute(f: StepFunction) -> StepFunction:
    return StepFunction._trusted(f.prime, f.level, {b: complex(abs(v)) for b, v in f.pieces.items()})


def sup_norm(f: StepFunction) -> float:
    return max((abs(v) for v in f.pieces.values()), default=0.0)


# Dense form on Z_p: index r of the array is the ball r + p^n Z_p.

def to_array(f: StepFunction, n: int | None = None) -> np.ndarray:
    """Values of ``f`` on the level-``n`` balls of Z_p; requires support in Z_p."""
    p = f.prime
    if n is None:
        n = max(f.level, 0)
    g = refine(f, n)
    out = np.zeros(p**n, dtype=complex)
    for ball, v in g.pieces.items():
        if not _in_zp(ball):
            raise DomainError(f"piece {ball} is not contained in Z_p")
        c = ball.center
        out[c._unit * p**c.lo] = v
    return out


def from_array(p: int, n: int, values) -> StepFunction:
    balls = zp_balls(p, n)
    values = np.asarray(values, dtype=complex)
    if len(values) != len(balls):
        raise DomainError(f"expected {len(balls)} values, got {len(values)}")
    return StepFunction._trusted(p, n, {b: complex(v) for b, v in zip(balls, values) if v != 0})


def disjoint_sum(p: int, level: int, parts) -> StepFunction:
    """Sum of functions at ``level`` whose supports are pairwise disjoint."""
    pieces = {}
    for part in parts:
        if part.level != level:
            part = refine(part, level)
        pieces.update(part.pieces)
    return StepFunction._trusted(p, level, pieces)


def to_dict(f: StepFunction) -> dict:
    return {
        "p": f.prime,
        "level": f.level,
        "pieces": [
            {"center": str(b), "re": v.real, "im": v.imag} for b, v in f.sorted_items()
        ],
    }


def from_dict(data: dict) -> StepFunction:
    p = int(data["p"])
    level = int(data["level"])
    pieces = {}
    for item in data["pieces"]:
        text = item["center"]
        rational, _, modulus = text.partition(" mod ")
        if modulus:
            base, _, exp = modulus.partition("^")
            if int(base) != p or int(exp) != level:
                raise DomainError(f"center {text!r} does not match p={p}, level={level}")
        ball = Ball.of(p, parse_rational(rational), level)
        pieces[ball] = complex(float(item["re"]), float(item["im"]))
    return StepFunction(p, level, pieces)


def from_json(text: str) -> StepFunction:
    return from_dict(json.loads(text))
