"""Characters of Z_p and Fourier analysis on its finite quotients Z/p^n.

The character ``a/p^k`` sends ``x`` to ``exp(2 pi i a x / p^k)``.  Characters of
level at most ``k`` span exactly the functions constant on balls of level
``k``, so truncating a Fourier series at level ``k`` is the orthogonal
projection onto that space.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .padic import DomainError, PAdicApprox, _check_prime
from .step import StepFunction, from_array, to_array


@dataclass(frozen=True, order=True)
class Character:
    prime: int
    level: int
    index: int

    def __post_init__(self):
        p = _check_prime(self.prime)
        object.__setattr__(self, "prime", p)
        if self.level < 0:
            raise DomainError(f"character level must be >= 0, got {self.level}")
        if self.level == 0:
            if self.index != 0:
                raise DomainError("the level-0 character has index 0")
        elif not 0 <= self.index < p**self.level or self.index % p == 0:
            raise DomainError(f"{self.index}/{p}^{self.level} is not in canonical form")

    @classmethod
    def from_fraction(cls, p: int, a: int, k: int) -> Character:
        """Canonical character for ``a/p^k`` (``a`` taken mod ``p^k``)."""
        p = _check_prime(p)
        if k < 0:
            raise DomainError(f"k must be >= 0, got {k}")
        a %= p**k
        while k > 0 and a % p == 0:
            a //= p
            k -= 1
        if k == 0:
            a = 0
        return cls(p, k, a)

    @classmethod
    def trivial(cls, p: int) -> Character:
        return cls(p, 0, 0)

    def __str__(self):
        return f"{self.index}/{self.prime}^{self.level}"

    def __call__(self, x: PAdicApprox) -> complex:
        return char_eval(self, x)


@lru_cache(maxsize=64)
def _roots(P: int) -> np.ndarray:
    """``exp(2 pi i j / P)`` for ``0 <= j < P``; angles already reduced mod ``P``."""
    j = np.arange(P)
    return np.exp(2j * np.pi * j / P)


def char_eval(chi: Character, x: PAdicApprox) -> complex:
    if x.prime != chi.prime:
        raise DomainError(f"mismatched primes {x.prime} and {chi.prime}")
    if not x.in_zp():
        raise DomainError("characters of Z_p are evaluated on Z_p only")
    P = chi.prime**chi.level
    r = x.residue(chi.level)
    return cmath.exp(2j * math.pi * ((chi.index * r) % P) / P)


def characters_up_to_level(p: int, k: int) -> list:
    p = _check_prime(p)
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    out = [Character(p, 0, 0)]
    for j in range(1, k + 1):
        out.extend(Character(p, j, a) for a in range(p**j) if a % p)
    return out


def character_function(chi: Character, level: int | None = None) -> StepFunction:
    """``chi`` as a step function on Z_p (zero off Z_p)."""
    n = chi.level if level is None else level
    if n < chi.level:
        raise DomainError(f"a level-{chi.level} character needs resolution >= {chi.level}")
    p = chi.prime
    P = p**n
    a = chi.index * p ** (n - chi.level)
    return from_array(p, n, _roots(P)[(a * np.arange(P)) % P])


def _array_on_zp(f: StepFunction):
    n = max(f.level, 0)
    return n, to_array(f, n)


def fourier_coefficient(f: StepFunction, chi: Character) -> complex:
    """``p^-n sum_r f(r) conj(chi(r))`` over the residues mod ``p^n``."""
    if f.prime != chi.prime:
        raise DomainError(f"mismatched primes {f.prime} and {chi.prime}")
    n = max(f.level, chi.level, 0)
    values = to_array(f, n)
    P = f.prime**n
    a = chi.index * f.prime ** (n - chi.level)
    conj_chi = _roots(P)[(-a * np.arange(P)) % P]
    terms = values * conj_chi
    return complex(math.fsum(terms.real), math.fsum(terms.imag)) / P


class FourierCoefficients:
    """All ``p^n`` coefficients of a function on Z/p^n.

    ``values[a]`` is the coefficient of the character ``a/p^n`` (in lowest terms).
    """

    def __init__(self, prime: int, level: int, values):
        self.prime = _check_prime(prime)
        self.level = level
        self.values = np.asarray(values, dtype=complex)
        if self.values.shape != (self.prime**level,):
            raise DomainError(f"expected {self.prime**level} coefficients")

    def _slot(self, chi: Character) -> int:
        if chi.prime != self.prime or chi.level > self.level:
            raise KeyError(chi)
        return chi.index * self.prime ** (self.level - chi.level)

    def __getitem__(self, chi: Character) -> complex:
        return complex(self.values[self._slot(chi)])

    def __len__(self):
        return len(self.values)

    def items(self):
        for chi in characters_up_to_level(self.prime, self.level):
            yield chi, self[chi]

    def as_dict(self) -> dict:
        return dict(self.items())

    def energy(self) -> float:
        return math.fsum(np.abs(self.values) ** 2)

    def to_json(self) -> str:
        return json.dumps(
            [
                {"character": str(chi), "re": c.real, "im": c.imag}
                for chi, c in self.items()
            ]
        )


def fourier_all(f: StepFunction) -> FourierCoefficients:
    """All coefficients by the direct sum; the reference for :func:`fast_transform`."""
    n, x = _array_on_zp(f)
    p = f.prime
    P = p**n
    roots = _roots(P)
    r = np.arange(P, dtype=np.int64)
    out = np.empty(P, dtype=complex)
    block = max(1, 2**20 // P)
    for start in range(0, P, block):
        a = np.arange(start, min(P, start + block), dtype=np.int64)
        out[start : start + len(a)] = roots[(-np.outer(a, r)) % P] @ x
    return FourierCoefficients(p, n, out / P)


def _radix_dft(x: np.ndarray, p: int, sign: int) -> np.ndarray:
    """Unnormalized DFT along the last axis by radix-``p`` decimation in time.

    ``x`` has shape ``(batch, p^n)``; returns ``sum_r x[r] w^(sign a r)`` with
    ``w = exp(2 pi i / p^n)``.
    """
    B, P = x.shape
    if P == 1:
        return x.copy()
    M = P // p
    # residues r = p r' + s: the p interleaved subsequences are transformed together
    sub = x.reshape(B, M, p).transpose(0, 2, 1).reshape(B * p, M)
    Y = _radix_dft(sub, p, sign).reshape(B, p, M)
    a = np.arange(P)
    s = np.arange(p)
    twiddle = _roots(P)[(sign * np.outer(s, a)) % P]
    return np.einsum("bsa,sa->ba", Y[:, :, a % M], twiddle)


def fast_transform(f: StepFunction) -> FourierCoefficients:
    n, x = _array_on_zp(f)
    p = f.prime
    return FourierCoefficients(p, n, _radix_dft(x[None, :], p, -1)[0] / p**n)


def synthesize(coeffs: FourierCoefficients) -> np.ndarray:
    """Values on Z/p^n of ``sum_a c_a chi_a``."""
    return _radix_dft(coeffs.values[None, :], coeffs.prime, 1)[0]


def truncate_array(x: np.ndarray, p: int, n: int, k: int) -> np.ndarray:
    """Orthogonal projection of values on Z/p^n onto characters of level <= k."""
    c = _radix_dft(x[None, :], p, -1)[0] / p**n
    keep = np.arange(p**n) % p ** max(n - k, 0) == 0
    return _radix_dft(np.where(keep, c, 0)[None, :], p, 1)[0]


def fourier_truncate(f: StepFunction, k: int) -> StepFunction:
    """Partial Fourier sum over characters of level <= ``k``, at level ``max(f.level, k)``."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    n = max(f.level, k, 0)
    x = to_array(f, n)
    if not x.any():
        return StepFunction(f.prime, n)
    return from_array(f.prime, n, truncate_array(x, f.prime, n, k))
