"""Approximation of step functions on Q_p by shifted liftings of character sums.

Each function is cut along the cosets ``g + Z_p`` it meets.  A piece is moved
onto Z_p by the shift ``x -> f(x + g)``, replaced there by a partial Fourier
sum, extended by zero and moved back with ``-g``.  The pieces are added up
again and the L2 errors are compared with ``t / N``.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .characters import fast_transform, synthesize, truncate_array
from .haar import HaarMeasure, l2_norm
from .padic import DomainError, PAdicApprox, negate, normalize, pad, reduce
from .step import StepFunction, disjoint_sum, from_array, lift, refine, shift, sup_norm, to_array


@dataclass(frozen=True)
class CosetPiece:
    """``piece`` is supported in ``rep + Z_p``."""

    rep: PAdicApprox
    piece: StepFunction


@dataclass
class ApproxReport:
    t: int
    per_coset_errors: list
    total_error: float
    bound: float
    k_used: list
    sup_error: float
    runtime_ms: float = field(default=0.0)

    def to_dict(self) -> dict:
        return asdict(self)


def coset_decompose(f: StepFunction) -> list:
    """Split ``f`` into its nonzero restrictions to cosets of Z_p, ordered by representative."""
    p = f.prime
    g = refine(f, max(f.level, 0))
    m = g.support_window()
    groups = {}
    for ball, v in g.pieces.items():
        frac = normalize(reduce(ball.center, 0)).to_fraction()
        groups.setdefault(frac, {})[ball] = v
    pieces = []
    for frac in sorted(groups):
        a = int(frac * p**m)
        rep = PAdicApprox.from_int(p, -m, 0, a)
        pieces.append(CosetPiece(rep, StepFunction._trusted(p, g.level, groups[frac])))
    return pieces


def _to_h(cp: CosetPiece):
    """The piece moved onto Z_p, as dense values at its level."""
    n = cp.piece.level
    h = shift(cp.piece, pad(cp.rep, n))
    return n, to_array(h, n)


def _from_h(cp: CosetPiece, n: int, values) -> StepFunction:
    return shift(lift(from_array(cp.piece.prime, n, values)), negate(pad(cp.rep, n)))


def approximate_piece(cp: CosetPiece, k: int) -> StepFunction:
    """Shift to Z_p, truncate at character level ``k``, lift, shift back."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    n, x = _to_h(cp)
    m = max(n, k)
    if m > n:
        x = to_array(from_array(cp.piece.prime, n, x), m)
    return _from_h(cp, m, truncate_array(x, cp.piece.prime, m, k))


def _h_error(x, y, n, p) -> float:
    d = np.abs(x - y) ** 2
    return math.sqrt(math.fsum(d) / p**n)


def _finish(f, approximations, ks, bound, start) -> tuple:
    m = HaarMeasure(f.prime)
    errors = [l2_norm(m, cp.piece - phi_i) for cp, phi_i in approximations]
    level = max([f.level, 0] + [phi_i.level for _, phi_i in approximations])
    # approximants of distinct cosets have disjoint supports
    phi = disjoint_sum(f.prime, level, (phi_i for _, phi_i in approximations))
    diff = f - phi
    if bound is None:
        bound = math.fsum(errors)
    report = ApproxReport(
        t=len(approximations),
        per_coset_errors=errors,
        total_error=l2_norm(m, diff),
        bound=bound,
        k_used=ks,
        sup_error=sup_norm(diff),
        runtime_ms=(time.perf_counter() - start) * 1e3,
    )
    return phi, report


def approximate(f: StepFunction, N: int) -> tuple:
    """Approximant with every per-coset L2 error below ``1/N``; ``total_error < t/N``.

    Each coset uses the smallest truncation level that meets the target.
    """
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    start = time.perf_counter()
    m = HaarMeasure(f.prime)
    target = 1.0 / N
    p = f.prime
    approximations, ks = [], []
    for cp in coset_decompose(f):
        n, x = _to_h(cp)
        for k in range(n + 1):
            y = truncate_array(x, p, n, k)
            if k == n or _h_error(x, y, n, p) < target:
                phi_i = _from_h(cp, n, y)
                # the transported error is what is promised; go finer on a rounding tie
                if k == n or l2_norm(m, cp.piece - phi_i) < target:
                    break
        approximations.append((cp, phi_i))
        ks.append(k)
    return _finish(f, approximations, ks, len(approximations) / N, start)


def approximate_at_level(f: StepFunction, k: int) -> tuple:
    """Every coset truncated at level ``k``; ``bound`` is the sum of per-coset errors."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    start = time.perf_counter()
    pieces = coset_decompose(f)
    approximations = [(cp, approximate_piece(cp, k)) for cp in pieces]
    return _finish(f, approximations, [k] * len(pieces), None, start)


def membership_check(phi: StepFunction, tol: float = 1e-9) -> bool:
    """Whether ``phi`` is rebuilt from shifted liftings of character sums within ``tol``."""
    parts = []
    for cp in coset_decompose(phi):
        n, x = _to_h(cp)
        y = synthesize(fast_transform(from_array(phi.prime, n, x)))
        if np.max(np.abs(x - y), initial=0.0) > tol:
            return False
        parts.append(_from_h(cp, n, y))
    total = disjoint_sum(phi.prime, max(phi.level, 0), parts)
    return sup_norm(phi - total) <= tol

