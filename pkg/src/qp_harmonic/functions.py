"""A small language for naming test functions, and a reproducible generator.

Grammar::

    spec   := "sum(" [spec (";" spec)*] ")" | kind ":" params
    kind   := "indicator" | "character_lift" | "random"
    params := key "=" value ("," key "=" value)*

``indicator`` takes ``center`` (a rational such as ``1/2`` or ``3/5^2``) and
``level``; ``character_lift`` takes ``a``, ``k`` and optionally ``rep`` (the
coset representative, default 0); ``random`` takes ``level``, ``window`` and
optionally ``seed``.

Random values come from SplitMix64: the state advances by
``0x9E3779B97F4A7C15`` per draw and is mixed with the standard
``(30, 0xBF58476D1CE4E5B9), (27, 0x94D049BB133111EB), 31`` xor-shift-multiply
finalizer; the top 53 bits give a uniform double in ``[0, 1)``, mapped to
``[-1, 1)`` as ``2u - 1``.  Balls are filled in ascending order of center,
real part first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import Character, character_function
from .padic import Ball, DomainError, PAdicApprox, ball_split, negate, parse_rational
from .step import StepFunction, indicator, lift, shift

MASK64 = (1 << 64) - 1


class SpecSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.pos = pos


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def symmetric(self) -> float:
        return 2.0 * self.uniform() - 1.0


_PARAMS = {
    "indicator": {"center": "rational", "level": "int"},
    "character_lift": {"a": "int", "k": "int", "rep": "rational"},
    "random": {"level": "int", "window": "int", "seed": "int"},
}
_REQUIRED = {
    "indicator": ("center", "level"),
    "character_lift": ("a", "k"),
    "random": ("level", "window"),
}


@dataclass(frozen=True)
class FunctionSpec:
    kind: str
    params: dict = field(default_factory=dict)
    children: tuple = ()

    def __str__(self):
        if self.kind == "sum":
            return "sum(" + "; ".join(str(c) for c in self.children) + ")"
        order = list(_PARAMS[self.kind])
        items = sorted(self.params.items(), key=lambda kv: order.index(kv[0]))
        return self.kind + ":" + ",".join(f"{k}={v}" for k, v in items)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message, pos=None):
        raise SpecSyntaxError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def word(self):
        self.skip()
        m = re.compile(r"[A-Za-z_]+").match(self.text, self.pos)
        if not m:
            self.error("expected a name")
        self.pos = m.end()
        return m.group(), m.start()

    def expect(self, ch):
        self.skip()
        if not self.text.startswith(ch, self.pos):
            found = self.text[self.pos : self.pos + 1] or "end of input"
            self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos : self.pos + 1]

    def spec(self) -> FunctionSpec:
        kind, at = self.word()
        if kind == "sum":
            self.expect("(")
            children = []
            if self.peek() != ")":
                children.append(self.spec())
                while self.peek() == ";":
                    self.pos += 1
                    children.append(self.spec())
            self.expect(")")
            return FunctionSpec("sum", {}, tuple(children))
        if kind not in _PARAMS:
            self.error(f"unknown function kind {kind!r}", at)
        self.expect(":")
        params = {}
        while True:
            key, kat = self.word()
            if key not in _PARAMS[kind]:
                self.error(f"unknown parameter {key!r} for {kind}", kat)
            if key in params:
                self.error(f"repeated parameter {key!r}", kat)
            self.expect("=")
            self.skip()
            m = re.compile(r"-?\d+(\s*/\s*\d+(\s*\^\s*-?\d+)?)?").match(self.text, self.pos)
            if not m:
                self.error(f"expected a number for {key!r}")
            token = m.group()
            if _PARAMS[kind][key] == "int":
                if "/" in token:
                    self.error(f"{key!r} must be an integer, got {token!r}", m.start())
                params[key] = int(token)
            else:
                try:
                    params[key] = parse_rational(token)
                except (ValueError, ZeroDivisionError):
                    self.error(f"bad rational {token!r}", m.start())
            self.pos = m.end()
            nxt = self.peek()
            if nxt not in (",", ";", ")", ""):
                self.error(f"unexpected {nxt!r} after {key}={token}")
            if nxt != ",":
                break
            self.pos += 1
        for key in _REQUIRED[kind]:
            if key not in params:
                self.error(f"{kind} needs parameter {key!r}", at)
        _validate(kind, params, lambda msg: self.error(msg, at))
        return FunctionSpec(kind, params)


def _validate(kind, params, fail):
    if kind == "random":
        if params["window"] < 0:
            fail("window must be >= 0")
        if params["level"] < -params["window"]:
            fail("level must be >= -window")
    elif kind == "character_lift" and params["k"] < 0:
        fail("k must be >= 0")


def parse_spec(text: str) -> FunctionSpec:
    parser = _Parser(text)
    spec = parser.spec()
    parser.skip()
    if parser.pos != len(text):
        parser.error(f"unexpected {text[parser.pos]!r}")
    return spec


def generate(spec: FunctionSpec, p: int, default_seed: int = 0) -> StepFunction:
    """The step function named by ``spec`` for the prime ``p``."""
    if spec.kind == "sum":
        total = StepFunction(p, 0)
        for child in spec.children:
            total = total + generate(child, p, default_seed)
        return total
    params = spec.params
    if spec.kind == "indicator":
        return indicator(Ball.of(p, params["center"], params["level"]))
    if spec.kind == "character_lift":
        chi = Character.from_fraction(p, params["a"], params["k"])
        k = max(params["k"], 0)
        on_h = lift(character_function(chi, k))
        rep = PAdicApprox.from_rational(p, params.get("rep", Fraction(0)), k)
        return shift(on_h, negate(rep))
    if spec.kind == "random":
        rng = SplitMix64(params.get("seed", default_seed))
        level, window = params["level"], params["window"]
        region = Ball.of(p, 0, -window)
        pieces = {}
        for ball in ball_split(region, level):
            re_part = rng.symmetric()
            pieces[ball] = complex(re_part, rng.symmetric())
        return StepFunction(p, level, pieces)
    raise DomainError(f"unknown function kind {spec.kind!r}")
