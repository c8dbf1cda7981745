"""Exact arithmetic on the circle R/Z.

Points are reduced rationals, the maps x -> c*x mod 1 act exactly, and
base-(a*b) digit words code points via the uniform Markov partition.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np


@dataclass(frozen=True)
class TorusPoint:
    """A point of R/Z stored as a reduced fraction num/den in [0, 1)."""

    num: int
    den: int

    def __post_init__(self):
        if self.den == 0:
            raise ValueError("zero denominator")
        num, den = self.num, self.den
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __float__(self) -> float:
        return self.num / self.den

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    @classmethod
    def parse(cls, text: str) -> "TorusPoint":
        p, _, q = text.partition("/")
        return cls(int(p), int(q) if q else 1)


@dataclass(frozen=True)
class DigitWord:
    """A finite digit word in a fixed base, coding the left endpoint of a cylinder."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be >= 2")
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        for d in self.digits:
            if not 0 <= d < self.base:
                raise ValueError(f"digit {d} out of range for base {self.base}")

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        sep = "" if self.base <= 10 else "."
        return f"b{self.base}:" + sep.join(str(d) for d in self.digits)

    @classmethod
    def parse(cls, text: str) -> "DigitWord":
        head, _, body = text.partition(":")
        if not head.startswith("b"):
            raise ValueError(f"not a digit word: {text!r}")
        base = int(head[1:])
        if not body:
            digits: tuple[int, ...] = ()
        elif base <= 10:
            digits = tuple(int(ch) for ch in body)
        else:
            digits = tuple(int(part) for part in body.split("."))
        return cls(base, digits)


@dataclass(frozen=True)
class CylinderInterval:
    """The interval [j/d, (j+1)/d] mod Z."""

    depth: int
    index: int

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if not 0 <= self.index < self.depth:
            raise ValueError("index out of range")

    def left(self) -> Fraction:
        return Fraction(self.index, self.depth)

    def right(self) -> Fraction:
        return Fraction(self.index + 1, self.depth)


def make_point(p: int, q: int) -> TorusPoint:
    """Normalized point (p mod q)/q; q = 0 is rejected."""
    return TorusPoint(p, q)


def apply_times(x: TorusPoint, c: int) -> TorusPoint:
    """The map T_c: x -> c*x mod 1, exactly."""
    return TorusPoint(c * x.num, x.den)


def orbit_grid(x: TorusPoint, a: int, b: int, N: int) -> list[list[TorusPoint]]:
    """The N x N array of points a^m b^n x, computed by modular exponentiation.

    Entry (m, n) equals apply_times iterated m times with a and n times
    with b; powers of a and b mod den are precomputed so the cost is one
    modular multiplication per entry.
    """
    if a < 2 or b < 2:
        raise ValueError("a, b must be >= 2")
    if N < 1:
        raise ValueError("N must be >= 1")
    den = x.den
    arow = [pow(a, m, den) for m in range(N)]
    bcol = [pow(b, n, den) * x.num % den for n in range(N)]
    return [[TorusPoint(am * bn, den) for bn in bcol] for am in arow]


def orbit_fracs(x: TorusPoint, a: int, b: int, N: int) -> np.ndarray:
    """Float values of the N x N orbit grid, exact up to the final rounding.

    Small denominators go through vectorized int64 modular arithmetic;
    large ones iterate with small-multiplier big-int steps and extract the
    53 leading bits of each fractional part.
    """
    den = x.den
    if den == 1:
        return np.zeros((N, N))
    if den < 2**31:
        arow = np.array([pow(a, m, den) for m in range(N)], dtype=np.int64)
        bcol = np.array([pow(b, n, den) * x.num % den for n in range(N)], dtype=np.int64)
        return (arow[:, None] * bcol[None, :]) % den / den
    out = np.empty((N, N))
    scale = 2.0**-53
    row = x.num
    for m in range(N):
        z = row
        for n in range(N):
            out[m, n] = ((z << 53) // den) * scale
            z = z * b % den
        row = row * a % den
    return out


def digits_of(x: TorusPoint, base: int, L: int) -> DigitWord:
    """First L digits of the greedy base expansion of x (trailing zeros at lattice points)."""
    if base < 2:
        raise ValueError("base must be >= 2")
    if L < 1:
        raise ValueError("L must be >= 1")
    digits = []
    num, den = x.num, x.den
    for _ in range(L):
        num *= base
        digits.append(num // den)
        num %= den
    return DigitWord(base, tuple(digits))


def point_of_word(w: DigitWord) -> TorusPoint:
    """Sum of w_i * base^-(i+1): the left endpoint of the cylinder coded by w."""
    num = 0
    for d in w.digits:
        num = num * w.base + d
    return TorusPoint(num, w.base ** len(w.digits))


def cylinder_of(x: TorusPoint, d: int) -> CylinderInterval:
    """The depth-d cylinder containing x, index floor(d*x) (left-closed convention)."""
    if d < 1:
        raise ValueError("depth must be >= 1")
    return CylinderInterval(d, x.num * d // x.den)


def random_point(den: int, seed: int) -> TorusPoint:
    """Seeded pseudo-uniform rational with the given denominator."""
    rng = random.Random(seed)
    return TorusPoint(rng.randrange(den), den)


def random_word(base: int, length: int, seed: int) -> DigitWord:
    """Seeded i.i.d.-digit word."""
    rng = random.Random(seed)
    return DigitWord(base, tuple(rng.randrange(base) for _ in range(length)))
