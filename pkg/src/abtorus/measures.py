"""Empirical measures of times-a, times-b orbits and weak* diagnostics.

The N-empirical measure of x averages point masses at the N^2 orbit
points a^m b^n x.  It is stored as a histogram on the uniform partition
plus truncated Fourier coefficients; a weighted Fourier discrepancy
metrizes the weak* topology at the stored truncation.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .torus import TorusPoint, orbit_fracs

HALF_TURN = 2.0 * np.pi


@dataclass(frozen=True)
class EmpiricalMeasure:
    d: int
    weights: tuple[float, ...]
    fourier: dict[int, complex]
    N: int
    meta: tuple | None = None

    @property
    def K(self) -> int:
        return max(abs(k) for k in self.fourier)

    def __post_init__(self):
        total = sum(self.weights)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {total}, not 1")
        if self.fourier.get(0) != 1:
            raise ValueError("fourier[0] must be exactly 1")
        for k, c in self.fourier.items():
            if abs(c) > 1.0 + 1e-12:
                raise ValueError(f"|fourier[{k}]| > 1")


@dataclass(frozen=True)
class TestFunctionTarget:
    """A nonnegative test function with a known Lebesgue integral."""

    func: Callable[[np.ndarray], np.ndarray]
    integral: float


@dataclass
class SemiEquidistReport:
    t_claim: float
    target_measure: float
    horizons: list[int]
    ratios: list[float]
    liminf_estimate: float
    tolerance: float
    verdict: bool
    meta: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {
                "t_claim": self.t_claim,
                "target_measure": self.target_measure,
                "horizons": self.horizons,
                "ratios": self.ratios,
                "liminf_estimate": self.liminf_estimate,
                "tolerance": self.tolerance,
                "verdict": "pass" if self.verdict else "fail",
                "meta": self.meta,
            }
        )

    def to_csv(self) -> str:
        lines = ["horizon,ratio"]
        lines += [f"{n},{v!r}" for n, v in zip(self.horizons, self.ratios)]
        return "\n".join(lines) + "\n"


def _bin_counts(x: TorusPoint, a: int, b: int, N: int, d: int) -> np.ndarray:
    den = x.den
    counts = np.zeros(d, dtype=np.int64)
    arow = [pow(a, m, den) for m in range(N)]
    bcol = [pow(b, n, den) * x.num % den for n in range(N)]
    for am in arow:
        for bn in bcol:
            counts[(am * bn % den) * d // den] += 1
    return counts


def empirical_measure(
    x: TorusPoint, a: int, b: int, N: int, d: int, K: int
) -> EmpiricalMeasure:
    """The N-empirical measure of x on the depth-d partition, with |k| <= K Fourier data."""
    if N < 1 or d < 1 or K < 0:
        raise ValueError("need N >= 1, d >= 1, K >= 0")
    counts = _bin_counts(x, a, b, N, d)
    weights = tuple(int(c) / N**2 for c in counts)
    phases = HALF_TURN * orbit_fracs(x, a, b, N)
    fourier: dict[int, complex] = {0: 1}
    for k in range(1, K + 1):
        c = complex(np.exp(1j * k * phases).mean())
        if abs(c) > 1.0:
            c /= abs(c)
        fourier[k] = c
        fourier[-k] = c.conjugate()
    return EmpiricalMeasure(d=d, weights=weights, fourier=fourier, N=N, meta=(x, a, b))


def fourier_average(x: TorusPoint, a: int, b: int, N: int, k: int) -> complex:
    """The Birkhoff average (1/N^2) sum e^(2 pi i k a^m b^n x)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if k == 0:
        return 1
    phases = HALF_TURN * orbit_fracs(x, a, b, N)
    return complex(np.exp(1j * k * phases).mean())


def lebesgue_reference(d: int = 1, K: int = 16) -> EmpiricalMeasure:
    """The Lebesgue measure truncated like an EmpiricalMeasure (all nonzero modes vanish)."""
    fourier: dict[int, complex] = {0: 1}
    for k in range(1, K + 1):
        fourier[k] = 0j
        fourier[-k] = 0j
    return EmpiricalMeasure(d=d, weights=(1.0 / d,) * d, fourier=fourier, N=0, meta=None)


def weak_star_distance(mu: EmpiricalMeasure, nu: EmpiricalMeasure) -> float:
    """Sum over 1 <= |k| <= K of 2^-|k| |mu_hat(k) - nu_hat(k)|."""
    if mu.K != nu.K:
        raise ValueError(f"truncation mismatch: {mu.K} != {nu.K}")
    return sum(
        2.0 ** -abs(k) * abs(mu.fourier[k] - nu.fourier[k])
        for k in mu.fourier
        if k != 0
    )


def invariance_defect(
    x: TorusPoint, a: int, b: int, N: int, k: int, map_choice: str = "a"
) -> float:
    """|avg e_k over the once-shifted grid minus the plain grid average|.

    Telescoping gives the bound 2/N for every input.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if k == 0:
        raise ValueError("k must be nonzero")
    if map_choice not in ("a", "b"):
        raise ValueError("map_choice must be 'a' or 'b'")
    phases = HALF_TURN * orbit_fracs(x, a, b, N + 1)
    vals = np.exp(1j * k * phases)
    if map_choice == "a":
        shifted = vals[1 : N + 1, :N]
    else:
        shifted = vals[:N, 1 : N + 1]
    return abs(shifted.sum() - vals[:N, :N].sum()) / N**2


def _interval_membership(
    x: TorusPoint, a: int, b: int, N: int, lo: Fraction, hi: Fraction
) -> np.ndarray:
    """Exact indicator grid of a^m b^n x in the open interval (lo, hi) mod Z."""
    length = hi - lo
    if length >= 1:
        return np.ones((N, N), dtype=np.int64)
    den = x.den
    # point num/den in (lo, hi) iff 0 < (num*q - p*den) mod (den*q) < len*den*q
    q = lo.denominator * length.denominator
    p = lo.numerator * length.denominator
    mod = den * q
    top = length.numerator * lo.denominator * den
    arow = [pow(a, m, den) for m in range(N)]
    bcol = [pow(b, n, den) * x.num % den for n in range(N)]
    grid = np.empty((N, N), dtype=np.int64)
    for m, am in enumerate(arow):
        for n, bn in enumerate(bcol):
            rem = (am * bn % den * q - p * den) % mod
            grid[m, n] = 1 if 0 < rem < top else 0
    return grid


def semiequidist_profile(
    x: TorusPoint,
    a: int,
    b: int,
    target,
    horizons: Sequence[int],
    t_claim: float,
    tolerance: float = 0.05,
) -> SemiEquidistReport:
    """Finite-horizon surrogate for the t-semiequidistribution lower bounds.

    `target` is either a pair (lo, hi) of rationals realizing an open
    interval mod Z, or a TestFunctionTarget.  The verdict passes iff the
    minimum over the last quartile of horizons is at least
    t_claim * m(target) - tolerance.
    """
    horizons = list(horizons)
    if not horizons:
        raise ValueError("empty horizons")
    if sorted(horizons) != horizons:
        raise ValueError("horizons must be ascending")
    if not 0 < t_claim <= 1:
        raise ValueError("t_claim must be in (0, 1]")
    Nmax = horizons[-1]
    if isinstance(target, TestFunctionTarget):
        grid = target.func(orbit_fracs(x, a, b, Nmax))
        measure = target.integral
    else:
        lo, hi = Fraction(target[0]), Fraction(target[1])
        if hi <= lo:
            raise ValueError("empty interval")
        grid = _interval_membership(x, a, b, Nmax, lo, hi)
        measure = float(min(hi - lo, Fraction(1)))
    prefix = grid.cumsum(axis=0).cumsum(axis=1)
    ratios = [float(prefix[N - 1, N - 1]) / N**2 for N in horizons]
    tail = ratios[-max(1, len(ratios) // 4) :]
    liminf = min(tail)
    verdict = liminf >= t_claim * measure - tolerance
    return SemiEquidistReport(
        t_claim=t_claim,
        target_measure=measure,
        horizons=horizons,
        ratios=ratios,
        liminf_estimate=liminf,
        tolerance=tolerance,
        verdict=verdict,
        meta={"x": str(x), "a": a, "b": b},
    )


def convergence_diagnostic(
    x: TorusPoint, a: int, b: int, horizons: Sequence[int], K: int
) -> list[float]:
    """Weak* distance to Lebesgue per horizon (no monotonicity is asserted)."""
    horizons = list(horizons)
    if not horizons:
        raise ValueError("empty horizons")
    Nmax = horizons[-1]
    phases = HALF_TURN * orbit_fracs(x, a, b, Nmax)
    out = [0.0] * len(horizons)
    for k in range(1, K + 1):
        prefix = np.exp(1j * k * phases).cumsum(axis=0).cumsum(axis=1)
        for i, N in enumerate(horizons):
            # +k and -k contribute equally
            out[i] += 2.0 ** (1 - k) * abs(prefix[N - 1, N - 1]) / N**2
    return out
