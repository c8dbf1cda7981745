"""Synthesis and finite-depth verification of orbit-irregular points.

The construction interleaves digit blocks in base a*b: on each level a
block copied from a point whose N_k-horizon orbit averages are close to
the Lebesgue integrals of a fixed test family, then free digits, then a
long all-zero block.  Along the N_k horizons the empirical averages are
near Lebesgue; along the L_k horizons a bump function concentrated at 0
picks up mass bounded away from its integral, so the empirical measures
oscillate.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .moran import MoranStructure
from .torus import DigitWord, TorusPoint, digits_of, orbit_fracs, point_of_word

# Fixed denominator for Monte Carlo sample points: a prime small enough for
# the vectorized int64 orbit path.
SAMPLE_DEN = 2_147_483_647


@dataclass(frozen=True)
class TrigTestFunction:
    """eta + (1 - eta) * (1 + trig(2 pi j x)) / 2, bounded in (0, 1]."""

    freq: int
    kind: str  # "cos" | "sin"
    eta: float

    def __call__(self, x):
        trig = np.cos if self.kind == "cos" else np.sin
        return self.eta + (1.0 - self.eta) * (1.0 + trig(2.0 * np.pi * self.freq * np.asarray(x))) / 2.0

    @property
    def integral(self) -> float:
        return self.eta + (1.0 - self.eta) / 2.0

    @property
    def lipschitz(self) -> float:
        """|f(x) - f(y)| <= lipschitz * |x - y| on the circle."""
        return (1.0 - self.eta) * math.pi * self.freq


@dataclass(frozen=True)
class TestFamily:
    eta: float
    functions: tuple[TrigTestFunction, ...]

    @property
    def count(self) -> int:
        return len(self.functions)


def build_test_family(count: int, eta: float = 0.01) -> TestFamily:
    """Odd members are cosines, even members sines, with frequency ceil(i/2)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if not 0 < eta < 1:
        raise ValueError("eta must be in (0, 1)")
    funcs = tuple(
        TrigTestFunction(freq=(i + 2) // 2, kind="cos" if i % 2 == 0 else "sin", eta=eta)
        for i in range(count)
    )
    return TestFamily(eta=eta, functions=funcs)


@dataclass(frozen=True)
class BumpFunction:
    """Piecewise-linear tent: 1 on [0, s], down to 0 on [s, 2s], s = (ab)^-l."""

    base: int
    l: int

    @property
    def support_width(self) -> float:
        return 2.0 * self.base ** -self.l

    @property
    def integral(self) -> Fraction:
        return Fraction(3, 2) / self.base**self.l

    def __call__(self, x):
        s = float(self.base) ** -self.l
        return np.clip((2.0 * s - np.asarray(x)) / s, 0.0, 1.0)


def bump_function(a: int, b: int, r: Fraction) -> BumpFunction:
    """Smallest l with 3 (ab)^-l < (1-r)^2, so the exact integral stays below (1-r)^2 / 2."""
    r = Fraction(r)
    if not 0 < r < 1:
        raise ValueError("r must be in (0, 1)")
    ab = a * b
    l = 1
    while 3 * Fraction(1, ab**l) >= (1 - r) ** 2:
        l += 1
    return BumpFunction(base=ab, l=l)


@dataclass(frozen=True)
class MeasureEstimate:
    value: float
    half_width: float  # 95% normal-approximation confidence half-width
    samples: int

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class Schedule:
    a: int
    b: int
    r: Fraction
    l: tuple[int, ...]  # moduli-of-continuity depths l_k
    N: tuple[int, ...]
    L: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.N)

    def floor_rL(self, k: int) -> int:
        L = self.L[k - 1]
        return self.r.numerator * L // self.r.denominator


@dataclass
class IrregularRecipe:
    a: int
    b: int
    r: Fraction
    depth: int
    schedule: Schedule
    seed: int
    donors: list[str] = field(default_factory=list)  # one sampled point per level
    donor_tries: list[int] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(
            {
                "a": self.a,
                "b": self.b,
                "r": str(self.r),
                "depth": self.depth,
                "l": list(self.schedule.l),
                "N": list(self.schedule.N),
                "L": list(self.schedule.L),
                "seed": self.seed,
                "donors": self.donors,
                "donor_tries": self.donor_tries,
            }
        )


class ScheduleError(RuntimeError):
    """Raised when the empirical measure condition cannot be met within the search bound."""

    def __init__(self, msg: str, best_N: int, estimate: MeasureEstimate):
        super().__init__(msg)
        self.best_N = best_N
        self.estimate = estimate


def _family_averages(fracs: np.ndarray, family: TestFamily, k: int) -> list[float]:
    return [float(f(fracs).mean()) for f in family.functions[:k]]


def membership_X(
    x: TorusPoint, k: int, N: int, family: TestFamily, a: int, b: int
) -> bool:
    """True iff every i <= k orbit average is within 1/(3k) of the Lebesgue integral."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if k < 1 or k > family.count:
        raise ValueError("k out of range for the family")
    fracs = orbit_fracs(x, a, b, N)
    tol = 1.0 / (3.0 * k)
    return all(
        abs(avg - f.integral) < tol
        for avg, f in zip(_family_averages(fracs, family, k), family.functions)
    )


def estimate_X_measure(
    k: int,
    N: int,
    family: TestFamily,
    a: int,
    b: int,
    samples: int,
    seed: int,
    den: int = SAMPLE_DEN,
) -> MeasureEstimate:
    """Monte Carlo estimate of the measure of the good set at horizon N."""
    if samples < 100:
        raise ValueError("need at least 100 samples")
    rng = random.Random(seed)
    hits = 0
    for _ in range(samples):
        x = TorusPoint(rng.randrange(1, den), den)
        if membership_X(x, k, N, family, a, b):
            hits += 1
    p = hits / samples
    half = 1.96 * math.sqrt(max(p * (1.0 - p), 1.0 / samples) / samples)
    return MeasureEstimate(value=p, half_width=half, samples=samples)


def modulus_l(k: int, family: TestFamily, a: int, b: int) -> int:
    """Smallest l with lip_max * (ab)^-l < 1/(3k) over the first k family members."""
    if k < 1 or k > family.count:
        raise ValueError("k out of range for the family")
    lip = max(f.lipschitz for f in family.functions[:k])
    ab = a * b
    l = 1
    while lip * ab**-l >= 1.0 / (3.0 * k):
        l += 1
    return l


def choose_schedule(
    a: int,
    b: int,
    r: Fraction,
    depth: int,
    family: TestFamily,
    samples: int = 150,
    seed: int = 0,
    growth: float = 1.3,
    max_expansions: int = 12,
) -> Schedule:
    """Pick minimal-ish horizons satisfying the construction's inequalities.

    Per level k, with c = L_{k-1} + l_k, the integer conditions are

        N_k > c,
        6k (2 N_k c - c^2) < N_k^2,
        k * sum_{i<k} (N_i + L_i) < N_k,

    plus the Monte Carlo requirement that the good-set measure estimate
    exceeds r at 95% confidence; then L_k is minimal with
    floor(r L_k) > N_k and k * (sum_{i<k}(N_i + L_i) + N_k) < L_k.
    """
    r = Fraction(r)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if not 0 < r < 1:
        raise ValueError("r must be in (0, 1)")
    if depth > family.count:
        raise ValueError("family too small for the requested depth")
    ls: list[int] = []
    Ns: list[int] = []
    Ls: list[int] = []
    prev_sum = 0  # sum_{i<k} (N_i + L_i)
    L_prev = 0
    for k in range(1, depth + 1):
        l_k = modulus_l(k, family, a, b)
        c = L_prev + l_k
        N = max(c + 1, k * prev_sum + 1)
        while 6 * k * (2 * N * c - c * c) >= N * N:
            N += 1
        best: MeasureEstimate | None = None
        for attempt in range(max_expansions):
            est = estimate_X_measure(k, N, family, a, b, samples, seed + 7919 * k + attempt)
            if best is None or est.value > best.value:
                best = est
            if est.value - est.half_width > r:
                break
            N = int(math.ceil(N * growth))
        else:
            raise ScheduleError(
                f"good-set measure condition not met at level {k}", N, best
            )
        L = max(k * (prev_sum + N) + 1, N + 1)
        while r.numerator * L // r.denominator <= N:
            L += 1
        ls.append(l_k)
        Ns.append(N)
        Ls.append(L)
        prev_sum += N + L
        L_prev = L
    return Schedule(a=a, b=b, r=r, l=tuple(ls), N=tuple(Ns), L=tuple(Ls))


def synthesize_point(
    schedule: Schedule,
    family: TestFamily,
    seed: int = 0,
    max_tries: int = 2000,
) -> tuple[DigitWord, IrregularRecipe]:
    """Build a digit word of length L_depth following the level-block recipe.

    Level k copies digit positions [L_{k-1}, N_k) from a sampled point
    passing the level's orbit-average test, fills [N_k, floor(r L_k))
    with seeded pseudorandom digits and zeros out the rest of the level.
    Deterministic given the seed.
    """
    a, b, r = schedule.a, schedule.b, schedule.r
    ab = a * b
    rng = random.Random(seed)
    digits = [0] * schedule.L[-1]
    donors: list[str] = []
    tries_per_level: list[int] = []
    L_prev = 0
    for k in range(1, schedule.depth + 1):
        N_k = schedule.N[k - 1]
        L_k = schedule.L[k - 1]
        rL = schedule.floor_rL(k)
        for tries in range(1, max_tries + 1):
            donor = TorusPoint(rng.randrange(1, SAMPLE_DEN), SAMPLE_DEN)
            if membership_X(donor, k, N_k, family, a, b):
                break
        else:
            raise RuntimeError(f"sampling budget exhausted at level {k}")
        donors.append(str(donor))
        tries_per_level.append(tries)
        donor_digits = digits_of(donor, ab, N_k).digits
        digits[L_prev:N_k] = donor_digits[L_prev:N_k]
        for i in range(N_k, rL):
            digits[i] = rng.randrange(ab)
        # positions [rL, L_k) stay zero
        L_prev = L_k
    word = DigitWord(ab, tuple(digits))
    recipe = IrregularRecipe(
        a=a,
        b=b,
        r=r,
        depth=schedule.depth,
        schedule=schedule,
        seed=seed,
        donors=donors,
        donor_tries=tries_per_level,
    )
    return word, recipe


@dataclass
class LevelCheck:
    level: int
    averages: list[float]  # orbit averages of the first k test functions at horizon N_k
    deviations: list[float]
    deviation_threshold: float  # 1/k
    bump_average: float  # at horizon L_k
    bump_threshold: float  # (1-r)^2 / 2
    passed: bool

    @property
    def deviation_margins(self) -> list[float]:
        return [self.deviation_threshold - d for d in self.deviations]

    @property
    def bump_margin(self) -> float:
        return self.bump_average - self.bump_threshold


@dataclass
class IrregularReport:
    levels: list[LevelCheck]
    bump_l: int
    passed: bool

    def to_json(self) -> str:
        return json.dumps(
            {
                "passed": self.passed,
                "bump_l": self.bump_l,
                "levels": [
                    {
                        "level": lc.level,
                        "averages": lc.averages,
                        "deviations": lc.deviations,
                        "deviation_threshold": lc.deviation_threshold,
                        "deviation_margins": lc.deviation_margins,
                        "bump_average": lc.bump_average,
                        "bump_threshold": lc.bump_threshold,
                        "bump_margin": lc.bump_margin,
                        "passed": lc.passed,
                    }
                    for lc in self.levels
                ],
            }
        )


def verify_irregular(
    word: DigitWord, recipe: IrregularRecipe, family: TestFamily
) -> IrregularReport:
    """Check the two oscillation inequalities on the synthesized word.

    (A) per level k and i <= k, the N_k-horizon orbit average of the
        i-th test function is within 1/k of its integral;
    (B) per level, the L_k-horizon average of the bump function exceeds
        (1-r)^2 / 2.
    Failures are report entries, not exceptions.
    """
    sched = recipe.schedule
    if len(word) < sched.L[-1]:
        raise ValueError("word shorter than the schedule's final level")
    x = point_of_word(word)
    bump = bump_function(recipe.a, recipe.b, recipe.r)
    bump_threshold = float((1 - Fraction(recipe.r)) ** 2 / 2)
    Lmax = sched.L[-1]
    fracs = orbit_fracs(x, recipe.a, recipe.b, Lmax)
    levels = []
    for k in range(1, sched.depth + 1):
        N_k = sched.N[k - 1]
        L_k = sched.L[k - 1]
        sub = fracs[:N_k, :N_k]
        averages = _family_averages(sub, family, k)
        deviations = [
            abs(avg - f.integral) for avg, f in zip(averages, family.functions)
        ]
        bump_avg = float(bump(fracs[:L_k, :L_k]).mean())
        ok = all(d < 1.0 / k for d in deviations) and bump_avg > bump_threshold
        levels.append(
            LevelCheck(
                level=k,
                averages=averages,
                deviations=deviations,
                deviation_threshold=1.0 / k,
                bump_average=bump_avg,
                bump_threshold=bump_threshold,
                passed=ok,
            )
        )
    return IrregularReport(
        levels=levels, bump_l=bump.l, passed=all(lc.passed for lc in levels)
    )


def induced_moran_structure(schedule: Schedule) -> MoranStructure:
    """The explicit block structure the digit constraints induce.

    Per level: one branch-count term for the copied block (the certified
    lower bound floor(r * (ab)^(N_k - L_{k-1})) stands in for the exact
    cylinder count), one (ab, 1/ab) term per free digit, and a single
    child for the zero block.
    """
    a, b, r = schedule.a, schedule.b, Fraction(schedule.r)
    ab = a * b
    counts: list[int] = []
    ratios: list[Fraction] = []
    L_prev = 0
    for k in range(1, schedule.depth + 1):
        N_k = schedule.N[k - 1]
        L_k = schedule.L[k - 1]
        rL = schedule.floor_rL(k)
        span = N_k - L_prev
        counts.append(max(1, r.numerator * ab**span // r.denominator))
        ratios.append(Fraction(1, ab**span))
        for _ in range(rL - N_k):
            counts.append(ab)
            ratios.append(Fraction(1, ab))
        counts.append(1)
        ratios.append(Fraction(1, ab ** (L_k - rL)))
        L_prev = L_k
    return MoranStructure(counts=tuple(counts), ratios=tuple(ratios))
