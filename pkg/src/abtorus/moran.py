"""Homogeneous Moran structures and their Hausdorff-dimension bounds.

A structure is the pair of sequences {n_k} (child counts) and {c_k}
(uniform contraction ratios) with n_k * c_k <= 1 and sup c_k < 1.  The
two dimension bounds are

    s1 = liminf log(n_1...n_k) / -log(c_1...c_k)
    s2 = liminf log(n_1...n_k) / -log(c_1...c_k c_{k+1} n_{k+1})

and the realized set satisfies s2 <= dim_H <= s1.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction


def _log_fraction(f: Fraction) -> float:
    # math.log handles arbitrary-size integers
    return math.log(f.numerator) - math.log(f.denominator)


@dataclass(frozen=True)
class MoranStructure:
    """Either an explicit finite prefix or an eventually periodic spec (preamble + cycle)."""

    counts: tuple[int, ...]
    ratios: tuple[Fraction, ...]
    periodic: bool = False
    preamble: int = 0  # number of leading non-cycling terms when periodic

    def __post_init__(self):
        counts = tuple(int(n) for n in self.counts)
        ratios = tuple(Fraction(c) for c in self.ratios)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "ratios", ratios)
        if len(counts) != len(ratios):
            raise ValueError("counts and ratios must have equal length")
        if not counts:
            raise ValueError("empty structure")
        if self.periodic and not 0 <= self.preamble < len(counts):
            raise ValueError("preamble out of range")
        for n, c in zip(counts, ratios):
            if n < 1:
                raise ValueError("child counts must be positive")
            if not 0 < c < 1:
                raise ValueError(f"ratio {c} outside (0, 1)")
            if n * c > 1:
                raise ValueError(f"n*c = {n * c} exceeds 1")

    @property
    def ratio_bound(self) -> Fraction:
        """A recorded bound c with c_k <= c < 1 for all k."""
        return max(self.ratios)

    def term(self, k: int) -> tuple[int, Fraction]:
        """1-based term (n_k, c_k)."""
        i = k - 1
        if not self.periodic:
            if i >= len(self.counts):
                raise IndexError(f"explicit structure has only {len(self.counts)} terms")
            return self.counts[i], self.ratios[i]
        if i < self.preamble:
            return self.counts[i], self.ratios[i]
        cycle = len(self.counts) - self.preamble
        j = self.preamble + (i - self.preamble) % cycle
        return self.counts[j], self.ratios[j]

    @classmethod
    def parse(cls, text: str) -> "MoranStructure":
        """Parse the compact form "n=2,4;c=1/4 periodic" or an explicit JSON spec."""
        text = text.strip()
        if text.startswith("{"):
            obj = json.loads(text)
            return cls(
                counts=tuple(obj["n"]),
                ratios=tuple(Fraction(c) for c in obj["c"]),
                periodic=bool(obj.get("periodic", False)),
                preamble=int(obj.get("preamble", 0)),
            )
        periodic = False
        if text.endswith("periodic"):
            periodic = True
            text = text[: -len("periodic")].strip()
        fields = {}
        for part in text.split(";"):
            key, _, val = part.partition("=")
            fields[key.strip()] = [v.strip() for v in val.split(",")]
        counts = [int(n) for n in fields["n"]]
        ratios = [Fraction(c) for c in fields["c"]]
        if periodic:
            # cycle the shorter list up to a common length
            m = math.lcm(len(counts), len(ratios))
            counts = (counts * (m // len(counts)))[:m]
            ratios = (ratios * (m // len(ratios)))[:m]
        elif len(counts) != len(ratios):
            raise ValueError("explicit spec needs equal-length n and c lists")
        return cls(counts=tuple(counts), ratios=tuple(ratios), periodic=periodic)


@dataclass(frozen=True)
class DimensionPair:
    s1: float
    s2: float
    exact: bool

    def __post_init__(self):
        if not -1e-12 <= self.s2 <= self.s1 + 1e-12 or self.s1 > 1 + 1e-12:
            raise ValueError(f"invalid dimension pair ({self.s1}, {self.s2})")

    def to_json(self) -> str:
        return json.dumps({"s1": repr(self.s1), "s2": repr(self.s2), "exact": self.exact})


_BURN_IN = 10


def moran_dims(struct: MoranStructure, K: int) -> DimensionPair:
    """Evaluate the s1/s2 formulas.

    Eventually periodic structures admit the exact limit via cycle sums
    (the bounded non-cycling contribution washes out, so s1 = s2).
    Explicit prefixes get a running-minimum liminf estimate after a
    burn-in, truncated at K terms.
    """
    if K < 2:
        raise ValueError("K must be >= 2")
    if struct.periodic:
        log_n = 0.0
        neg_log_c = 0.0
        for i in range(struct.preamble, len(struct.counts)):
            log_n += math.log(struct.counts[i])
            neg_log_c -= _log_fraction(struct.ratios[i])
        s = min(log_n / neg_log_c, 1.0)
        return DimensionPair(s1=s, s2=s, exact=True)

    K = min(K, len(struct.counts) - 1)
    start = min(_BURN_IN, K)
    log_n = 0.0
    neg_log_c = 0.0
    s1_vals = []
    s2_vals = []
    for k in range(1, K + 1):
        n, c = struct.term(k)
        log_n += math.log(n)
        neg_log_c -= _log_fraction(c)
        if k < start:
            continue
        n_next, c_next = struct.term(k + 1)
        extra = -(_log_fraction(c_next) + math.log(n_next))  # -log(c_{k+1} n_{k+1}) >= 0
        s1_vals.append(log_n / neg_log_c)
        s2_vals.append(log_n / (neg_log_c + extra))
    return DimensionPair(
        s1=min(1.0, min(s1_vals)),
        s2=min(1.0, min(s2_vals)),
        exact=False,
    )


def realize_intervals(
    struct: MoranStructure, depth: int, budget: int = 10**6
) -> list[tuple[Fraction, Fraction]]:
    """Left-packed realization: (left endpoint, length) for every word of the given depth.

    Children sit flush against the parent's left edge, so nesting,
    disjoint interiors and the exact ratio condition hold by
    construction.  Depth 0 is the single interval [0, 1).
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    intervals = [(Fraction(0), Fraction(1))]
    for k in range(1, depth + 1):
        n, c = struct.term(k)
        if len(intervals) * n > budget:
            raise ValueError(f"interval budget {budget} exceeded at depth {k}")
        intervals = [
            (left + i * c * length, c * length)
            for left, length in intervals
            for i in range(n)
        ]
    return intervals


def box_counting_estimate(
    intervals: list[tuple[Fraction, Fraction]], scales: list[Fraction]
) -> float:
    """Least-squares slope of log N(eps) against log(1/eps).

    N(eps) counts half-open grid boxes [i*eps, (i+1)*eps) meeting some
    interval; the box tests are exact rational comparisons.
    """
    if len(scales) < 3:
        raise ValueError("need at least 3 scales")
    scales = [Fraction(e) for e in scales]
    if len(set(scales)) < 2:
        raise ValueError("degenerate regression: identical scales")
    for e in scales:
        if not 0 < e < 1:
            raise ValueError("scales must lie in (0, 1)")
    xs, ys = [], []
    for eps in scales:
        boxes: set[int] = set()
        for left, length in intervals:
            right = left + length
            i_min = left // eps
            i_max = -((-right) // eps) - 1  # last box starting strictly before `right`
            if i_max < i_min:
                i_max = i_min
            boxes.update(range(i_min, i_max + 1))
        xs.append(-_log_fraction(eps))
        ys.append(math.log(len(boxes)))
    x_bar = sum(xs) / len(xs)
    y_bar = sum(ys) / len(ys)
    sxx = sum((x - x_bar) ** 2 for x in xs)
    sxy = sum((x - x_bar) * (y - y_bar) for x, y in zip(xs, ys))
    return sxy / sxx
