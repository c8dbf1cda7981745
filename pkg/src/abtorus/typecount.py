"""Type counting, entropy of symbol distributions and the dimension-bound formulas.

R(k, N, t) is the set of length-N words over k symbols whose empirical
symbol distribution has entropy at most t; its exact cardinality is a
sum of multinomial coefficients over admissible compositions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .torus import TorusPoint, apply_times, cylinder_of

ENTROPY_TOL = 1e-12  # documented tie tolerance for threshold comparisons


@dataclass(frozen=True)
class KDistribution:
    """A probability vector; exact rationals when derived from counts."""

    p: tuple

    def __post_init__(self):
        p = tuple(self.p)
        object.__setattr__(self, "p", p)
        if any(v < 0 for v in p):
            raise ValueError("negative probability")
        total = sum(p)
        if isinstance(total, Fraction):
            if total != 1:
                raise ValueError(f"mass {total} != 1")
        elif abs(total - 1.0) > 1e-12:
            raise ValueError(f"mass {total} != 1")

    def __len__(self) -> int:
        return len(self.p)

    def entropy(self) -> float:
        return entropy(self)


def entropy(p) -> float:
    """Shannon entropy -sum p_i log p_i in nats, with 0 log 0 = 0."""
    vals = p.p if isinstance(p, KDistribution) else p
    return -sum(float(v) * math.log(v) for v in vals if v > 0)


def dist(word: Sequence[int], k: int | None = None) -> KDistribution:
    """Empirical distribution of a word over symbols {1, ..., k}, exact rationals."""
    if len(word) == 0:
        raise ValueError("empty word")
    if k is None:
        k = max(word)
    counts = [0] * k
    for s in word:
        if not 1 <= s <= k:
            raise ValueError(f"symbol {s} outside 1..{k}")
        counts[s - 1] += 1
    N = len(word)
    return KDistribution(tuple(Fraction(c, N) for c in counts))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _multinomial(N: int, parts: Iterable[int]) -> int:
    out = 1
    rem = N
    for c in parts:
        out *= math.comb(rem, c)
        rem -= c
    return out


def count_R(k: int, N: int, t: float) -> int:
    """Exact |R(k, N, t)|.

    Sums multinomials over compositions whose empirical entropy is at
    most t; ties at the threshold within ENTROPY_TOL count as inside.
    """
    if k < 1 or N < 1 or t < 0:
        raise ValueError("need k >= 1, N >= 1, t >= 0")
    logs = [0.0] * (N + 1)
    for i in range(1, N + 1):
        logs[i] = math.log(i)
    log_N = logs[N]
    bound = t + ENTROPY_TOL
    total = 0
    if k == 2:
        # walk C(N, j) incrementally; the generic path recomputes each
        # multinomial from scratch, which is too slow for large N sweeps
        binom = 1
        for j in range(N + 1):
            h = log_N - (j * logs[j] + (N - j) * logs[N - j]) / N
            if h <= bound:
                total += binom
            binom = binom * (N - j) // (j + 1)
        return total
    for comp in _compositions(N, k):
        h = log_N - sum(c * logs[c] for c in comp if c) / N
        if h <= bound:
            total += _multinomial(N, comp)
    return total


def growth_profile(k: int, t: float, N_list: Sequence[int]) -> list[tuple[int, float]]:
    """Per horizon, (N, (1/N) log |R(k, N, t)|)."""
    N_list = list(N_list)
    if sorted(N_list) != N_list:
        raise ValueError("N_list must be ascending")
    return [(N, math.log(count_R(k, N, t)) / N) for N in N_list]


@dataclass(frozen=True)
class ChoiceRecord:
    """Itinerary of the a-orbit through the M-fold refined uniform partition."""

    x: TorusPoint
    a: int
    d: int
    M: int
    N: int
    indices: tuple[int, ...]  # 1-based refined-cell labels, one per orbit point
    q: KDistribution
    decimated: tuple[KDistribution, ...]  # q_{M,l} for 0 <= l < M


def itinerary_choices(x: TorusPoint, a: int, d: int, M: int, N: int) -> ChoiceRecord:
    """Unique N-choice through the refinement of the depth-d partition by M steps of T_a.

    The refined cell of y is the tuple of depth-d cylinder indices of
    y, T_a y, ..., T_a^(M-1) y (left-closed convention), encoded as a
    base-d integer; q is the symbol distribution of the itinerary and
    the decimated subword distributions are returned alongside.
    """
    if d < 1 or M < 1 or N < 1:
        raise ValueError("need d >= 1, M >= 1, N >= 1")
    pts = [x]
    for _ in range(N + M - 2):
        pts.append(apply_times(pts[-1], a))
    cyl = [cylinder_of(p, d).index for p in pts]
    k_M = d**M
    indices = []
    for n in range(N):
        cell = 0
        for i in range(M):
            cell = cell * d + cyl[n + i]
        indices.append(cell + 1)
    q = dist(indices, k_M)
    decimated = tuple(dist(indices[l::M], k_M) for l in range(M))
    return ChoiceRecord(
        x=x, a=a, d=d, M=M, N=N, indices=tuple(indices), q=q, decimated=decimated
    )


def block_entropy_estimate(x: TorusPoint, a: int, d: int, M: int, N: int) -> float:
    """H(q)/M: the finite-horizon per-step itinerary entropy."""
    return entropy(itinerary_choices(x, a, d, M, N).q) / M


def kt_bound(a: int, b: int, t: float, check_range: bool = True) -> float:
    """2 sqrt(log b) sqrt(t) / (log a + sqrt(log b) sqrt(t)).

    The admissible range is 0 < t < min{log b, (log a)^2 / log b};
    check_range=False evaluates the bare formula for endpoint-limit
    checks (it reaches 1 exactly at t = (log a)^2 / log b).
    """
    la, lb = math.log(a), math.log(b)
    if check_range:
        if t <= 0:
            raise ValueError("t must be positive")
        upper = min(lb, la * la / lb)
        if t >= upper:
            which = "log b" if lb <= la * la / lb else "(log a)^2 / log b"
            raise ValueError(f"t={t} >= {upper} (violates bound {which})")
    root = math.sqrt(lb * t)
    return 2.0 * root / (la + root)


def q_bound(a: int, t: float) -> float:
    """2t / (log a + t) for 0 < t < log a."""
    la = math.log(a)
    if not 0 < t < la:
        raise ValueError(f"t={t} outside (0, log a = {la})")
    return 2.0 * t / (la + t)
