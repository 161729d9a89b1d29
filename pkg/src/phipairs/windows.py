"""Dyadic-window sums and the lower-bound construction.

For a window I = [y/2, y) and squarefree a, N_I(a) counts n in I with
a*n^2 + 1 prime. Distinct n, n' in the same window with the same kernel a
give a genuine solution pair, so sum_a mu(a)^2 (N^2 - N) over any family
of disjoint windows is a certified lower bound for the pair count at
x + 1. The dyadic family used by the construction is
{[2^(j-1), 2^j) : (log x)^2 <= 2^j <= x^(1/6)}, which is empty until x is
astronomically large; the construction then returns an empty list with a
warning flag rather than failing.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .pairs import count_pairs_grouped
from .sieves import is_prime, prime_mask, squarefree_part

__all__ = [
    "DyadicWindow",
    "WindowStat",
    "LowerBoundResult",
    "RatioPoint",
    "RatioSeries",
    "window_count",
    "window_stats",
    "window_collection",
    "lower_bound_construction",
    "ratio_scan",
    "upper_split",
]


@dataclass(frozen=True)
class DyadicWindow:
    """Integer window [y/2, y) with the kernel cap x/y^2 it is used under."""

    y: int
    a_limit: int

    def __post_init__(self):
        if self.y < 2:
            raise ValueError("window parameter y must be >= 2")
        if self.a_limit < 1:
            raise ValueError("a_limit must be >= 1 (need y <= sqrt(x))")

    @classmethod
    def for_x(cls, x: int, y: int) -> "DyadicWindow":
        if y < 2:
            raise ValueError("window parameter y must be >= 2")
        return cls(y, x // (y * y))

    @property
    def n_lo(self) -> int:
        return (self.y + 1) // 2

    @property
    def n_hi(self) -> int:
        return self.y

    def values(self) -> range:
        return range(self.n_lo, self.n_hi)


@dataclass(frozen=True)
class WindowStat:
    """Exact window sums: over squarefree a <= a_limit, with N = N_I(a),
    sum_N = sum N, sum_N2 = sum N^2, pair_contrib = sum (N^2 - N), and
    cs_bound = (y^2/x) * sum_N^2 - sum_N (the Cauchy-Schwarz floor)."""

    y: int
    sum_N: int
    sum_N2: int
    pair_contrib: int
    cs_bound: float

    def cs_holds_exactly(self, x: int) -> bool:
        """Integer form of cs_bound <= pair_contrib: y^2 * sum_N^2 <= x * sum_N2."""
        return self.y * self.y * self.sum_N**2 <= x * self.sum_N2


def window_count(a: int, window: DyadicWindow) -> int:
    """N_I(a): how many n in [y/2, y) make a*n^2 + 1 prime."""
    if a < 1 or squarefree_part(a) != a:
        raise ValueError(f"kernel a = {a} must be a positive squarefree integer")
    return sum(1 for n in window.values() if is_prime(a * n * n + 1))


def window_stats(x: int, y: int) -> WindowStat:
    """All four window sums for I = [y/2, y) under kernel cap x/y^2.

    Soft range: 2 <= y <= x^(1/6) (a warning is emitted outside, but the
    sums are still exact). Raises when x/y^2 < 1.
    """
    if y < 2:
        raise ValueError("window parameter y must be >= 2")
    a_limit = x // (y * y)
    if a_limit < 1:
        raise ValueError(f"x/y^2 = {x}/{y * y} < 1: no admissible kernels")
    if y**6 > x:
        warnings.warn(f"y = {y} exceeds x^(1/6); computing anyway", stacklevel=2)
    window = DyadicWindow(y, a_limit)

    mask = prime_mask(x + 1)
    a = np.arange(1, a_limit + 1, dtype=np.int64)
    sqfree = np.ones(a_limit + 1, dtype=bool)
    for d in range(2, math.isqrt(a_limit) + 1):
        sqfree[d * d :: d * d] = False
    keep = sqfree[1:]

    counts = np.zeros(a_limit, dtype=np.int64)
    for n in window.values():
        counts += mask[a * (n * n) + 1]
    counts = counts[keep]
    sum_n = int(counts.sum())
    sum_n2 = int((counts * counts).sum())
    cs = (y * y / x) * sum_n**2 - sum_n
    return WindowStat(y, sum_n, sum_n2, sum_n2 - sum_n, cs)


def window_collection(x: int) -> list[int]:
    """The y values (powers of two) with (log x)^2 <= y <= x^(1/6).

    The lower cut uses the natural log and floating comparison; the upper
    cut 2^j <= x^(1/6) is evaluated exactly as 2^(6j) <= x. Empty at all
    desk scales (the cuts only cross near x ~ e^46).
    """
    if x < 16:
        raise ValueError("x must be >= 16")
    low = math.log(x) ** 2
    ys = []
    j = max(1, math.ceil(math.log2(low)))
    while (1 << (6 * j)) <= x:
        if (1 << j) >= low:
            ys.append(1 << j)
        j += 1
    return ys


@dataclass(frozen=True)
class LowerBoundResult:
    x: int
    stats: list[WindowStat]
    aggregate: int
    normalized: float
    empty: bool


def lower_bound_construction(x: int) -> LowerBoundResult:
    """Certified partial pair count from the dyadic window family.

    aggregate = sum over windows of pair_contrib is a true lower bound for
    the ordered pair count at x + 1: windows are disjoint in n, so no pair
    is counted twice. When the family is empty the result carries
    empty=True and aggregate 0 (a warning flag, not an error).
    """
    ys = window_collection(x)
    stats = [window_stats(x, y) for y in ys]
    aggregate = sum(s.pair_contrib for s in stats)
    return LowerBoundResult(
        x=x,
        stats=stats,
        aggregate=aggregate,
        normalized=aggregate * math.log(x) / x,
        empty=not ys,
    )


@dataclass(frozen=True)
class RatioPoint:
    x: int
    s_x: int
    s_prime_x: int
    ratio: float


@dataclass(frozen=True)
class RatioSeries:
    points: list[RatioPoint]

    @property
    def max_ratio(self) -> float:
        return max(p.ratio for p in self.points)

    @property
    def min_ratio(self) -> float:
        return min(p.ratio for p in self.points)


def ratio_scan(
    x_grid: list[int],
    *,
    segment_size: int | None = None,
    threads: int = 1,
    max_x: int | None = None,
) -> RatioSeries:
    """Exact s_x over a strictly increasing grid, with s_x * ln(x) / x.

    The normalizer ln(x)/x tracks the conjectured order x/log x; the
    series reports the empirical band (max/min ratio) and never asserts a
    constant.
    """
    if not x_grid:
        raise ValueError("x grid must be nonempty")
    if any(b <= a for a, b in zip(x_grid, x_grid[1:])):
        raise ValueError("x grid must be strictly increasing")
    if x_grid[0] < 5:
        raise ValueError("grid values must be >= 5")
    kwargs = {"segment_size": segment_size, "threads": threads}
    if max_x is not None:
        kwargs["max_x"] = max_x
    points = []
    for x in x_grid:
        rep = count_pairs_grouped(x, **kwargs)
        points.append(
            RatioPoint(x, rep.s_x, rep.s_prime_x, rep.s_x * math.log(x) / x)
        )
    return RatioSeries(points)


def upper_split(x: int, *, segment_size: int | None = None, threads: int = 1) -> tuple[int, int]:
    """Unordered solution-pair counts split at kernel a = x^(2/3).

    Returns (s1, s2): pairs with kernel a <= x^(2/3) and with
    x^(2/3) < a <= x. The cutoff is evaluated exactly as a^3 <= x^2.
    Identity: 2*s1 + 2*s2 equals the ordered count at x + 1.
    """
    if x < 4:
        raise ValueError("x must be >= 4")
    from .pairs import build_group_index

    index = build_group_index(x + 1, segment_size=segment_size, threads=threads)
    x_sq = x * x
    s1 = s2 = 0
    for a, g in index.groups.items():
        pairs = g * (g - 1) // 2
        if a * a * a <= x_sq:
            s1 += pairs
        else:
            s2 += pairs
    return s1, s2
