"""Exact pair counts.

The count of ordered pairs of distinct primes p, q <= x with
(p - 1)(q - 1) a perfect square is computed by grouping primes by the
squarefree part ("kernel") of p - 1: the product of two shifted primes is
a square exactly when their kernels coincide, so the count is
sum_a g_a * (g_a - 1) over group sizes g_a. A quadratic brute-force
counter with an exact integer square-root test serves as the independent
oracle; the two routes are compared element-for-element in the tests.
"""

from __future__ import annotations

import math
import time
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .sieves import (
    DEFAULT_SEGMENT_SIZE,
    ResourceLimitError,
    build_sieve,
    is_prime,
    primes_up_to,
    squarefree_part,
)

__all__ = [
    "PairGroupIndex",
    "PairCountReport",
    "build_group_index",
    "count_pairs_grouped",
    "count_pairs_bruteforce",
    "count_products",
    "count_shifted_pairs",
    "count_kfold",
    "is_perfect_square",
    "MAX_X_DEFAULT",
    "BRUTEFORCE_GUARD",
]

# Resource ceiling for sieve-backed counting (overridable).
MAX_X_DEFAULT = 2 * 10**8
# Quadratic-cost guard for the brute-force oracle (overridable).
BRUTEFORCE_GUARD = 10**5
# Work guard for k-fold search: pi(x)^min(k,3) must stay below this.
KFOLD_WORK_BUDGET = 2 * 10**8
# Member lists are only retained up to this x.
VERBOSE_MEMBER_GUARD = 10**6


def is_perfect_square(n: int) -> bool:
    """Exact square test via integer square root (no floating point)."""
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _isqrt_array(v: np.ndarray) -> np.ndarray:
    """Exact elementwise integer square root for int64 v < 2^53.

    A float sqrt seeds the value; one integer correction step each way
    makes it exact (float64 sqrt is correctly rounded, so the seed is
    within 1 of the truth for v < 2^53).
    """
    if v.size and int(v.max()) >= 1 << 53:
        return np.array([math.isqrt(int(t)) for t in v], dtype=np.int64)
    r = np.sqrt(v.astype(np.float64)).astype(np.int64)
    r = np.where((r + 1) * (r + 1) <= v, r + 1, r)
    r = np.where(r * r > v, r - 1, r)
    return r


@dataclass
class PairGroupIndex:
    """Kernel -> group data for primes p <= x, keyed by squarefree_part(p - 1).

    groups[a] = #{p <= x prime : squarefree part of p - 1 is a}. Member
    lists are kept only when verbose (guarded to x <= 10^6).
    """

    x: int
    groups: dict[int, int]
    members: dict[int, list[int]] | None = field(default=None, repr=False)

    def ordered_pair_count(self) -> int:
        return sum(g * (g - 1) for g in self.groups.values())


@dataclass(frozen=True)
class PairCountReport:
    x: int
    s_x: int
    s_prime_x: int
    group_count: int
    largest_group_kernel: int
    largest_group_size: int
    elapsed: float


def _segment_bounds(lo: int, hi: int, segment_size: int) -> list[tuple[int, int]]:
    out = []
    s = lo
    while s < hi:
        e = min(s + segment_size, hi)
        out.append((s, e))
        s = e
    return out


def _group_segment(seg: tuple[int, int], x: int, shift: int, want_members: bool):
    """Kernels of p + shift for primes p in [seg0, seg1), p <= x, p + shift >= 1."""
    s, e = seg
    if shift == -1:
        # One table over [s - 1, e) serves both primality and the kernels
        # of p - 1 (the hot path of the main count).
        lo = max(1, s - 1)
        table = build_sieve(lo, e, max_span=e - lo)
        n = np.arange(lo, e, dtype=np.int64)
        pmask = (table.spf == n) & (n >= s) & (n >= 2) & (n <= x)
        primes = n[pmask]
        kernels = table.sqf[primes - 1 - lo]
    else:
        table = build_sieve(s, e, max_span=e - s)
        n = np.arange(s, e, dtype=np.int64)
        pmask = (table.spf == n) & (n >= 2) & (n <= x) & (n + shift >= 1)
        primes = n[pmask]
        if primes.size == 0:
            return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64), None
        shifted_lo = max(1, s + shift)
        shifted_hi = int(primes[-1]) + shift + 1
        shift_table = build_sieve(
            shifted_lo, shifted_hi, max_span=shifted_hi - shifted_lo
        )
        kernels = shift_table.sqf[primes + shift - shifted_lo]
    if primes.size == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64), None
    uniq, counts = np.unique(kernels, return_counts=True)
    members = None
    if want_members:
        members = {}
        order = np.argsort(kernels, kind="stable")
        sorted_primes = primes[order]
        sorted_kernels = kernels[order]
        cuts = np.searchsorted(sorted_kernels, uniq, side="left")
        for i, a in enumerate(uniq):
            j = cuts[i + 1] if i + 1 < uniq.size else sorted_kernels.size
            members[int(a)] = [int(p) for p in sorted_primes[cuts[i] : j]]
    return uniq, counts, members


def build_group_index(
    x: int,
    *,
    shift: int = -1,
    segment_size: int | None = None,
    threads: int = 1,
    verbose: bool = False,
    max_x: int = MAX_X_DEFAULT,
) -> PairGroupIndex:
    """Group primes p <= x by the squarefree part of p + shift.

    shift = -1 is the main problem; other shifts serve the shifted-pair
    variant. Segments are processed independently (optionally in threads)
    and merged with commutative addition in a fixed segment order, so the
    result is deterministic for any thread count.
    """
    if x < 2:
        raise ValueError("x must be >= 2")
    if x > max_x:
        raise ResourceLimitError(f"x = {x} exceeds ceiling {max_x}; pass max_x to override")
    if verbose and x > VERBOSE_MEMBER_GUARD:
        raise ResourceLimitError(f"member lists are guarded to x <= {VERBOSE_MEMBER_GUARD}")
    seg = segment_size or DEFAULT_SEGMENT_SIZE
    segments = _segment_bounds(2, x + 1, seg)
    jobs = [(s, x, shift, verbose) for s in segments]
    if threads > 1 and len(segments) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda j: _group_segment(*j), jobs))
    else:
        results = [_group_segment(*j) for j in jobs]
    groups: dict[int, int] = {}
    members: dict[int, list[int]] | None = {} if verbose else None
    for uniq, counts, segmembers in results:
        for a, c in zip(uniq.tolist(), counts.tolist()):
            groups[a] = groups.get(a, 0) + c
        if verbose and segmembers:
            for a, ps in segmembers.items():
                members.setdefault(a, []).extend(ps)
    return PairGroupIndex(x, groups, members)


def count_pairs_grouped(
    x: int,
    *,
    segment_size: int | None = None,
    threads: int = 1,
    max_x: int = MAX_X_DEFAULT,
    with_products: bool = True,
) -> PairCountReport:
    """Exact ordered-pair count via one sieve pass over kernels.

    s_x counts ordered pairs (both (p, q) and (q, p)), so it is always
    even. s_prime_x is the count of integers n <= x equal to a product of
    a solution pair (skipped when with_products=False).
    """
    t0 = time.perf_counter()
    index = build_group_index(
        x, segment_size=segment_size, threads=threads, max_x=max_x
    )
    s_x = index.ordered_pair_count()
    s_prime = count_products(x, max_x=max_x) if with_products else 0
    kernel, size = 0, 0
    for a, g in index.groups.items():
        if g > size or (g == size and (kernel == 0 or a < kernel)):
            kernel, size = a, g
    return PairCountReport(
        x=x,
        s_x=s_x,
        s_prime_x=s_prime,
        group_count=len(index.groups),
        largest_group_kernel=kernel,
        largest_group_size=size,
        elapsed=time.perf_counter() - t0,
    )


def count_pairs_bruteforce(x: int, *, force: bool = False) -> int:
    """Quadratic oracle: test every ordered pair of distinct primes directly.

    The square test is an exact integer square-root comparison; no kernel
    logic is shared with the grouped path. Guarded to x <= 10^5 unless
    force=True.
    """
    if x < 2:
        raise ValueError("x must be >= 2")
    if x > BRUTEFORCE_GUARD and not force:
        raise ValueError(
            f"brute force is quadratic; x = {x} exceeds {BRUTEFORCE_GUARD} (force=True to override)"
        )
    shifted = (primes_up_to(x) - 1).astype(np.int64)
    unordered = 0
    for i in range(1, shifted.size):
        prods = shifted[:i] * shifted[i]
        r = _isqrt_array(prods)
        unordered += int(np.count_nonzero(r * r == prods))
    return 2 * unordered


def count_products(x: int, *, max_x: int = MAX_X_DEFAULT) -> int:
    """#{n <= x : n = p*q, p != q primes, (p-1)(q-1) a perfect square}.

    Each n is counted once. The smaller prime of any qualifying product is
    at most sqrt(x), so we enumerate p <= sqrt(x), then candidates
    q = a*m^2 + 1 for the kernel a of p - 1, filtering by primality.
    """
    if x > max_x:
        raise ResourceLimitError(f"x = {x} exceeds ceiling {max_x}")
    if x < 6:
        return 0
    total = 0
    for p in primes_up_to(math.isqrt(x)):
        p = int(p)
        a = squarefree_part(p - 1)
        qmax = x // p
        if qmax <= p:
            continue
        m_hi = math.isqrt((qmax - 1) // a)
        for m in range(1, m_hi + 1):
            q = a * m * m + 1
            if q > p and is_prime(q):
                total += 1
    return total


def count_shifted_pairs(
    x: int,
    b: int,
    *,
    segment_size: int | None = None,
    threads: int = 1,
    max_x: int = MAX_X_DEFAULT,
) -> int:
    """Ordered pairs of distinct primes p, q <= x with (p+b)(q+b) a square.

    Primes with p + b < 1 are skipped. b = -1 recovers the main count.
    """
    if b == 0:
        raise ValueError("shift b must be nonzero")
    if x < 2:
        raise ValueError("x must be >= 2")
    index = build_group_index(
        x, shift=b, segment_size=segment_size, threads=threads, max_x=max_x
    )
    return index.ordered_pair_count()


def _kth_power_signature(n: int, table, k: int) -> tuple:
    """Exponent vector of n mod k, as a sorted tuple of (prime, e % k) != 0."""
    sig = []
    m = n
    while m > 1:
        p = int(table.spf[table.index(m)])
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e % k:
            sig.append((p, e % k))
    return tuple(sig)


def _sig_add(s1: tuple, s2: tuple, k: int) -> tuple:
    acc = dict(s1)
    for p, e in s2:
        v = (acc.get(p, 0) + e) % k
        if v:
            acc[p] = v
        else:
            acc.pop(p, None)
    return tuple(sorted(acc.items()))


def _sig_neg(s: tuple, k: int) -> tuple:
    return tuple((p, (k - e) % k) for p, e in s)


def count_kfold(
    x: int,
    k: int,
    *,
    force: bool = False,
    budget: int = KFOLD_WORK_BUDGET,
) -> int:
    """Unordered k-sets of distinct primes <= x with prod (p_i - 1) a k-th power.

    Each p - 1 is reduced to its prime-exponent vector mod k; a k-set
    qualifies exactly when the vectors sum to zero mod k. The search
    enumerates (k-1)-subsets and finishes each by a signature lookup
    (meet-in-the-middle on the last element), so only genuinely matching
    sets are materialized.
    """
    if not 2 <= k <= 5:
        raise ValueError("k must be in [2, 5]")
    if x < 2:
        raise ValueError("x must be >= 2")
    primes = [int(p) for p in primes_up_to(x)]
    n_p = len(primes)
    if n_p ** min(k, 3) > budget and not force:
        raise ValueError(
            f"pi(x)^min(k,3) = {n_p ** min(k, 3)} exceeds budget {budget} (force=True to override)"
        )
    table = build_sieve(1, x, max_span=x)
    sigs = {p: _kth_power_signature(p - 1, table, k) for p in primes}
    by_sig: dict[tuple, list[int]] = {}
    for p in primes:
        by_sig.setdefault(sigs[p], []).append(p)

    def extend(start: int, acc_sig: tuple, depth: int) -> int:
        if depth == k - 1:
            want = _sig_neg(acc_sig, k)
            group = by_sig.get(want)
            if not group:
                return 0
            return len(group) - bisect_right(group, primes[start - 1] if start else 0)
        total = 0
        for i in range(start, n_p):
            total += extend(i + 1, _sig_add(acc_sig, sigs[primes[i]], k), depth + 1)
        return total

    # Enumerate p_1 < ... < p_{k-1}, then count completions p_k > p_{k-1}.
    total = 0
    for i in range(n_p):
        total += extend(i + 1, sigs[primes[i]], 1)
    return total
