"""Segmented arithmetic sieves and exact primality.

Everything downstream (pair counting, window sums, lemma checks) consumes
the per-integer data built here: smallest prime factor, Euler totient,
Mobius function, and squarefree part. All values are exact integers; there
is no probabilistic primality anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .backend import BACKEND, sieve_range

__all__ = [
    "ResourceLimitError",
    "SieveTable",
    "PrimeCountQuery",
    "build_sieve",
    "iter_sieve",
    "primes_up_to",
    "prime_mask",
    "is_prime",
    "count_primes_in_progression",
    "squarefree_part",
    "factorize",
    "BACKEND",
    "DEFAULT_SEGMENT_SIZE",
    "MAX_TABLE_SPAN",
]

# Cache-friendly default; one segment costs ~35 bytes/value while building.
DEFAULT_SEGMENT_SIZE = 1 << 22
# Hard guard for a single monolithic table (overridable per call).
MAX_TABLE_SPAN = 1 << 24
# primes_up_to / prime_mask guard.
MAX_PRIME_LIMIT = 5 * 10**8


class ResourceLimitError(RuntimeError):
    """A request exceeded a configured memory/work ceiling (override to proceed)."""


@dataclass(frozen=True)
class SieveTable:
    """Per-integer arithmetic data for the range [lo, hi).

    Arrays are indexed by n - lo and are read-only after construction, so a
    table can be shared freely across worker threads.

    Invariants (tested): n = sqf * k^2 with sqf squarefree; mu(n) != 0 iff
    sqf(n) = n; spf(n) is the smallest prime dividing n for n >= 2;
    phi(n^2) = n * phi(n).
    """

    lo: int
    hi: int
    spf: np.ndarray
    phi: np.ndarray
    mu: np.ndarray
    sqf: np.ndarray

    def index(self, n: int) -> int:
        if not self.lo <= n < self.hi:
            raise IndexError(f"{n} outside sieve range [{self.lo}, {self.hi})")
        return n - self.lo

    def is_prime(self, n: int) -> bool:
        return n >= 2 and int(self.spf[self.index(n)]) == n

    def primes(self) -> np.ndarray:
        """All primes in [lo, hi), ascending."""
        n = np.arange(self.lo, self.hi, dtype=np.int64)
        return n[(self.spf == n) & (n >= 2)]


@dataclass(frozen=True)
class PrimeCountQuery:
    """pi(x; k, b): primes p <= x with p = b (mod k), gcd(b, k) = 1."""

    x: int
    k: int
    b: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("modulus k must be >= 1")
        if not 1 <= self.b <= self.k:
            raise ValueError("residue b must satisfy 1 <= b <= k")
        if math.gcd(self.b, self.k) != 1:
            raise ValueError(f"gcd(b, k) = {math.gcd(self.b, self.k)} != 1")
        if self.x < 1:
            raise ValueError("x must be >= 1")


def build_sieve(lo: int, hi: int, *, max_span: int = MAX_TABLE_SPAN) -> SieveTable:
    """Build one monolithic SieveTable for [lo, hi).

    Raises ValueError unless 1 <= lo < hi, and ResourceLimitError when
    hi - lo exceeds max_span. Deterministic: identical inputs give
    bit-identical arrays on both backends.
    """
    if lo < 1 or lo >= hi:
        raise ValueError(f"need 1 <= lo < hi, got [{lo}, {hi})")
    if hi - lo > max_span:
        raise ResourceLimitError(
            f"table span {hi - lo} exceeds max_span={max_span}; "
            "raise max_span or use iter_sieve"
        )
    base = primes_up_to(math.isqrt(hi - 1))
    spf, phi, mu, sqf = sieve_range(lo, hi, base)
    for arr in (spf, phi, mu, sqf):
        arr.flags.writeable = False
    return SieveTable(lo, hi, spf, phi, mu, sqf)


def iter_sieve(lo: int, hi: int, segment_size: int | None = None):
    """Yield SieveTables covering [lo, hi) in contiguous segments."""
    seg = segment_size or DEFAULT_SEGMENT_SIZE
    if seg < 2:
        raise ValueError("segment_size must be >= 2")
    s = lo
    while s < hi:
        e = min(s + seg, hi)
        yield build_sieve(s, e, max_span=seg)
        s = e


def prime_mask(limit: int) -> np.ndarray:
    """Boolean array m of length limit + 1 with m[n] = (n is prime)."""
    if limit > MAX_PRIME_LIMIT:
        raise ResourceLimitError(f"prime mask limit {limit} exceeds {MAX_PRIME_LIMIT}")
    mask = np.ones(max(limit + 1, 2), dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return mask[: limit + 1]


def primes_up_to(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    return np.nonzero(prime_mask(limit))[0].astype(np.int64)


# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10^24
# (covers the full 64-bit range).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Exact primality for 0 <= n < 2^64 (deterministic, no error probability)."""
    if n < 0 or n >= 1 << 64:
        raise ValueError("is_prime requires 0 <= n < 2^64")
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def count_primes_in_progression(query: PrimeCountQuery) -> int:
    """Exact pi(x; k, b) by sieve enumeration."""
    x, k, b = query.x, query.k, query.b
    if x < 2:
        return 0
    primes = primes_up_to(x)
    return int(np.count_nonzero(primes % k == b % k))


@lru_cache(maxsize=None)
def _cached_small_primes(limit: int) -> tuple:
    return tuple(int(p) for p in primes_up_to(limit))


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization [(p, e), ...] by trial division.

    Intended for desk-scale n (trial division runs to isqrt(n)); raises
    ResourceLimitError rather than stalling on huge semiprimes.
    """
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    root = math.isqrt(n)
    if root > 10**7:
        raise ResourceLimitError(f"refusing trial division to {root}")
    out = []
    m = n
    for p in _cached_small_primes(max(root, 2)):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    if m > 1:
        out.append((m, 1))
    return out


def squarefree_part(n: int) -> int:
    """The unique squarefree a with n = a * m^2.

    Small primes up to n^(1/3) are divided out; the remaining cofactor has
    at most two prime factors, so it is classified exactly via an integer
    square root and a deterministic primality test.
    """
    if n < 1:
        raise ValueError("squarefree_part requires n >= 1")
    if n == 1:
        return 1
    cube_root = round(n ** (1 / 3)) + 2
    a = 1
    m = n
    for p in _cached_small_primes(max(cube_root, 2)):
        if p * p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e % 2 == 1:
                a *= p
    if m == 1:
        return a
    # All prime factors of m now exceed m^(1/3), so m is p, p^2, or p*q.
    r = math.isqrt(m)
    if r * r == m:
        return a  # p^2 contributes nothing squarefree
    return a * m  # m prime or p*q with p != q: all exponents odd
