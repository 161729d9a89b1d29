"""Kronecker symbols, the quadratic character attached to a squarefree kernel,
truncated Euler products, and the singular series for the square-shift
prime-count heuristic.

The character chi for kernel a sends an odd prime p to the Kronecker symbol
(-a/p) and sends 2 to 1 when a = 3 (mod 4) and to 0 otherwise, extended
completely multiplicatively. Its conductor is a for a = 3 (mod 4), else 4a.
Note the value at 2 is a fixed convention, not the classical primitive
character value; for a = 3 (mod 8) the two differ, so periodicity mod the
conductor holds on odd arguments only (see tests).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .sieves import (
    ResourceLimitError,
    factorize,
    is_prime,
    primes_up_to,
    squarefree_part,
)

__all__ = [
    "kronecker",
    "QuadChar",
    "chi_for_kernel",
    "chi_a",
    "EulerProductResult",
    "euler_product",
    "singular_series",
    "singular_series_tail_bound",
    "landau_heuristic",
    "count_square_shift_primes",
]

EULER_PRODUCT_MAX = 2 * 10**8
# Switch to log-space accumulation above this prime cut to avoid drift.
_LOG_SPACE_CUT = 10**6


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D/n), fully extended (any D, any n).

    Computed by the reciprocity recursion; agrees with Euler's criterion
    D^((p-1)/2) mod p at odd primes p not dividing D, and is completely
    multiplicative in n.
    """
    if n == 0:
        return 1 if D in (1, -1) else 0
    if n < 0:
        return (-1 if D < 0 else 1) * kronecker(D, -n)
    if D % 2 == 0 and n % 2 == 0:
        return 0
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    k = 1
    if v % 2 == 1 and D % 8 in (3, 5):
        k = -1  # (D/2) = -1 for D = +-3 (mod 8)
    a = D % n
    while a != 0:
        v = 0
        while a % 2 == 0:
            a //= 2
            v += 1
        if v % 2 == 1 and n % 8 in (3, 5):
            k = -k
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a, n = n % a, a
    return k if n == 1 else 0


@lru_cache(maxsize=200_000)
def _chi_prime_value(a: int, p: int) -> int:
    if p == 2:
        return 1 if a % 4 == 3 else 0
    return kronecker(-a, p)


@dataclass(frozen=True)
class QuadChar:
    """Quadratic character attached to a squarefree kernel a (see module doc)."""

    a: int
    conductor: int

    def prime_value(self, p: int) -> int:
        return _chi_prime_value(self.a, p)

    def value(self, n: int) -> int:
        """chi(n) for n >= 0, by complete multiplicativity over n's factorization."""
        if n < 0:
            raise ValueError("chi is defined for n >= 0")
        if n == 0:
            return 0
        out = 1
        for p, e in factorize(n):
            v = self.prime_value(p)
            if v == 0:
                return 0
            if e % 2 == 1:
                out *= v  # (+-1)^e depends only on e mod 2
        return out


def chi_for_kernel(a: int) -> QuadChar:
    """Character for squarefree a >= 1; conductor a if a = 3 (mod 4), else 4a."""
    if a < 1:
        raise ValueError("kernel a must be >= 1")
    if squarefree_part(a) != a:
        raise ValueError(f"kernel a = {a} is not squarefree")
    conductor = a if a % 4 == 3 else 4 * a
    return QuadChar(a, conductor)


def chi_a(a: int, n: int) -> int:
    """Value at n of the kernel-a character."""
    return chi_for_kernel(a).value(n)


@dataclass(frozen=True)
class EulerProductResult:
    """prod over primes y < p <= z of (1 - chi(p)/p), with bookkeeping."""

    value: float
    y: float
    z: float
    terms: int


def euler_product(a: int, y: float, z: float) -> EulerProductResult:
    """Exact finite product prod_{y < p <= z} (1 - (-a/p)/p) for squarefree a.

    Only odd primes occur for y >= 2. Direct multiplication below the
    log-space cut; above it the factors are accumulated as log1p terms and
    exponentiated once.
    """
    if a < 1 or squarefree_part(a) != a:
        raise ValueError(f"kernel a = {a} must be a positive squarefree integer")
    if y < 2 or z < y:
        raise ValueError("need 2 <= y <= z")
    if z > EULER_PRODUCT_MAX:
        raise ResourceLimitError(f"prime cut {z} exceeds {EULER_PRODUCT_MAX}")
    primes = primes_up_to(int(z))
    lo = np.searchsorted(primes, y, side="right")
    hi = np.searchsorted(primes, z, side="right")
    selected = primes[lo:hi]
    if z <= _LOG_SPACE_CUT:
        value = 1.0
        for p in selected:
            p = int(p)
            value *= 1.0 - kronecker(-a, p) / p
    else:
        logs = [math.log1p(-kronecker(-a, int(p)) / int(p)) for p in selected]
        value = math.exp(math.fsum(logs))
    return EulerProductResult(value, float(y), float(z), int(selected.size))


def singular_series(prime_limit: int) -> float:
    """Partial product prod_{2 < p <= prime_limit} (1 - (-1/p)/(p - 1)).

    The full product converges conditionally (the factors are 1 -+ 1/(p-1)
    by p mod 4); partial products are reported as-is, with the absolute
    surrogate tail bound from singular_series_tail_bound. No literature
    value is asserted anywhere.
    """
    if prime_limit < 2:
        raise ValueError("prime_limit must be >= 2")
    value = 1.0
    for p in primes_up_to(prime_limit):
        p = int(p)
        if p == 2:
            continue
        value *= 1.0 - kronecker(-1, p) / (p - 1)
    return value


def singular_series_tail_bound(prime_limit: int) -> float:
    """Surrogate width for the truncation bracket.

    Bounds sum_{p > L} 2/(p-1)^2 by the telescoping sum_{n > L} 2/(n(n-1))
    = 2/L; this controls the second-order part of log(factor) but not the
    conditionally convergent first-order oscillation, which is why it is a
    surrogate and not a rigorous enclosure.
    """
    if prime_limit < 2:
        raise ValueError("prime_limit must be >= 2")
    return 2.0 / prime_limit


def landau_heuristic(x: float, prime_limit: int = 10**5) -> float:
    """(1/2) * singular_series * integral_2^sqrt(x) dt/log t.

    Adaptive quadrature at relative tolerance 1e-9. Defined for x >= 4
    (at x = 4 the integration interval is empty and the value is 0).
    """
    if x < 4:
        raise ValueError("landau_heuristic requires x >= 4")
    upper = math.sqrt(x)
    if upper <= 2:
        return 0.0
    integral, _ = quad(lambda t: 1.0 / math.log(t), 2.0, upper, epsabs=0.0, epsrel=1e-9, limit=200)
    return 0.5 * singular_series(prime_limit) * integral


def count_square_shift_primes(x: int) -> int:
    """#{p <= x prime : p - 1 is a perfect square} by direct enumeration."""
    if x < 2:
        return 0
    return sum(1 for m in range(0, math.isqrt(x - 1) + 1) if is_prime(m * m + 1))
