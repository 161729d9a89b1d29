"""Pure-numpy sieve kernel, used when the compiled extension is unavailable.

Semantics match ``phipairs._sieve_core.sieve_range`` exactly; the two are
compared bit-for-bit in the test suite and raced in benchmarks/.
"""

import numpy as np


def sieve_range(lo, hi, base_primes):
    """Return (spf, phi, mu, sqf) int64/int8 arrays for [lo, hi).

    base_primes must contain every prime <= isqrt(hi - 1).
    Convention for n = 1: spf = 1, phi = 1, mu = 1, sqf = 1.
    """
    size = hi - lo
    spf = np.zeros(size, dtype=np.int64)
    phi = np.ones(size, dtype=np.int64)
    mu = np.ones(size, dtype=np.int8)
    sqf = np.ones(size, dtype=np.int64)
    rem = np.arange(lo, hi, dtype=np.int64)

    for p in base_primes:
        p = int(p)
        start = max(lo + (p - lo % p) % p, p)
        if start >= hi:
            continue
        idx = np.arange(start - lo, size, p)

        unset = spf[idx] == 0
        spf[idx[unset]] = p

        # Per-multiple exponent of p, extracted by repeated division.
        e = np.ones(idx.size, dtype=np.int64)
        rem[idx] //= p
        div = rem[idx] % p == 0
        while div.any():
            sel = idx[div]
            rem[sel] //= p
            e[div] += 1
            div[div] = rem[sel] % p == 0

        phi[idx] *= (p - 1) * p ** (e - 1)
        mu[idx[e == 1]] *= -1
        mu[idx[e > 1]] = 0
        odd = e % 2 == 1
        sqf[idx[odd]] *= p

    # Leftover cofactors are single primes > isqrt(hi - 1), exponent 1.
    big = rem > 1
    r = rem[big]
    spf[big] = np.where(spf[big] == 0, r, spf[big])
    phi[big] *= r - 1
    mu[big] = -mu[big]
    sqf[big] *= r

    if lo == 1:
        spf[0] = 1
    return spf, phi, mu, sqf
