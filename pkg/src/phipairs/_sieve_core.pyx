# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sieve kernel.

For a contiguous range [lo, hi) this fills, per integer n:
smallest prime factor, Euler totient phi(n), Mobius mu(n), and the
squarefree part of n (the unique squarefree a with n = a*m^2).
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def sieve_range(long long lo, long long hi, cnp.int64_t[::1] base_primes):
    """Return (spf, phi, mu, sqf) int64/int8 arrays for [lo, hi).

    base_primes must contain every prime <= isqrt(hi - 1).
    Convention for n = 1: spf = 1, phi = 1, mu = 1, sqf = 1.
    """
    cdef Py_ssize_t size = hi - lo
    spf_arr = np.zeros(size, dtype=np.int64)
    phi_arr = np.ones(size, dtype=np.int64)
    mu_arr = np.ones(size, dtype=np.int8)
    sqf_arr = np.ones(size, dtype=np.int64)
    rem_arr = np.arange(lo, hi, dtype=np.int64)

    cdef cnp.int64_t[::1] spf = spf_arr
    cdef cnp.int64_t[::1] phi = phi_arr
    cdef cnp.int8_t[::1] mu = mu_arr
    cdef cnp.int64_t[::1] sqf = sqf_arr
    cdef cnp.int64_t[::1] rem = rem_arr

    cdef long long p, j, start, r
    cdef Py_ssize_t i, k, t
    cdef int e

    with nogil:
        for k in range(base_primes.shape[0]):
            p = base_primes[k]
            start = lo + (p - lo % p) % p
            if start < p:
                start = p
            j = start
            while j < hi:
                i = j - lo
                if spf[i] == 0:
                    spf[i] = p
                e = 0
                while rem[i] % p == 0:
                    rem[i] = rem[i] / p
                    e += 1
                phi[i] *= p - 1
                for t in range(e - 1):
                    phi[i] *= p
                if e == 1:
                    mu[i] = -mu[i]
                else:
                    mu[i] = 0
                if e & 1:
                    sqf[i] *= p
                j += p
        # Whatever remains after dividing out the base primes is a single
        # prime factor > isqrt(hi - 1), with exponent 1.
        for i in range(size):
            r = rem[i]
            if r > 1:
                if spf[i] == 0:
                    spf[i] = r
                phi[i] *= r - 1
                mu[i] = -mu[i]
                sqf[i] *= r

    if lo == 1:
        spf_arr[0] = 1
    return spf_arr, phi_arr, mu_arr, sqf_arr
