"""Backend selection for the sieve kernel.

The compiled Cython kernel is preferred; the pure-numpy fallback is used
when the extension is missing or when PHIPAIRS_PURE=1 is set (useful for
benchmarking and for testing the fallback path).
"""

import os

_force_pure = os.environ.get("PHIPAIRS_PURE", "") not in ("", "0")

if not _force_pure:
    try:
        from ._sieve_core import sieve_range

        BACKEND = "cython"
    except ImportError:
        from ._sieve_fallback import sieve_range

        BACKEND = "python"
else:
    from ._sieve_fallback import sieve_range

    BACKEND = "python"

__all__ = ["sieve_range", "BACKEND"]
