"""phipairs: prime pairs whose shifted product is a perfect square.

Core objects: exact counts of ordered pairs of distinct primes p, q <= x
with (p - 1)(q - 1) a perfect square, the squarefree-kernel grouping that
computes them in one sieve pass, dyadic-window lower-bound sums, and a lab
of numerical checks for the analytic inequalities the counts rely on.
"""

from .backend import BACKEND
from .sieves import ResourceLimitError

__version__ = "0.1.0"

__all__ = ["BACKEND", "ResourceLimitError", "__version__"]
