"""Scalar special-function kernels used by the exact-analytics modules.

Everything here is pure and stateless.  Gamma ratios elsewhere in the
package are always formed as differences of ``log_gamma`` values, never
as quotients of raw gammas, so they stay finite far beyond n ~ 170.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "log_gamma",
    "reciprocal_gamma",
    "digamma_plus_gamma",
    "harmonic",
    "pochhammer",
    "double_factorial",
    "hypergeometric_pfq",
]

_MAX_PFQ_TERMS = 100_000


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if x <= 0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def reciprocal_gamma(x: float) -> float:
    """1/Gamma(x), defined on all reals.

    Returns exactly 0.0 at the poles x = 0, -1, -2, ... so that series
    terms carrying a gamma pole in the denominator vanish without any
    special-casing at the call site.
    """
    if x > 0:
        return math.exp(-math.lgamma(x))
    if x == math.floor(x):
        return 0.0
    # reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
    return math.sin(math.pi * x) * math.exp(math.lgamma(1.0 - x)) / math.pi


def harmonic(n: int) -> Fraction:
    """Exact harmonic number H_n = sum_{k=1}^n 1/k, with H_0 = 0."""
    if n < 0:
        raise ValueError(f"harmonic requires n >= 0, got {n}")
    total = Fraction(0)
    for k in range(1, n + 1):
        total += Fraction(1, k)
    return total


def digamma_plus_gamma(n: int) -> Fraction:
    """Psi(n) + gamma as the exact rational H_{n-1}, for integer n >= 1."""
    if n < 1:
        raise ValueError(f"digamma_plus_gamma requires n >= 1, got {n}")
    return harmonic(n - 1)


def pochhammer(x: float, k: int) -> float:
    """Rising factorial x (x+1) ... (x+k-1); equals 1 for k = 0."""
    if k < 0:
        raise ValueError(f"pochhammer requires k >= 0, got {k}")
    result = 1.0
    for i in range(k):
        result *= x + i
    return result


def double_factorial(z: int) -> int:
    """z!! = z (z-2) (z-4) ...; 0!! = 1.  Exact (big-integer) arithmetic."""
    if z < 0:
        raise ValueError(f"double_factorial requires z >= 0, got {z}")
    result = 1
    while z > 1:
        result *= z
        z -= 2
    return result


def _as_half_integer(x) -> int | None:
    """2*x as an int when x is an exact integer or half-integer, else None."""
    if isinstance(x, Fraction):
        if x.denominator in (1, 2):
            return int(x * 2)
        return None
    doubled = 2.0 * float(x)
    nearest = round(doubled)
    if doubled == nearest:
        return nearest
    return None


def hypergeometric_pfq(upper, lower, z, exact: bool = False):
    """Terminating generalized hypergeometric series pFq(upper; lower; z).

    Sums sum_s (prod <a_i>_s / prod <b_j>_s) z^s / s! until the first
    upper Pochhammer factor is exactly zero.  Termination is detected
    with exact half-integer bookkeeping on the parameters (stored as
    doubled integers), never by floating comparison.

    With ``exact=True`` all parameters and ``z`` must be rational
    (int/Fraction); the sum is then carried out in exact ``Fraction``
    arithmetic, which avoids the cancellation the alternating terms
    suffer in floating point.

    Raises ValueError if no upper parameter can terminate the series, or
    if a lower-parameter pole is reached before termination.
    """
    up2 = [_as_half_integer(a) for a in upper]
    lo2 = [_as_half_integer(b) for b in lower]
    # a nonpositive *integer* upper parameter (possibly reached from a
    # half-integer is impossible: a + s keeps parity of 2a) must exist
    if not any(a2 is not None and a2 <= 0 and a2 % 2 == 0 for a2 in up2):
        raise ValueError("series does not terminate: no nonpositive integer upper parameter")

    if exact:
        ups = [Fraction(a) for a in upper]
        los = [Fraction(b) for b in lower]
        zv = Fraction(z)
        total = Fraction(1)
        term = Fraction(1)
    else:
        ups = [float(a) for a in upper]
        los = [float(b) for b in lower]
        zv = float(z)
        total = 1.0
        term = 1.0
    for s in range(_MAX_PFQ_TERMS):
        # factor taking term s to term s+1 involves (a + s) and (b + s)
        if any(a2 is not None and a2 == -2 * s for a2 in up2):
            return total
        if any(b2 is not None and b2 == -2 * s for b2 in lo2):
            raise ValueError("lower-parameter pole reached before termination")
        for a in ups:
            term *= a + s
        for b in los:
            term /= b + s
        term *= zv / (s + 1)
        total += term
    raise ValueError("series failed to terminate within the iteration cap")
