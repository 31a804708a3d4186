"""Exact and asymptotic distribution of the degree of a fixed-label node.

Three independent evaluation routes are provided for the law of the
degree of the node labeled j in a gap-oriented tree of n nodes:

* ``degree_pmf_closed`` -- the alternating gamma-ratio sum, accumulated
  in exact rational arithmetic (each summand is rational) so the
  alternating cancellation costs no precision.
* ``degree_pmf_recurrence`` -- a forward DP with all-nonnegative
  coefficients; numerically stable and the default route, with an
  exact-rational mode.
* ``degree_pmf_hypergeom`` -- two terminating 3F2 series.

The root (j = 1) has its own closed form, ``root_pmf``, and DP variant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .special import hypergeometric_pfq, log_gamma

__all__ = [
    "Regime",
    "DegreeLaw",
    "DegreeMoments",
    "degree_support",
    "degree_pmf_closed",
    "degree_pmf_recurrence",
    "root_pmf",
    "root_pmf_recurrence",
    "degree_pmf_hypergeom",
    "degree_mean",
    "degree_variance",
    "degree_moments_asymptotic",
]


class Regime(Enum):
    EXACT = "exact"
    FIXED_J = "fixed-j"
    GROWING_J = "growing-j"
    LINEAR_THETA = "linear-theta"


@dataclass(frozen=True)
class DegreeLaw:
    """Probability table for the degree of node j at time n.

    ``probs[d]`` is the probability of degree d for d = 1..max degree;
    entries may be floats or exact Fractions depending on the mode.
    """

    n: int
    j: int
    probs: dict
    method: str

    def support(self) -> range:
        return range(1, max(self.probs) + 1)

    def total(self):
        return sum(self.probs.values())

    def mean(self):
        return sum(d * p for d, p in self.probs.items())

    def variance(self):
        m = self.mean()
        return sum(d * d * p for d, p in self.probs.items()) - m * m


@dataclass(frozen=True)
class DegreeMoments:
    n: int
    j: int
    mean: float
    variance: float
    regime: Regime


def degree_support(n: int, j: int) -> range:
    """Possible degrees of node j at time n."""
    if j == 1:
        return range(1, n) if n >= 2 else range(0, 1)
    return range(1, n - j + 2)


def _check_nj(n: int, j: int, j_min: int = 2) -> None:
    if j < j_min or j > n:
        raise ValueError(f"need {j_min} <= j <= n, got j={j}, n={n}")


def _closed_term_ratio(n: int, j: int, i: int) -> Fraction:
    """Gamma(j-1/2) Gamma(n-1-i/2) / (Gamma(n-1/2) Gamma(j-1-i/2)), exactly.

    The gamma arguments pair up into integer-difference ratios (both
    integer or both half-integer depending on the parity of i), so the
    sqrt(pi) factors cancel and the ratio is rational.  A pole of
    Gamma(j-1-i/2) in the denominator makes the whole ratio zero.
    """
    if i % 2 == 0:
        m = i // 2
        if j - 1 - m <= 0:
            return Fraction(0)
        ratio = Fraction(1)
        for t in range(j - 1 - m, n - 1 - m):
            ratio *= t
        for k in range(j, n):
            ratio /= Fraction(2 * k - 1, 2)
        return ratio
    m = (i - 1) // 2
    ratio = Fraction(1)
    for r in range(m + 1):
        ratio *= Fraction(2 * (j - m + r) - 3, 2)
        ratio /= Fraction(2 * (n - m + r) - 3, 2)
    return ratio


def degree_pmf_closed(n: int, j: int, d: int) -> float:
    """Alternating-sum closed form for P(degree of node j at time n = d).

    Every summand is a binomial coefficient times a rational ratio of
    gammas, so the alternating sum is accumulated in exact rational
    arithmetic and converted to float only at the end; this keeps full
    relative accuracy even at tiny tail probabilities where a floating
    evaluation would lose everything to cancellation.  Pole terms
    (gamma of a nonpositive integer in the denominator) vanish exactly.
    """
    _check_nj(n, j)
    if d < 1 or d > n - j + 1:
        return 0.0
    total = Fraction(0)
    for i in range(d):
        term = math.comb(d - 1, i) * _closed_term_ratio(n, j, i)
        total += -term if i % 2 else term
    return float(total)


def degree_pmf_recurrence(n: int, j: int, exact: bool = False) -> DegreeLaw:
    """Stable DP for the full degree law of node j at time n.

    Starting from the certain degree 1 at time j, each growth step maps
    P_m(d) = (d-1)/(2m-3) P_{m-1}(d-1) + (2m-3-d)/(2m-3) P_{m-1}(d).
    In exact mode all coefficients are Fractions and the law sums to 1
    exactly.
    """
    _check_nj(n, j)
    one = Fraction(1) if exact else 1.0
    zero = one * 0
    probs = {1: one}
    for m in range(j + 1, n + 1):
        denom = one * (2 * m - 3)
        new: dict = {}
        for d, p in probs.items():
            stay = p * (2 * m - 3 - d) / denom
            if stay:
                new[d] = new.get(d, zero) + stay
            up = p * d / denom
            if up:
                new[d + 1] = new.get(d + 1, zero) + up
        probs = new
    return DegreeLaw(n=n, j=j, probs=probs, method="recurrence")


def root_pmf(n: int, d: int) -> float:
    """Closed form for the root's degree law: P(root degree at time n = d).

    Equal to d (2n-d-3)! / (2^{n-d-1} (n-d-1)! (2n-3)!!), evaluated with
    log-factorials so it stays finite for large n.
    """
    if n < 2:
        raise ValueError(f"root_pmf requires n >= 2, got {n}")
    if d < 1 or d > n - 1:
        return 0.0
    # (2n-3)!! = (2n-2)! / (2^{n-1} (n-1)!)
    log_dfact = log_gamma(2 * n - 1) - (n - 1) * math.log(2.0) - log_gamma(n)
    log_p = (
        math.log(d)
        + log_gamma(2 * n - d - 2)
        - (n - d - 1) * math.log(2.0)
        - log_gamma(n - d)
        - log_dfact
    )
    return math.exp(log_p)


def root_pmf_recurrence(n: int, exact: bool = False) -> DegreeLaw:
    """DP for the root's degree law (the d -> d+1 shift of the j >= 2 DP).

    The root with degree d carries d+1 gaps, so the step weights are
    d/(2m-3) for a degree increase and (2m-4-d)/(2m-3) otherwise.
    """
    if n < 2:
        raise ValueError(f"root_pmf_recurrence requires n >= 2, got {n}")
    one = Fraction(1) if exact else 1.0
    zero = one * 0
    probs = {1: one}
    for m in range(3, n + 1):
        denom = one * (2 * m - 3)
        new: dict = {}
        for d, p in probs.items():
            stay = p * (2 * m - 4 - d) / denom
            if stay:
                new[d] = new.get(d, zero) + stay
            up = p * (d + 1) / denom
            if up:
                new[d + 1] = new.get(d + 1, zero) + up
        probs = new
    return DegreeLaw(n=n, j=1, probs=probs, method="recurrence")


def degree_pmf_hypergeom(n: int, j: int, d: int) -> float:
    """Hypergeometric route: the degree PMF as a difference of two 3F2s.

    Both 3F2 series terminate and every gamma-ratio prefactor reduces to
    a rational number (the half-integer gammas appear in ratios whose
    sqrt(pi) factors cancel), so the whole expression is evaluated in
    exact rational arithmetic and converted to float at the end.  This
    sidesteps the catastrophic cancellation between the two terms that a
    floating evaluation suffers at small tail probabilities.
    """
    _check_nj(n, j)
    if d < 1 or d > n - j + 1:
        return 0.0
    f1 = hypergeometric_pfq(
        [Fraction(2 - d, 2), Fraction(1 - d, 2), Fraction(2 - j)],
        [Fraction(1, 2), Fraction(2 - n)],
        1,
        exact=True,
    )
    # Gamma(j-1/2)/Gamma(n-1/2) = 1 / prod_{k=j}^{n-1} (k - 1/2);
    # Gamma(n-1)/Gamma(j-1)     = prod_{k=j-1}^{n-2} k
    pref1 = Fraction(1)
    for k in range(j - 1, n - 1):
        pref1 *= k
    for k in range(j, n):
        pref1 /= Fraction(2 * k - 1, 2)
    term1 = pref1 * f1
    if d == 1:
        term2 = Fraction(0)  # 1/Gamma(d-1) pole kills the second term
    else:
        f2 = hypergeometric_pfq(
            [Fraction(3 - d, 2), Fraction(2 - d, 2), Fraction(5, 2) - j],
            [Fraction(3, 2), Fraction(5, 2) - n],
            1,
            exact=True,
        )
        # Gamma(d)/Gamma(d-1) = d-1; Gamma(j-1/2)/Gamma(j-3/2) = j-3/2;
        # Gamma(n-3/2)/Gamma(n-1/2) = 1/(n-3/2)
        term2 = Fraction((d - 1) * (2 * j - 3), 2 * n - 3) * f2
    return float(term1 - term2)


def _mean_gamma_ratio(n: int, j: int) -> float:
    return math.exp(log_gamma(n) + log_gamma(j - 0.5) - log_gamma(n - 0.5) - log_gamma(j))


def degree_mean(n: int, j: int) -> float:
    """Exact mean degree of node j at time n (root loses its phantom gap)."""
    _check_nj(n, j, j_min=1)
    if n < 2:
        raise ValueError(f"degree_mean requires n >= 2, got {n}")
    return _mean_gamma_ratio(n, j) - (1.0 if j == 1 else 0.0)


def degree_variance(n: int, j: int) -> float:
    """Exact variance of the degree of node j at time n."""
    _check_nj(n, j, j_min=1)
    if n < 2:
        raise ValueError(f"degree_variance requires n >= 2, got {n}")
    a = _mean_gamma_ratio(n, j)
    return -a * a - a + (4 * n - 2) / (2 * j - 1)


def degree_moments_asymptotic(n: int, j: int, regime: Regime) -> DegreeMoments:
    """Large-n approximations for the degree mean and variance.

    The behavior changes with how j scales against n: fixed j, growing
    j = o(n), and the linear phase j = theta * n with 0 < theta < 1.
    """
    if regime is Regime.EXACT:
        return DegreeMoments(n=n, j=j, mean=degree_mean(n, j), variance=degree_variance(n, j), regime=regime)
    if regime is Regime.FIXED_J:
        ratio = math.exp(log_gamma(j - 0.5) - log_gamma(j + 0.0))
        return DegreeMoments(
            n=n,
            j=j,
            mean=ratio * math.sqrt(n),
            variance=(4.0 / (2 * j - 1) - ratio * ratio) * n,
            regime=regime,
        )
    if regime is Regime.GROWING_J:
        return DegreeMoments(n=n, j=j, mean=math.sqrt(n / j), variance=n / j, regime=regime)
    if regime is Regime.LINEAR_THETA:
        theta = j / n
        if not 0.0 < theta < 1.0:
            raise ValueError(f"linear regime requires 0 < j/n < 1, got {theta}")
        return DegreeMoments(
            n=n,
            j=j,
            mean=math.sqrt(n / j),
            variance=1.0 / theta - 1.0 / math.sqrt(theta),
            regime=regime,
        )
    raise ValueError(f"unknown regime {regime!r}")
