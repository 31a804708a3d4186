"""Brute-force ground truth by exhaustive history enumeration.

Every attachment history of a small tree is visited once by a DFS over
parent choices.  Branch weights are the integer attachment weights, so
each leaf carries an exact integer weight and the law of any statistic
comes out in exact rational arithmetic.  The statistic is evaluated
incrementally along the DFS path (push/pop degree updates); no trees are
materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .special import harmonic
from .tree import Kernel

__all__ = ["ExactDist", "enumerate_statistic", "oracle_moment", "history_count", "STATISTICS"]

DEFAULT_CAP = 9

STATISTICS = ("root-degree", "degree", "zagreb", "cubic", "zagreb2", "martingale")


@dataclass(frozen=True)
class ExactDist:
    """Exact law of a tree statistic: outcome -> rational probability."""

    n: int
    kernel: Kernel
    statistic: str
    outcomes: dict
    history_count: int

    def total(self) -> Fraction:
        return sum(self.outcomes.values(), Fraction(0))


def history_count(n: int, kernel: Kernel) -> int:
    """Number of weighted attachment histories of an n-node tree."""
    total = 1
    for m in range(2, n):
        total *= (2 * m - 1) if kernel is Kernel.GAP else 2 * (m - 1)
    return total


def oracle_moment(dist: ExactDist, order: int) -> Fraction:
    """Exact moment sum(value^order * prob) of an enumerated law."""
    if order < 1:
        raise ValueError(f"moment order must be >= 1, got {order}")
    return sum((Fraction(v) ** order) * p for v, p in dist.outcomes.items())


def enumerate_statistic(
    n: int, kernel: Kernel, statistic: str, j: int | None = None, cap: int = DEFAULT_CAP
) -> ExactDist:
    """Exact law of ``statistic`` over all n-node attachment histories.

    ``statistic`` is one of ``root-degree``, ``degree`` (requires j),
    ``zagreb``, ``cubic``, ``zagreb2``, ``martingale``.  The default cap
    n <= 9 keeps the history count near 2 million.
    """
    if n < 2:
        raise ValueError(f"enumeration requires n >= 2, got {n}")
    if n > cap:
        raise ValueError(f"n={n} exceeds the enumeration cap {cap}")
    if statistic not in STATISTICS:
        raise ValueError(f"unknown statistic {statistic!r}")
    if statistic == "degree":
        if j is None or not 1 <= j <= n:
            raise ValueError(f"statistic 'degree' needs 1 <= j <= n, got j={j}")
    elif j is not None:
        raise ValueError(f"statistic {statistic!r} takes no label argument")

    gap = kernel is Kernel.GAP
    degree = [0] * (n + 1)
    degree[1] = 1
    degree[2] = 1
    accum: dict = {}
    # state carried along the DFS: degrees, zagreb, cubic
    state = {"zagreb": 2, "cubic": 2}

    def record(weight: int) -> None:
        if statistic == "root-degree":
            value = degree[1]
        elif statistic == "degree":
            value = degree[j]
        elif statistic == "zagreb":
            value = state["zagreb"]
        elif statistic == "cubic":
            value = state["cubic"]
        elif statistic == "zagreb2":
            value = state["zagreb"] ** 2
        else:  # martingale M_n = 2/(n-1) Z_n - 4 H_{n-1}
            value = Fraction(2 * state["zagreb"], n - 1) - 4 * harmonic(n - 1)
        accum[value] = accum.get(value, 0) + weight

    def dfs(m: int, weight: int) -> None:
        # insert node m+1 into the current m-node tree
        if m == n:
            record(weight)
            return
        for v in range(1, m + 1):
            w = degree[v] + 1 if (gap and v == 1) else degree[v]
            d_old = degree[v]
            degree[v] += 1
            degree[m + 1] = 1
            state["zagreb"] += 2 * d_old + 2
            state["cubic"] += 3 * d_old * d_old + 3 * d_old + 2
            dfs(m + 1, weight * w)
            state["cubic"] -= 3 * d_old * d_old + 3 * d_old + 2
            state["zagreb"] -= 2 * d_old + 2
            degree[m + 1] = 0
            degree[v] = d_old

    dfs(2, 1)
    total = history_count(n, kernel)
    outcomes = {value: Fraction(weight, total) for value, weight in sorted(accum.items())}
    return ExactDist(n=n, kernel=kernel, statistic=statistic, outcomes=outcomes, history_count=total)
