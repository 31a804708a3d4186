from fractions import Fraction

import pytest

from port_trees.degree import degree_mean, degree_pmf_recurrence, degree_variance, root_pmf_recurrence
from port_trees.oracle import enumerate_statistic, history_count, oracle_moment
from port_trees.tree import Kernel
from port_trees.zagreb import zagreb_mean, cubic_mean, zagreb_second_moment


def test_history_counts():
    assert history_count(2, Kernel.GAP) == 1
    assert history_count(4, Kernel.GAP) == 15
    assert history_count(9, Kernel.GAP) == 3 * 5 * 7 * 9 * 11 * 13 * 15
    assert history_count(4, Kernel.DEGREE) == 8
    assert history_count(8, Kernel.DEGREE) == 2 * 4 * 6 * 8 * 10 * 12


def test_unique_two_node_tree():
    for kernel in Kernel:
        dist = enumerate_statistic(2, kernel, "zagreb")
        assert dist.outcomes == {2: Fraction(1)}


def test_root_degree_n4_gap():
    dist = enumerate_statistic(4, Kernel.GAP, "root-degree")
    assert dist.outcomes == {1: Fraction(1, 5), 2: Fraction(2, 5), 3: Fraction(2, 5)}


def test_zagreb_n4_degree_kernel():
    dist = enumerate_statistic(4, Kernel.DEGREE, "zagreb")
    assert dist.outcomes == {10: Fraction(1, 2), 12: Fraction(1, 2)}
    assert oracle_moment(dist, 1) == 11
    assert oracle_moment(dist, 2) == 122


def test_degree_moment_n3_gap():
    dist = enumerate_statistic(3, Kernel.GAP, "degree", j=1)
    assert oracle_moment(dist, 1) == Fraction(5, 3)


@pytest.mark.parametrize("kernel", list(Kernel))
def test_probabilities_sum_to_one(kernel):
    for n in (2, 4, 6):
        for stat in ("zagreb", "cubic", "zagreb2", "root-degree", "martingale"):
            dist = enumerate_statistic(n, kernel, stat)
            assert dist.total() == 1


def test_oracle_matches_degree_recurrence():
    for n in range(2, 8):
        for j in range(1, n + 1):
            dist = enumerate_statistic(n, Kernel.GAP, "degree", j=j)
            law = root_pmf_recurrence(n, exact=True) if j == 1 else degree_pmf_recurrence(n, j, exact=True)
            assert dist.outcomes == {d: p for d, p in law.probs.items() if p}


def test_oracle_matches_degree_moment_formulas():
    for n in range(2, 8):
        for j in range(1, n + 1):
            dist = enumerate_statistic(n, Kernel.GAP, "degree", j=j)
            mean = oracle_moment(dist, 1)
            var = oracle_moment(dist, 2) - mean * mean
            assert abs(float(mean) - degree_mean(n, j)) < 1e-10
            assert abs(float(var) - degree_variance(n, j)) < 1e-10


def test_oracle_matches_zagreb_recurrences():
    for n in range(2, 8):
        zdist = enumerate_statistic(n, Kernel.DEGREE, "zagreb")
        ydist = enumerate_statistic(n, Kernel.DEGREE, "cubic")
        assert oracle_moment(zdist, 1) == zagreb_mean(n)
        assert oracle_moment(zdist, 2) == zagreb_second_moment(n)
        assert oracle_moment(ydist, 1) == cubic_mean(n)


def test_kernel_distinction_regression():
    # the gap-oriented model has a different Zagreb mean; this difference
    # is permanent and intentional
    gap_mean = oracle_moment(enumerate_statistic(4, Kernel.GAP, "zagreb"), 1)
    assert gap_mean == Fraction(166, 15)
    assert gap_mean != zagreb_mean(4)


def test_martingale_statistic_is_centered():
    dist = enumerate_statistic(6, Kernel.DEGREE, "martingale")
    assert oracle_moment(dist, 1) == 0


def test_cap_and_argument_validation():
    with pytest.raises(ValueError):
        enumerate_statistic(10, Kernel.GAP, "zagreb")
    with pytest.raises(ValueError):
        enumerate_statistic(5, Kernel.GAP, "degree")  # missing j
    with pytest.raises(ValueError):
        enumerate_statistic(5, Kernel.GAP, "zagreb", j=2)
    with pytest.raises(ValueError):
        enumerate_statistic(5, Kernel.GAP, "wiener")
