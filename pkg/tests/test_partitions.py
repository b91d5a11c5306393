from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from odlcalc.partitions import (Partition, cauchy_exterior, cauchy_rank, conjugate, lr_coefficient,
                                lr_product, parse_partition, partitions_of, schur_dim)

partition_st = st.lists(st.integers(0, 6), max_size=6).map(
    lambda xs: Partition(sorted(xs, reverse=True)))


def test_conjugate_examples():
    assert conjugate((2, 1)) == Partition((2, 1))
    assert conjugate((3,)) == Partition((1, 1, 1))
    assert conjugate((4, 2, 1)) == Partition((3, 2, 1, 1))


@settings(max_examples=1000, deadline=None)
@given(partition_st)
def test_conjugate_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)


def test_partition_trimmed_equality():
    assert Partition((2, 1, 0, 0)) == Partition((2, 1))
    assert parse_partition("2,1") == Partition((2, 1))


def test_lr_examples():
    assert lr_coefficient((1,), (1, 1), (2, 1)) == 1
    assert lr_coefficient((1,), (1,), (2,)) == 1
    for nu in [(3, 1), (2, 2, 1), (1,)]:
        assert lr_coefficient((), nu, nu) == 1
    assert lr_coefficient((2, 1), (2, 1), (3, 2, 1)) == 2


def _brute_lr(lam, mu, nu):
    """c^nu_{lam mu} by counting LR tableaux with a naive recursive filler."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if sum(lam) + sum(mu) != sum(nu):
        return 0
    rows = [(lam[i] if i < len(lam) else 0, nu[i]) for i in range(len(nu))]
    if any(a > b for a, b in rows) or len(lam) > len(nu):
        return 0
    cells = [(i, j) for i, (a, b) in enumerate(rows) for j in range(b - 1, a - 1, -1)]
    content = list(mu)
    filling = {}

    def ok(i, j, v):
        if (i, j + 1) in filling and filling[(i, j + 1)] < v:
            return False
        if (i - 1, j) in filling and filling[(i - 1, j)] >= v:
            return False
        if i > 0 and j >= rows[i - 1][1]:
            return False
        return True

    def lattice():
        counts = [0] * len(content)
        for cell in cells:
            v = filling[cell]
            counts[v] += 1
            if v > 0 and counts[v] > counts[v - 1]:
                return False
        return True

    def rec(k, left):
        if k == len(cells):
            return 1 if lattice() else 0
        i, j = cells[k]
        total = 0
        for v in range(len(content)):
            if left[v] and ok(i, j, v):
                filling[(i, j)] = v
                left[v] -= 1
                total += rec(k + 1, left)
                left[v] += 1
                del filling[(i, j)]
        return total

    return rec(0, content[:])


@pytest.mark.parametrize("lam,mu", [((2, 1), (2, 1)), ((3, 1), (2,)), ((2, 2), (1, 1)), ((1,), (3, 2))])
def test_lr_against_naive_filler(lam, mu):
    size = sum(lam) + sum(mu)
    for nu in partitions_of(size):
        assert lr_coefficient(lam, mu, nu) == _brute_lr(lam, mu, nu), nu


def test_schur_dim_examples():
    for n in range(1, 7):
        for k in range(0, n + 1):
            assert schur_dim((1,) * k, n) == comb(n, k)
    assert schur_dim((2, 2, 2, 1, 1, 1), 6) == 20
    assert schur_dim((5,) * 6, 6) == 1
    assert schur_dim((9,) * 8, 8) == 1
    assert schur_dim((2,), 4) == 10


@pytest.mark.parametrize("n", range(1, 6))
def test_lr_dimension_identity(n):
    small = [p for d in range(0, 5) for p in partitions_of(d)]
    for lam in small:
        for mu in small:
            total = sum(m * schur_dim(nu, n) for nu, m in lr_product(lam, mu).items())
            assert total == schur_dim(lam, n) * schur_dim(mu, n)


def test_cauchy_examples():
    two = {(tuple(a), tuple(b)) for a, b, _ in cauchy_exterior(2, 3, 3)}
    assert two == {((2,), (1, 1)), ((1, 1), (2,))}
    assert [(tuple(a), tuple(b), m) for a, b, m in cauchy_exterior(0, 2, 2)] == [((), (), 1)]
    assert cauchy_rank(3, 2, 3) == 20
    lams = {tuple(a) for a, _, _ in cauchy_exterior(3, 2, 3)}
    assert lams == {(2, 1), (3,)}


@pytest.mark.parametrize("a,b", [(a, b) for a in range(1, 5) for b in range(1, 5)])
def test_cauchy_rank_identity(a, b):
    for j in range(0, 7):
        assert cauchy_rank(j, a, b) == comb(a * b, j)
