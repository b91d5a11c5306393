from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from odlcalc.lie_core import (LieError, LieType, fano_index, flag_dim,
                              fundamental_weight, inner, parse_type, positive_roots,
                              rho, simple_roots, weight_from_label, weyl_dim, zero_weight)

ROOT_COUNTS = {
    ("A", 1): 1, ("A", 4): 10, ("B", 3): 9, ("C", 3): 9, ("D", 4): 12, ("D", 5): 20,
    ("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6,
}

SMALL_TYPES = [LieType(f, r) for f, r in
               [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3),
                ("D", 4), ("G", 2)]]


def _reflection_closure(t):
    """All roots by reflecting the simple roots until nothing new appears."""
    simple = [a.coords for a in simple_roots(t)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for alpha in simple:
                c = Fraction(2) * inner(beta, alpha) / inner(alpha, alpha)
                img = tuple(b - c * a for b, a in zip(beta, alpha))
                if img not in found:
                    found.add(img)
                    nxt.append(img)
        frontier = nxt
    return found


@pytest.mark.parametrize("family,rank_,count", [(f, r, c) for (f, r), c in ROOT_COUNTS.items()])
def test_positive_root_counts(family, rank_, count):
    assert len(positive_roots(LieType(family, rank_))) == count


@pytest.mark.parametrize("t", [LieType("C", 3), LieType("D", 5), LieType("E", 8), LieType("F", 4)])
def test_positive_roots_match_reflection_closure(t):
    closure = _reflection_closure(t)
    assert len(closure) == 2 * len(positive_roots(t))
    assert {r.coords for r in positive_roots(t)} <= closure


def test_symplectic_roots_are_differences_and_sums():
    roots = {r.coords for r in positive_roots(LieType("C", 3))}
    assert len(roots) == 9
    assert (2, 0, 0) in roots and (1, 1, 0) in roots and (1, -1, 0) in roots


def test_rho_values():
    assert rho(LieType("C", 3)).coords == (3, 2, 1)
    assert rho(LieType("A", 1)).coords == (Fraction(1, 2), Fraction(-1, 2))
    assert rho(LieType("D", 5)).coords == (4, 3, 2, 1, 0)


@pytest.mark.parametrize("t", SMALL_TYPES + [LieType("E", 6), LieType("E", 8)])
def test_rho_is_half_sum(t):
    total = [Fraction(0)] * t.ambient_dim
    for r in positive_roots(t):
        total = [a + b for a, b in zip(total, r.coords)]
    assert tuple(x / 2 for x in total) == rho(t).coords


@pytest.mark.parametrize("t,node,dim", [
    (LieType("E", 6), 1, 27), (LieType("E", 7), 7, 56), (LieType("C", 3), 3, 14),
    (LieType("D", 6), 6, 32), (LieType("D", 5), 5, 16), (LieType("E", 8), 8, 248),
    (LieType("F", 4), 4, 26), (LieType("G", 2), 1, 7),
])
def test_weyl_dim_fundamental(t, node, dim):
    assert weyl_dim(t, fundamental_weight(t, node)) == dim


@pytest.mark.parametrize("t", SMALL_TYPES)
def test_weyl_dim_trivial_and_lower_bound(t):
    assert weyl_dim(t, zero_weight(t)) == 1
    for i in range(1, t.rank + 1):
        assert weyl_dim(t, fundamental_weight(t, i)) >= t.rank + 1


def _freudenthal_dim(t, hw):
    """Sum of weight multiplicities from Freudenthal's recursion."""
    simple = [a.coords for a in simple_roots(t)]
    pos = [r.coords for r in positive_roots(t)]
    rh = rho(t).coords
    top = hw.coords

    def add(u, v, c=1):
        return tuple(a + c * b for a, b in zip(u, v))

    norm_top = inner(add(top, rh), add(top, rh))
    mult = {top: 1}
    level = [top]
    while level:
        nxt = []
        for nu in level:
            for a in simple:
                mu = add(nu, a, -1)
                if mu in mult:
                    continue
                gap = norm_top - inner(add(mu, rh), add(mu, rh))
                if gap == 0:
                    mult[mu] = 0
                    continue
                total = Fraction(0)
                for alpha in pos:
                    k = 1
                    while True:
                        up = add(mu, alpha, k)
                        if up not in mult:
                            break
                        total += mult[up] * inner(up, alpha)
                        k += 1
                m = 2 * total / gap
                mult[mu] = m
                if m:
                    nxt.append(mu)
        level = nxt
    return sum(mult.values())


@pytest.mark.parametrize("t", [t for t in SMALL_TYPES if t.rank <= 3])
def test_weyl_dim_matches_dynkin_label_formula(t):
    for labels in product(range(3 if t.rank <= 2 else 2), repeat=t.rank):
        hw = weight_from_label(t, {i + 1: m for i, m in enumerate(labels) if m})
        assert weyl_dim(t, hw) == _freudenthal_dim(t, hw)


@pytest.mark.parametrize("t,node,index", [
    (LieType("D", 6), 6, 10), (LieType("E", 6), 1, 12), (LieType("C", 3), 3, 4),
    (LieType("E", 7), 7, 18), (LieType("D", 7), 7, 12), (LieType("D", 5), 5, 8),
])
def test_fano_index_values(t, node, index):
    assert fano_index(t, node) == index


@pytest.mark.parametrize("n", range(2, 9))
def test_grassmannian_index(n):
    for k in range(1, n):
        assert fano_index(LieType("A", n - 1), k) == n
        assert flag_dim(LieType("A", n - 1), k) == k * (n - k)


@pytest.mark.parametrize("m", range(2, 6))
def test_isotropic_grassmannian_indices(m):
    for k in range(1, m + 1):
        assert fano_index(LieType("C", m), k) == 2 * m - k + 1
    for k in range(1, m - 1):
        assert fano_index(LieType("B", m), k) == (2 * m + 1) - k - 1
        if m >= 4:
            assert fano_index(LieType("D", m), k) == 2 * m - k - 1


def test_invalid_types():
    with pytest.raises(LieError):
        LieType("D", 2)
    with pytest.raises(LieError):
        LieType("E", 9)
    with pytest.raises(LieError):
        parse_type("X3")
    assert parse_type("e_6") == LieType("E", 6)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_TYPES), st.data())
def test_weyl_dim_weyl_invariant_under_label_shift(t, data):
    labels = data.draw(st.lists(st.integers(0, 3), min_size=t.rank, max_size=t.rank))
    hw = weight_from_label(t, {i + 1: m for i, m in enumerate(labels) if m})
    dim = weyl_dim(t, hw)
    assert dim >= 1
    assert (dim == 1) == (not any(labels))
