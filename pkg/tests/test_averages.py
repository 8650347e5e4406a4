from fractions import Fraction as Q

import pytest

from schreier.averages import (RunVector, interval_average, isometric_c0_select,
                               repeated_average, repeated_averages, runs_schreier_norm,
                               small_beta_vector, tail_threshold, verify_weak_summing)
from schreier.caps import DomainError
from schreier.families import is_member, maximal_partition
from schreier.norms import schreier_norm
from schreier.sets import FiniteSet
from schreier.streams import IndexStream
from schreier.vectors import RationalVector

N = IndexStream.naturals()


def test_hand_evaluated_averages():
    assert repeated_average(1, N, 2) == RationalVector({2: Q(1, 2), 3: Q(1, 2)})
    assert repeated_average(2, N, 1) == RationalVector({1: 1})
    want = {2: Q(1, 4), 3: Q(1, 4), 4: Q(1, 8), 5: Q(1, 8), 6: Q(1, 8), 7: Q(1, 8)}
    assert repeated_average(2, N, 2) == RationalVector(want)


@pytest.mark.parametrize("xi", [0, 1, 2, "w"])
def test_averages_are_probability_vectors_on_maximal_blocks(xi):
    # past level 1 the evens blow up at block 2, so use N there
    M, count = (IndexStream.evens(), 3) if xi in (0, 1) else (N, 2)
    xs = repeated_averages(xi, M, count)
    blocks = maximal_partition(M, xi, count)
    for x, B in zip(xs, blocks):
        assert x.total() == 1
        assert x.support_set() == B
        assert is_member(B, xi)


def test_weak_summing():
    assert verify_weak_summing(1, N, 31) == 1
    assert verify_weak_summing(0, IndexStream.evens(), 10) == 1
    assert verify_weak_summing(2, N, 40) <= 6


def test_tail_threshold():
    n = tail_threshold(0, 1, Q(1, 2))
    x = repeated_average(1, N, n)
    assert x.linf() < Q(1, 2)
    n = tail_threshold(1, 2, Q(1, 4))
    assert runs_schreier_norm(interval_average(2, n), 1) < Q(1, 4)
    with pytest.raises(DomainError):
        tail_threshold(0, 1, 1)


def test_small_beta_vector():
    E, x = small_beta_vector(0, 1, Q(1, 8), N)
    assert E == FiniteSet.interval(9, 17) and x.linf() == Q(1, 9)
    E, x = small_beta_vector(1, 2, Q(1, 2), N)
    assert x.total() == 1 and is_member(E, 2)
    assert schreier_norm(x, 1).value < Q(1, 2)
    with pytest.raises(DomainError):
        small_beta_vector(2, 2, Q(1, 2), N)


@pytest.mark.parametrize("xi,start", [(1, 4), (2, 2), (2, 3), (3, 2)])
def test_interval_average_matches_dense(xi, start):
    u = interval_average(xi, start)
    tail = IndexStream.arithmetic(start=start, step=1)
    x = repeated_average(xi, tail, 1, cap=1 << 16)
    assert len(u) == len(x.support)
    assert all(u[i] == x[i] for i in x.support)
    assert u.l1() == 1


@pytest.mark.parametrize("xi,start,beta", [(2, 2, 1), (2, 3, 1), (2, 4, 0), (3, 2, 1)])
def test_runs_norm_matches_dense(xi, start, beta):
    u = interval_average(xi, start)
    x = repeated_average(xi, IndexStream.arithmetic(start=start, step=1), 1, cap=1 << 16)
    assert runs_schreier_norm(u, beta) == schreier_norm(x, beta, cap=len(x)).value


def test_runs_norm_rejects_large_beta():
    with pytest.raises(DomainError):
        runs_schreier_norm(interval_average(2, 2), 2)


def test_run_vector_json():
    u = interval_average(2, 2)
    assert isinstance(u, RunVector)
    data = u.to_json()
    assert data and u.support_set() == FiniteSet.interval(2, 7)


def test_isometric_level_one():
    M, vecs = isometric_c0_select(1, N, 4)
    from itertools import combinations
    for r in range(1, 5):
        for A in combinations(vecs, r):
            s = RationalVector({})
            for v in A:
                s = s + v
            assert schreier_norm(s, 1).value == 1


def test_isometric_level_zero_uses_basis_vectors():
    M, vecs = isometric_c0_select(0, N, 3)
    assert all(len(v.support) == 1 and v.total() == 1 for v in vecs)
