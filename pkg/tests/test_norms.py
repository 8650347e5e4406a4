import random
from fractions import Fraction as Q

import pytest

from schreier.caps import DomainError, ResourceCapError
from schreier.families import enumerate_maximal, is_member
from schreier.norms import (An_seminorm, c0_sm_check, check_domination, dual_norm,
                            dual_norm_oracle, ell1_sm_check, norm_oracle, schreier_norm,
                            split_by_size, strip_large_part)
from schreier.sets import FiniteSet
from schreier.vectors import RationalVector as V


def ones(a, b):
    return V.indicator(FiniteSet.interval(a, b))


def rand_vec(rng, n, lo=-4, hi=4):
    return V({i: Q(rng.randint(lo, hi), rng.randint(1, 4)) for i in range(1, n + 1)})


def test_examples():
    c = schreier_norm(ones(1, 3), 1)
    assert c.value == 2 and c.witness == FiniteSet([2, 3])
    c = schreier_norm(ones(1, 7), 2)
    assert c.value == 6 and c.witness == FiniteSet.interval(2, 7)
    for xi in [0, 1, "w", "w^2"]:
        assert schreier_norm(V.basis(5), xi).value == 1


def test_witness_is_member_and_attains():
    rng = random.Random(1)
    for xi in [1, 2, "w"]:
        for _ in range(20):
            x = rand_vec(rng, 10)
            c = schreier_norm(x, xi)
            assert is_member(c.witness, xi)
            assert sum(abs(x[i]) for i in c.witness) == c.value


@pytest.mark.parametrize("xi", [0, 1, 2, 3, "w"])
def test_norm_against_oracle(xi):
    rng = random.Random(2)
    for _ in range(25):
        x = rand_vec(rng, 11)
        assert schreier_norm(x, xi).value == norm_oracle(x, xi)


def test_level_zero_is_sup_and_sandwich():
    rng = random.Random(3)
    for _ in range(20):
        x = rand_vec(rng, 9)
        assert schreier_norm(x, 0).value == x.linf()
        for xi in [1, 2, "w"]:
            assert x.linf() <= schreier_norm(x, xi).value <= x.l1()


def test_level_one_heap_path_large_support():
    # ones on [1, n]: best S_1 set is the top half
    for n in [50, 301]:
        assert schreier_norm(ones(1, n), 1, cap=n).value == (n + 1) // 2


def test_support_cap():
    with pytest.raises(ResourceCapError):
        schreier_norm(ones(1, 30), 1)


def test_An_seminorm():
    assert An_seminorm(ones(1, 7), 1, 2) == 6
    assert An_seminorm(V.basis(1), 1, 5) == 1
    rng = random.Random(4)
    for _ in range(10):
        x = rand_vec(rng, 8)
        assert An_seminorm(x, 2, 1) == schreier_norm(x, 2).value


def test_dual_examples():
    assert dual_norm(ones(1, 3), 1).value == 2
    assert dual_norm(V.basis(4), 2).value == 1
    for E in enumerate_maximal(2, 9):
        if E.max < 9:
            assert dual_norm(V.indicator(E), 2).value == 1


@pytest.mark.parametrize("xi", [1, 2])
def test_dual_against_vertex_enumeration(xi):
    rng = random.Random(5)
    for _ in range(15):
        k = rng.randint(1, 6)
        idx = sorted(rng.sample(range(1, 13), k))
        xs = V({i: Q(rng.randint(-5, 5), rng.randint(1, 3)) for i in idx})
        cert = dual_norm(xs, xi)
        assert cert.value == dual_norm_oracle(xs, xi)
        # the returned point is feasible and attains the value
        assert cert.point.dot(xs) == cert.value
        assert schreier_norm(cert.point, xi).value <= 1


def test_duality_pairing_bound():
    rng = random.Random(6)
    for _ in range(10):
        xs, x = rand_vec(rng, 6), rand_vec(rng, 6)
        if x.l1():
            assert abs(xs.dot(x)) <= dual_norm(xs, 1).value * schreier_norm(x, 1).value


def test_spreading_model_checks():
    X = [V.basis(i) for i in range(1, 9)]
    assert ell1_sm_check(X, 1, 1, 1)["passed"]
    assert c0_sm_check(X, 1, 1, 1)["passed"]
    assert check_domination(X[:3], X[:3], 1, 1, 1)["worst_ratio"] == 1


def test_right_dominance():
    K = [V.basis(i) for i in (1, 2, 4)]
    L = [V.basis(i) for i in (2, 5, 9)]
    assert check_domination(K, L, 1, 1, 1)["passed"]


def test_split_by_size():
    x = V({1: Q(1, 2), 2: Q(1, 8)})
    assert split_by_size(x, 0) == (x, V({}))
    assert split_by_size(x, 1) == (V({}), x)
    assert split_by_size(x, Q(1, 4)) == (V({1: Q(1, 2)}), V({2: Q(1, 8)}))


def test_strip_large_part():
    x, rep = strip_large_part(ones(4, 63), 0, 1, Q(1, 2), cap=200)
    assert rep["passed"]
    assert schreier_norm(x, 0, cap=200).value < Q(1, 2)
    with pytest.raises(DomainError):
        strip_large_part(V.basis(3), 0, 1, Q(1, 2))
