import random
from fractions import Fraction as Q

import pytest

from schreier.lp import PackingLP, solve_packing
from schreier.sets import FiniteSet
from schreier.streams import IndexStream
from schreier.vectors import RationalVector as V


# sets

def test_set_basics():
    E = FiniteSet([5, 1, 3, 3, 4])
    assert list(E) == [1, 3, 4, 5] and len(E) == 4
    assert E.min == 1 and E.max == 5 and 4 in E and 2 not in E
    assert FiniteSet().max == 0 and not FiniteSet()
    assert FiniteSet.interval(3, 6) == FiniteSet([3, 4, 5, 6])
    assert FiniteSet.from_runs([(5, 7), (1, 2), (3, 4)]) == FiniteSet.interval(1, 7)
    with pytest.raises(ValueError):
        FiniteSet([0, 1])


def test_set_operations():
    A, B = FiniteSet([1, 2, 3]), FiniteSet([3, 7])
    assert A.union(B) == FiniteSet([1, 2, 3, 7])
    assert A.difference(B) == FiniteSet([1, 2])
    assert FiniteSet([1, 2]).precedes(FiniteSet([3])) and not A.precedes(B)
    assert A.element(1) == 2 and A.prefix(2) == FiniteSet([1, 2]) and A.drop(1) == FiniteSet([2, 3])
    assert FiniteSet.interval(1, 100).between(10, 12) == FiniteSet([10, 11, 12])
    assert FiniteSet.from_json(B.to_json()) == B


def test_huge_interval_is_cheap():
    E = FiniteSet.interval(2 ** 40, 2 ** 41 - 1)
    assert len(E) == 2 ** 40 and 2 ** 40 + 5 in E and E.count_le(2 ** 40 + 9) == 10


# streams

def test_streams():
    N = IndexStream.naturals()
    assert N.take(4) == [1, 2, 3, 4] and N(10) == 10
    ev = IndexStream.evens()
    assert ev.take(3) == [2, 4, 6] and ev.first_at_least(7) == 4
    assert ev.image(FiniteSet([1, 3])) == FiniteSet([2, 6])
    assert N.compose(ev).take(3) == [2, 4, 6]
    assert N.minus(FiniteSet([2, 3])).take(3) == [1, 4, 5]
    assert N.tail_from(5).take(2) == [5, 6] and N.drop(2)(1) == 3
    assert IndexStream.arithmetic([1, 4], start=10, step=5).take(4) == [1, 4, 10, 15]
    with pytest.raises(IndexError):
        N(0)


def test_stream_json_and_random_determinism():
    s = IndexStream.arithmetic([2, 3], start=7, step=3)
    assert IndexStream.from_json(s.to_json()).take(6) == s.take(6)
    a = IndexStream.random(random.Random(11)).take(20)
    b = IndexStream.random(random.Random(11)).take(20)
    assert a == b and all(x < y for x, y in zip(a, a[1:]))


# vectors

def test_vector_arithmetic():
    x = V({1: Q(1, 2), 3: -1})
    y = V({1: Q(1, 2), 2: 2})
    assert x + y == V({1: 1, 2: 2, 3: -1})
    assert x - x == V({})
    assert x.l1() == Q(3, 2) and x.linf() == 1 and x.dot(y) == Q(1, 4)
    assert x.restrict(FiniteSet([3])) == V({3: -1})
    assert V.from_json(x.to_json()) == x
    assert V.indicator(FiniteSet([2, 4])) == V({2: 1, 4: 1})


# exact simplex

def test_packing_lp_small():
    r = solve_packing([1, 1], [[1, 1]])
    assert r.value == 1
    r = solve_packing([3, 2], [[1, 1], [1, 0]], [4, 3])
    assert r.value == 11 and r.t == [3, 1]
    # dual certificate: y >= 0, y A >= c and y.b = value
    assert sum(yi * bi for yi, bi in zip(r.y, [4, 3])) == r.value


def test_packing_lp_rows_added_later():
    lp = PackingLP([1, 1, 1])
    lp.add_row([1, 1, 1], 3)
    assert lp.solve().value == 3
    lp.add_row([1, 1, 0], 1)
    lp.add_row([0, 1, 1], 1)
    assert lp.solve().value == 2


def test_packing_lp_against_scipy():
    scipy = pytest.importorskip("scipy.optimize")
    rng = random.Random(9)
    for _ in range(20):
        n, m = rng.randint(2, 6), rng.randint(1, 6)
        A = [[rng.randint(0, 3) for _ in range(n)] for _ in range(m)]
        for j in range(n):
            A[rng.randrange(m)][j] += 1
        c = [rng.randint(0, 5) for _ in range(n)]
        b = [rng.randint(1, 6) for _ in range(m)]
        exact = solve_packing(c, A, b).value
        approx = -scipy.linprog([-v for v in c], A_ub=A, b_ub=b, method="highs").fun
        assert abs(float(exact) - approx) < 1e-7
