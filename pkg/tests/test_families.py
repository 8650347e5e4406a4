import random
from itertools import combinations

import pytest

from schreier.families import (block_end, enumerate_maximal, enumerate_members,
                               greedy_blocks, is_maximal, is_member, is_member_An,
                               is_member_modified, is_spread, maximal_partition,
                               member_oracle, select_union_stream, step,
                               tail_bound_empirical, tau, tau_oracle)
from schreier.sets import FiniteSet
from schreier.streams import IndexStream

S = FiniteSet


@pytest.mark.parametrize("E,xi,want", [
    ([2, 3], 1, True), ([1, 2, 3], 2, False), ([2, 3, 4, 5], "w", True),
    ([], "w^2", True), ([5], 0, True), ([1, 2], 0, False),
    ([1, 2], 1, False), ([3, 4, 5], 1, True), ([3, 4, 5, 6], 1, False),
])
def test_is_member(E, xi, want):
    assert is_member(S(E), xi) is want


@pytest.mark.parametrize("E,xi,n,want", [
    ([1, 2, 3], 1, 2, True), ([], "w", 1, True), ([1, 2, 3, 4, 5], 1, 2, False),
])
def test_is_member_An(E, xi, n, want):
    assert is_member_An(S(E), xi, n) is want


@pytest.mark.parametrize("E,xi,want", [
    ([1], 1, True), ([3, 7], 1, False), ([2, 3, 4, 5, 6, 7], 2, True),
])
def test_is_maximal(E, xi, want):
    assert is_maximal(S(E), xi) is want


def test_maximal_partition():
    N = IndexStream.naturals()
    assert maximal_partition(N, 1, 4) == [S([1]), S([2, 3]), S.interval(4, 7), S.interval(8, 15)]
    assert maximal_partition(N, 0, 3) == [S([1]), S([2]), S([3])]
    tail = IndexStream.arithmetic(start=2, step=1)
    assert maximal_partition(tail, 1, 2) == [S([2, 3]), S.interval(4, 7)]


def test_block_end_matches_partition():
    for xi in [1, 2, "w"]:
        blocks = maximal_partition(IndexStream.naturals(), xi, 2)
        assert block_end(xi, blocks[1].min) == blocks[1].max


@pytest.mark.parametrize("A,xi,want", [
    ([1, 2, 3], 1, 2), (range(1, 6), 1, 3), ([], 2, 0),
])
def test_tau(A, xi, want):
    assert tau(S(A), xi) == want
    assert tau_oracle(S(A), xi) == want


def test_greedy_blocks_cover():
    A = S([1, 2, 3, 5, 8, 9, 10, 11, 12, 20])
    blocks = greedy_blocks(A, 1)
    assert S([]).union(*blocks) == A
    assert all(is_member(B, 1) for B in blocks)
    assert len(blocks) == tau(A, 1)


def test_modified_family():
    assert is_member_modified(S([2, 3, 4, 5]), 2)
    assert not is_member_modified(S([1, 2]), 1)
    for E in enumerate_members(2, 8):
        assert is_member_modified(E, 2)


def test_is_spread():
    assert is_spread(S([2, 5]), S([1, 3]))
    assert not is_spread(S([1, 3]), S([2, 5]))
    assert is_spread(S([]), S([]))


def test_enumerate():
    assert enumerate_members(1, 3) == {S([]), S([1]), S([2]), S([3]), S([2, 3])}
    assert enumerate_members(0, 2) == {S([]), S([1]), S([2])}
    assert enumerate_maximal(1, 3) == {S([1]), S([2, 3])}


@pytest.mark.parametrize("xi", [0, 1, 2, 3, "w", "w+1"])
def test_membership_against_oracle(xi):
    for r in range(0, 6):
        for E in combinations(range(1, 10), r):
            assert is_member(S(E), xi) == member_oracle(S(E), xi), E


@pytest.mark.parametrize("xi", [1, 2, "w"])
def test_hereditary_and_spreading(xi):
    rng = random.Random(7)
    members = sorted(enumerate_members(xi, 10), key=list)
    for E in rng.sample(members, 60):
        for k in range(len(E)):
            assert is_member(S(list(E)[:k] + list(E)[k + 1:]), xi)
        shifted = S(e + rng.randrange(0, 3) + i for i, e in enumerate(E))
        assert is_member(shifted, xi)


def test_tau_bound_on_members():
    # tau_xi(E) <= min E characterizes S_(xi+1)
    for E in enumerate_members(2, 10):
        if E:
            assert tau(E, 1) <= E.min


def test_step_automaton_agrees():
    from schreier.families import EMPTY_STATE
    from schreier.ordinal import ordinal
    for xi in [1, 2, "w"]:
        xi = ordinal(xi)
        for r in range(1, 6):
            for E in combinations(range(1, 9), r):
                state = EMPTY_STATE
                for v in E:
                    state = step(xi, state, v) if state is not None else None
                assert (state is not None) == is_member(S(E), xi), (xi, E)


def test_tail_bound_empirical():
    assert tail_bound_empirical(2, 2, 20) == 1
    # S_1 sits inside S_2, so no tail is needed
    assert tail_bound_empirical(1, 2, 20) == 1
    assert tail_bound_empirical(2, "w", 16) == 1


def test_select_union_stream_identity():
    L = select_union_stream(1, 1, n=1, horizon=8)
    assert L.take(6) == [1, 2, 3, 4, 5, 6]
