from fractions import Fraction as Q
from itertools import product

from schreier.families import tau
from schreier.norms import schreier_norm
from schreier.operators import (FiniteOperator, IndexMap, branch_union, build_ss_chain,
                                collapse_map, dyadic_conditions, dyadic_family,
                                formal_identity, non_ss_witness, op_norm, ss_witness,
                                witness_report, xi_injectivity_report)
from schreier.ordinal import ordinal
from schreier.sets import FiniteSet
from schreier.vectors import RationalVector as V


def test_formal_identity():
    T = formal_identity(2, 1, 7)
    assert T.apply(V({3: 5})) == V({3: 5})
    assert op_norm(T) == (1, 1)
    assert op_norm(formal_identity(2, 2, 6)) == (1, 1)
    Z = formal_identity(1, 1, 0)
    assert Z.apply(V({1: 1})) == V({})


def test_identity_up_a_level():
    lo, hi = op_norm(formal_identity(1, 2, 7))
    assert lo == hi == 2
    # attained: S_2 norm 6 on {2,3,5,6,7}, S_1 norm 3 on {2,3} or {5,6,7}
    x = V({2: 2, 3: 1, 5: 1, 6: 1, 7: 1})
    assert schreier_norm(x, 2).value == 6 and schreier_norm(x, 1).value == 3


def _brute_norm(T, grid):
    best = Q(0)
    cols = T.cols()
    for a in product(grid, repeat=len(cols)):
        x = V(dict(zip(cols, a)))
        n = schreier_norm(x, T.domain_xi).value
        if n:
            best = max(best, schreier_norm(T.apply(x), T.codomain_xi).value / n)
    return best


def test_op_norm_against_grid_search():
    T = FiniteOperator({(1, 1): 1, (2, 1): 1, (2, 2): Q(1, 2), (3, 3): 2, (2, 3): 1},
                       ordinal(1), ordinal(1))
    lo, hi = op_norm(T)
    assert lo == hi
    assert _brute_norm(T, [0, Q(1, 2), 1]) <= hi


def test_op_norm_signed_brackets():
    T = FiniteOperator({(1, 1): 1, (1, 2): -1, (2, 2): 1, (3, 3): -2}, ordinal(1), ordinal(1))
    lo, hi = op_norm(T)
    assert lo <= hi
    assert _brute_norm(T, [-1, 0, 1]) >= lo


def test_operator_json_and_compose():
    T = FiniteOperator({(1, 2): Q(1, 3), (2, 1): 2}, ordinal(1), ordinal(2))
    U = FiniteOperator.from_json(T.to_json())
    assert U.to_json() == T.to_json()
    TT = T.compose(T)
    assert TT.apply(V({1: 1})) == T.apply(T.apply(V({1: 1})))


def test_ss_witness_direct():
    F, u = ss_witness(1, 0, 0, Q(1, 8))
    assert F == FiniteSet.interval(9, 17)
    rep = witness_report(F, u, 0, Q(1, 8))
    assert rep["passed"] and Q(rep["rho_norm"]) == Q(1, 9)


def test_ss_witness_level_two():
    F, u = ss_witness(2, 1, 1, Q(1, 4))
    rep = witness_report(F, u, 1, Q(1, 4))
    assert rep["passed"] and rep["member"]
    assert Q(rep["mass"]) == 1


def test_non_ss_witness():
    E, cert = non_ss_witness(2, 0)
    assert len(E) == 1 and cert["passed"]
    E, cert = non_ss_witness(2, 1)
    assert cert["passed"] and cert["in_S_rho"]


def test_ss_chain_level_one():
    # eps = 1/8 would put the factor witness on positions 9..17 and need
    # the level-one block [2^16, 2^17 - 1]
    ops, cert = build_ss_chain(1, 4, eps=Q(1, 4))
    assert len(ops) == 1 and cert["passed"]


def test_injectivity():
    ratio, F = xi_injectivity_report(IndexMap.identity(5), 1, 5)
    assert ratio == 1
    ratio, F = xi_injectivity_report(collapse_map([[2, 3, 4, 5, 6, 7]]), 1, 7)
    assert ratio == 2 and F == FiniteSet([2])
    ratio, F = xi_injectivity_report(collapse_map([list(range(8, 1024))]), 1, 1023)
    assert ratio == 7


def test_dyadic_family():
    fam = dyadic_family(1, 3)
    assert fam == [FiniteSet([1]), FiniteSet.interval(2, 7), FiniteSet.interval(8, 1023)]
    taus, recs = dyadic_conditions(fam, 1)
    assert taus == [1, 2, 7] and all(r["passed"] for r in recs)
    assert [tau(F, 1) for F in fam] == taus
    assert dyadic_family(1, 1) == [FiniteSet([1])]


def test_branch_union():
    fam = dyadic_family(1, 3)
    assert branch_union(fam, []) == FiniteSet()
    assert branch_union(fam, [1, 2]) == FiniteSet.interval(1, 7)
    assert branch_union(fam, [2]) == FiniteSet.interval(2, 7)


def test_index_map_json():
    psi = collapse_map([[2, 3], [5, 6, 7]])
    assert IndexMap.from_json(psi.to_json()).to_json() == psi.to_json()
    assert psi.preimage(FiniteSet([2])) == FiniteSet([2, 3])
