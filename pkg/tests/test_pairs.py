from fractions import Fraction as Q

import pytest

from schreier.caps import DomainError
from schreier.ordinal import ordinal
from schreier.pairs import (SchreierPair, beta_profile, build_pair, convex_block_descend,
                            pair_projection_check, pair_projection_norm, verify_pair)
from schreier.vectors import RationalVector as V


@pytest.fixture(scope="module")
def pair21():
    return build_pair(2, 1, count=4)


def test_degenerate_pair_uses_basis_vectors():
    p = build_pair(1, 0, count=4)
    assert p.X == [V.basis(i) for i in range(1, 5)] == p.Xstar
    assert verify_pair(p)["passed"]


def test_level_one_pair_is_c0_like():
    p = build_pair(1, 1, count=4)
    assert p.rho == ordinal(0)
    cert = verify_pair(p)
    assert cert["passed"] and cert["c0_sums"]["max"] == "1"


def test_pair_21(pair21):
    assert pair21.rho == ordinal(1)
    cert = verify_pair(pair21)
    assert cert["passed"]
    assert cert["iii"]["min"] == "1"
    assert Q(cert["vi"]["max"]) <= 3
    for x, xs in zip(pair21.X, pair21.Xstar):
        assert x.support_set() == xs.support_set()


def test_json_roundtrip(pair21):
    q = SchreierPair.from_json(pair21.to_json())
    assert q.to_json() == pair21.to_json()


def test_corrupted_pair_is_rejected(pair21):
    bad = SchreierPair.from_json(pair21.to_json())
    bad.Xstar[0], bad.Xstar[1] = bad.Xstar[1], bad.Xstar[0]
    cert = verify_pair(bad)
    assert not cert["passed"]
    assert [1, 2] in cert["i"]["failures"]


def test_projection_norms(pair21):
    assert pair_projection_norm(pair21, 0) == 0
    assert pair_projection_norm(pair21, 1) == 1
    check = pair_projection_check(pair21, 3)
    assert check["idempotent"]
    with pytest.raises(DomainError):
        pair_projection_norm(pair21, 9)


def test_convex_block_descend(pair21):
    same = convex_block_descend(pair21, pair21.rho, 3)
    assert same.to_json() == pair21.to_json()
    p = convex_block_descend(build_pair(2, 1, count=6), 0, 2)
    assert p.rho == ordinal(0)
    assert verify_pair(p)["passed"]


def test_beta_profile_basis():
    prof = beta_profile([V.basis(i) for i in range(1, 5)], 1)
    assert prof["iota_estimate"] == "0"
    assert prof["norms"]["0"] == ["1"] * 4
