import pytest

from schreier.ordinal import (ONE, OrdinalError, add, compare, fundamental_sequence,
                              i_set, left_subtract, ordinal, r_set)


def strs(xs):
    return [str(x) for x in xs]


@pytest.mark.parametrize("text,want", [
    ("w^2*3+w+4", "w^2*3+w+4"),
    ("1+w", "w"),
    ("w^(w)", "w^w"),
    ("0", "0"),
    ("w*2+w", "w*3"),
])
def test_parse_and_render(text, want):
    assert str(ordinal(text)) == want
    assert ordinal(str(ordinal(text))) == ordinal(text)


@pytest.mark.parametrize("bad", ["", "w+-", "x", "w^", "(w", "-1"])
def test_parse_errors(bad):
    with pytest.raises(OrdinalError):
        ordinal(bad)


def test_add():
    w = ordinal("w")
    assert add(add(w, ONE), w) == ordinal("w*2")
    assert add(ordinal("w^2"), w) == ordinal("w^2+w")
    assert add(ordinal(3), ordinal("w^2")) == ordinal("w^2")


def test_compare_and_hash():
    assert compare(ordinal("w"), ordinal(5)) == 1
    assert compare(ordinal(5), ordinal("w")) == -1
    assert compare(ordinal("w^2"), ordinal("w^2")) == 0
    assert hash(ordinal("1+w")) == hash(ordinal("w"))
    assert sorted([ordinal("w"), ordinal(3), ordinal("w^w"), ordinal("w^2+1")]) == \
        [ordinal(3), ordinal("w"), ordinal("w^2+1"), ordinal("w^w")]


def test_left_subtract():
    assert left_subtract(ordinal("w^2+w+1"), ordinal("w^2")) == ordinal("w+1")
    assert left_subtract(ordinal("w*5"), ordinal(0)) == ordinal("w*5")
    assert left_subtract(ordinal("w*2"), ordinal("w")) == ordinal("w")
    with pytest.raises(Exception):
        left_subtract(ordinal("w"), ordinal("w^2"))


def test_prefix_and_suffix_sets():
    xi = ordinal("w^2+w+1")
    assert strs(i_set(xi)) == ["0", "w^2", "w^2+w", "w^2+w+1"]
    assert strs(r_set(xi)) == ["0", "1", "w+1", "w^2+w+1"]
    assert strs(r_set(ordinal(0))) == ["0"]


@pytest.mark.parametrize("xi,n,want", [
    ("w", 3, "3"), ("w^2", 3, "w*3"), ("w^w", 3, "w^3"),
    ("w*2", 3, "w+3"), ("w^2+w", 2, "w^2+2"),
])
def test_fundamental_sequence(xi, n, want):
    assert fundamental_sequence(ordinal(xi), n) == ordinal(want)


def test_fundamental_sequence_increases():
    for xi in ["w", "w^2", "w^w", "w^3*2+w^2"]:
        terms = [fundamental_sequence(ordinal(xi), n) for n in range(1, 6)]
        assert all(a < b < ordinal(xi) for a, b in zip(terms, terms[1:]))


def test_fundamental_sequence_needs_limit():
    with pytest.raises(Exception):
        fundamental_sequence(ordinal(4), 2)


def test_kinds():
    assert ordinal("w+1").is_successor() and ordinal("w+1").pred() == ordinal("w")
    assert ordinal("w^2").is_limit()
    assert ordinal(0).is_zero() and not ordinal(0).is_limit()
