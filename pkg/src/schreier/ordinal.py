"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is a tuple of ``(exponent, coefficient)`` pairs with strictly
decreasing exponents, each exponent itself an :class:`Ordinal`.  The empty
tuple is zero.  Text notation::

    expr  := term ('+' term)*
    term  := '0' | NAT | 'w' ['^' atom] ['*' NAT]
    atom  := NAT | 'w' | '(' expr ')'
"""

from __future__ import annotations

import re
from functools import lru_cache, total_ordering

__all__ = [
    "Ordinal", "OrdinalError", "ParseError", "ZERO", "ONE", "OMEGA",
    "parse_ordinal", "ordinal", "add", "compare", "left_subtract",
    "i_set", "r_set", "fundamental_sequence",
]


class OrdinalError(ValueError):
    pass


class ParseError(OrdinalError):
    def __init__(self, msg, text, pos):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


@total_ordering
class Ordinal:
    __slots__ = ("terms", "_hash", "_str")

    def __init__(self, terms=()):
        terms = tuple(terms)
        for i, (e, c) in enumerate(terms):
            if not isinstance(e, Ordinal):
                raise OrdinalError("exponent must be an Ordinal")
            if not isinstance(c, int) or c < 1:
                raise OrdinalError(f"coefficient must be a positive integer, got {c!r}")
            if i and not terms[i - 1][0] > e:
                raise OrdinalError("exponents must strictly decrease")
        self.terms = terms
        self._hash = hash(terms)
        self._str = None

    @classmethod
    def of_int(cls, n: int) -> "Ordinal":
        if n < 0:
            raise OrdinalError("negative ordinal")
        return ZERO if n == 0 else cls(((ZERO, n),))

    @classmethod
    def omega_power(cls, e: "Ordinal", c: int = 1) -> "Ordinal":
        return cls(((e, c),))

    # predicates

    def is_zero(self):
        return not self.terms

    def is_finite(self):
        return not self.terms or self.terms[0][0].is_zero()

    def is_successor(self):
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def is_limit(self):
        return bool(self.terms) and not self.terms[-1][0].is_zero()

    def __int__(self):
        if not self.is_finite():
            raise OrdinalError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def pred(self) -> "Ordinal":
        if not self.is_successor():
            raise OrdinalError(f"{self} is not a successor")
        *head, (e, c) = self.terms
        return Ordinal(head + ([(e, c - 1)] if c > 1 else []))

    def succ(self) -> "Ordinal":
        return self + ONE

    def coefficient_mass(self) -> int:
        return sum(c for _, c in self.terms)

    def depth(self) -> int:
        if not self.terms:
            return 0
        return 1 + max(e.depth() for e, _ in self.terms)

    # order and arithmetic

    def __eq__(self, other):
        if isinstance(other, int):
            other = Ordinal.of_int(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        if isinstance(other, int):
            other = Ordinal.of_int(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) < 0

    def __add__(self, other):
        if isinstance(other, int):
            other = Ordinal.of_int(other)
        return add(self, other)

    def __radd__(self, other):
        return add(Ordinal.of_int(other), self)

    def __getitem__(self, n):
        return fundamental_sequence(self, n)

    def __repr__(self):
        return f"Ordinal({str(self)!r})"

    def __str__(self):
        if self._str is None:
            self._str = _render(self)
        return self._str


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def _render(a: Ordinal) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for e, c in a.terms:
        if e.is_zero():
            parts.append(str(c))
            continue
        if e == ONE:
            s = "w"
        elif e.is_finite() or e == OMEGA:
            s = f"w^{e}"
        else:
            s = f"w^({e})"
        parts.append(s if c == 1 else f"{s}*{c}")
    return "+".join(parts)


@lru_cache(maxsize=None)
def _cmp(a: Ordinal, b: Ordinal) -> int:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        k = _cmp(ea, eb)
        if k:
            return k
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def compare(a: Ordinal, b: Ordinal) -> int:
    """Return -1, 0 or 1."""
    return _cmp(a, b)


@lru_cache(maxsize=None)
def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero():
        return a
    lead = b.terms[0][0]
    head = [t for t in a.terms if t[0] > lead]
    same = [c for e, c in a.terms if e == lead]
    tail = list(b.terms)
    if same:
        tail[0] = (lead, tail[0][1] + same[0])
    return Ordinal(head + tail)


def left_subtract(xi: Ordinal, iota: Ordinal) -> Ordinal:
    """The unique rho with iota + rho = xi."""
    if iota > xi:
        raise OrdinalError(f"{iota} exceeds {xi}")
    for i, (e, c) in enumerate(xi.terms):
        if i == len(iota.terms):
            return Ordinal(xi.terms[i:])
        ei, ci = iota.terms[i]
        if ei == e and ci == c:
            continue
        if ei == e:
            return Ordinal(((e, c - ci),) + xi.terms[i + 1:])
        return Ordinal(xi.terms[i:])
    return ZERO


def _powers(xi: Ordinal):
    for e, c in xi.terms:
        for _ in range(c):
            yield Ordinal.omega_power(e)


def i_set(xi: Ordinal) -> list[Ordinal]:
    """{0} together with the partial sums of the CNF of xi, ascending."""
    out, acc = [ZERO], ZERO
    for p in _powers(xi):
        acc = acc + p
        out.append(acc)
    return out


def r_set(xi: Ordinal) -> list[Ordinal]:
    """{xi - iota : iota in I(xi)}, ascending."""
    return sorted({left_subtract(xi, i) for i in i_set(xi)})


@lru_cache(maxsize=None)
def fundamental_sequence(xi: Ordinal, n: int) -> Ordinal:
    if not xi.is_limit():
        raise OrdinalError(f"{xi} is not a limit ordinal")
    if n < 1:
        raise OrdinalError("fundamental sequences are indexed from 1")
    *head, (e, c) = xi.terms
    gamma = Ordinal(head + ([(e, c - 1)] if c > 1 else []))
    if e.is_successor():
        return gamma + Ordinal.omega_power(e.pred(), n)
    return gamma + Ordinal.omega_power(fundamental_sequence(e, n))


_TOKEN = re.compile(r"\s*(\d+|w|\^|\*|\+|\(|\))")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError("unexpected character", text, pos)
            self.toks.append((m.group(1), m.start(1)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def pos(self):
        return self.toks[self.i][1] if self.i < len(self.toks) else len(self.text)

    def take(self, want=None):
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            raise ParseError(f"expected {want or 'token'}", self.text, self.pos())
        self.i += 1
        return tok

    def nat(self):
        tok = self.peek()
        if tok is None or not tok.isdigit():
            raise ParseError("expected a natural number", self.text, self.pos())
        self.i += 1
        return int(tok)

    def expr(self):
        acc = self.term()
        while self.peek() == "+":
            self.take("+")
            acc = acc + self.term()
        return acc

    def term(self):
        tok = self.peek()
        if tok is not None and tok.isdigit():
            return Ordinal.of_int(self.nat())
        self.take("w")
        e = ONE
        if self.peek() == "^":
            self.take("^")
            e = self.atom()
        c = 1
        if self.peek() == "*":
            self.take("*")
            where = self.pos()
            c = self.nat()
            if c == 0:
                raise ParseError("coefficient 0 is not allowed", self.text, where)
        return Ordinal.omega_power(e, c)

    def atom(self):
        tok = self.peek()
        if tok == "(":
            self.take("(")
            e = self.expr()
            self.take(")")
            return e
        if tok == "w":
            self.take("w")
            return OMEGA
        return Ordinal.of_int(self.nat())


def parse_ordinal(text: str) -> Ordinal:
    p = _Parser(text)
    if not p.toks:
        raise ParseError("empty expression", text, 0)
    out = p.expr()
    if p.peek() is not None:
        raise ParseError("trailing input", text, p.pos())
    return out


def ordinal(x) -> Ordinal:
    """Coerce an int, string or Ordinal."""
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int):
        return Ordinal.of_int(x)
    if isinstance(x, str):
        return parse_ordinal(x)
    raise TypeError(f"cannot make an ordinal from {x!r}")
