"""Finitely supported vectors with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction

from .sets import FiniteSet, as_set

__all__ = ["RationalVector", "as_fraction"]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string like '1/3' or a Fraction")
    return Fraction(x)


class RationalVector:
    """Map index -> Fraction with no stored zeros."""

    __slots__ = ("_d", "_support")

    def __init__(self, entries=None):
        d = {}
        items = entries.items() if isinstance(entries, dict) else (entries or ())
        for i, c in items:
            i = int(i)
            if i < 1:
                raise ValueError("indices start at 1")
            c = as_fraction(c)
            if c:
                d[i] = d.get(i, 0) + c
                if not d[i]:
                    del d[i]
        self._d = d
        self._support = None

    @classmethod
    def basis(cls, k, c=1):
        return cls({k: c})

    @classmethod
    def indicator(cls, E, c=1):
        return cls({i: c for i in as_set(E)})

    @property
    def support(self):
        if self._support is None:
            self._support = sorted(self._d)
        return self._support

    def support_set(self):
        return FiniteSet(self._d)

    def __getitem__(self, i):
        return self._d.get(i, Fraction(0))

    def items(self):
        return ((i, self._d[i]) for i in self.support)

    def values(self):
        return [self._d[i] for i in self.support]

    def __len__(self):
        return len(self._d)

    def __bool__(self):
        return bool(self._d)

    def __eq__(self, other):
        if not isinstance(other, RationalVector):
            return NotImplemented
        return self._d == other._d

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    def __add__(self, other):
        out = dict(self._d)
        for i, c in other._d.items():
            out[i] = out.get(i, 0) + c
        return RationalVector(out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, s):
        s = as_fraction(s)
        return RationalVector({i: c * s for i, c in self._d.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __abs__(self):
        return RationalVector({i: abs(c) for i, c in self._d.items()})

    def restrict(self, E):
        E = as_set(E)
        return RationalVector({i: c for i, c in self._d.items() if i in E})

    def dot(self, other):
        small, big = sorted((self._d, other._d), key=len)
        return sum((c * big[i] for i, c in small.items() if i in big), Fraction(0))

    def total(self):
        return sum(self._d.values(), Fraction(0))

    def l1(self):
        return sum((abs(c) for c in self._d.values()), Fraction(0))

    def linf(self):
        return max((abs(c) for c in self._d.values()), default=Fraction(0))

    def min_coefficient(self):
        return min(self._d.values(), default=Fraction(0))

    def to_json(self):
        return {"entries": [[i, _frac_str(c)] for i, c in self.items()]}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, dict):
            data = data["entries"]
        return cls((int(i), Fraction(str(c))) for i, c in data)

    def __repr__(self):
        body = ", ".join(f"{i}: {_frac_str(c)}" for i, c in list(self.items())[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"RationalVector({{{body}{more}}})"


def _frac_str(c):
    return f"{c.numerator}/{c.denominator}"
