"""Finite sets of positive integers stored as sorted runs.

Runs keep huge interval-like sets (the blocks of a dyadic family, say)
cheap to store, while small sets behave like sorted tuples.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from itertools import accumulate

__all__ = ["FiniteSet", "as_set", "EMPTY"]


class FiniteSet:
    """Strictly increasing positive integers, kept as disjoint sorted runs."""

    __slots__ = ("runs", "_starts", "_cum", "_hash")

    def __init__(self, elements=()):
        if isinstance(elements, FiniteSet):
            runs = elements.runs
        else:
            xs = sorted(set(elements))
            if xs and xs[0] < 1:
                raise ValueError("elements must be positive integers")
            runs = []
            for x in xs:
                if runs and runs[-1][1] + 1 == x:
                    runs[-1][1] = x
                else:
                    runs.append([x, x])
            runs = tuple((a, b) for a, b in runs)
        self._set_runs(runs)

    def _set_runs(self, runs):
        self.runs = runs
        self._starts = [a for a, _ in runs]
        self._cum = list(accumulate(b - a + 1 for a, b in runs))
        self._hash = hash(runs)

    @classmethod
    def from_runs(cls, runs):
        merged = []
        for a, b in sorted((int(a), int(b)) for a, b in runs):
            if a > b:
                continue
            if a < 1:
                raise ValueError("elements must be positive integers")
            if merged and a <= merged[-1][1] + 1:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        out = cls.__new__(cls)
        out._set_runs(tuple((a, b) for a, b in merged))
        return out

    @classmethod
    def interval(cls, a, b):
        return cls.from_runs([(a, b)])

    # basic protocol

    def __len__(self):
        return self._cum[-1] if self._cum else 0

    def __bool__(self):
        return bool(self.runs)

    def __iter__(self):
        for a, b in self.runs:
            yield from range(a, b + 1)

    def __eq__(self, other):
        if isinstance(other, FiniteSet):
            return self.runs == other.runs
        if isinstance(other, (tuple, list, set, frozenset, range)):
            return self.runs == FiniteSet(other).runs
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __contains__(self, x):
        i = bisect_right(self._starts, x) - 1
        return i >= 0 and x <= self.runs[i][1]

    def __repr__(self):
        return "FiniteSet(" + self.describe() + ")"

    def describe(self):
        parts = []
        for a, b in self.runs:
            if a == b:
                parts.append(str(a))
            elif b == a + 1:
                parts.append(f"{a},{b}")
            else:
                parts.append(f"{a}..{b}")
        return "{" + ",".join(parts) + "}"

    @property
    def min(self):
        """Least element; infinity for the empty set."""
        return self.runs[0][0] if self.runs else math.inf

    @property
    def max(self):
        """Largest element; 0 for the empty set."""
        return self.runs[-1][1] if self.runs else 0

    def element(self, k):
        """The k-th element, counting from 0."""
        if not 0 <= k < len(self):
            raise IndexError(k)
        i = bisect_right(self._cum, k)
        before = self._cum[i - 1] if i else 0
        return self.runs[i][0] + (k - before)

    def prefix(self, k):
        """The first k elements."""
        if k >= len(self):
            return self
        if k <= 0:
            return EMPTY
        i = bisect_right(self._cum, k - 1)
        before = self._cum[i - 1] if i else 0
        a, _ = self.runs[i]
        return FiniteSet.from_runs(self.runs[:i] + ((a, a + k - before - 1),))

    def drop(self, k):
        """All but the first k elements."""
        if k <= 0:
            return self
        if k >= len(self):
            return EMPTY
        i = bisect_right(self._cum, k - 1)
        before = self._cum[i - 1] if i else 0
        a, b = self.runs[i]
        cut = a + k - before
        rest = self.runs[i + 1:]
        if cut <= b:
            rest = ((cut, b),) + rest
        return FiniteSet.from_runs(rest)

    def count_le(self, x):
        """Number of elements <= x."""
        i = bisect_right(self._starts, x) - 1
        if i < 0:
            return 0
        before = self._cum[i - 1] if i else 0
        a, b = self.runs[i]
        return before + min(b, x) - a + 1

    def add(self, x):
        return FiniteSet.from_runs(self.runs + ((x, x),))

    def union(self, *others):
        runs = list(self.runs)
        for o in others:
            runs.extend(as_set(o).runs)
        return FiniteSet.from_runs(runs)

    def between(self, lo, hi):
        """Elements in [lo, hi]."""
        return FiniteSet.from_runs((max(a, lo), min(b, hi)) for a, b in self.runs)

    def difference(self, other):
        other = as_set(other)
        out = []
        for a, b in self.runs:
            cur = a
            for c, d in other.runs:
                if d < cur or c > b:
                    continue
                if c > cur:
                    out.append((cur, c - 1))
                cur = max(cur, d + 1)
            if cur <= b:
                out.append((cur, b))
        return FiniteSet.from_runs(out)

    def precedes(self, other):
        """E < F: max E < min F (true when either is empty)."""
        return self.max < as_set(other).min

    def tolist(self, limit=1 << 20):
        if len(self) > limit:
            raise OverflowError(f"set of size {len(self)} is too large to list")
        return list(self)

    def to_json(self, limit=4096):
        if len(self) <= limit:
            return list(self)
        return {"runs": [[a, b] for a, b in self.runs]}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, dict):
            return cls.from_runs(data["runs"])
        return cls(data)


EMPTY = FiniteSet()


def as_set(x) -> FiniteSet:
    return x if isinstance(x, FiniteSet) else FiniteSet(x)
