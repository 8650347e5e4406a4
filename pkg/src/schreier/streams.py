"""Lazily evaluated infinite subsets of the naturals."""

from __future__ import annotations

import random
import threading
from itertools import count, islice

from .sets import FiniteSet, as_set

__all__ = ["IndexStream", "Peekable"]


class IndexStream:
    """A strictly increasing infinite sequence M(1) < M(2) < ...

    Elements are produced by a generator and memoized; queries are
    1-based like the usual M(i) notation.
    """

    def __init__(self, factory, spec=None):
        self._factory = factory
        self._gen = None
        self._cache = []
        self._lock = threading.Lock()
        self._spec = spec

    # constructors

    @classmethod
    def naturals(cls):
        return cls(lambda: count(1), {"all_naturals": True})

    @classmethod
    def arithmetic(cls, prefix=(), start=None, step=1):
        prefix = list(prefix)
        if any(b <= a for a, b in zip(prefix, prefix[1:])) or (prefix and prefix[0] < 1):
            raise ValueError("prefix must be strictly increasing positive integers")
        if step < 1:
            raise ValueError("step must be positive")
        if start is None:
            start = prefix[-1] + step if prefix else 1
        if prefix and start <= prefix[-1]:
            raise ValueError("tail must start after the prefix")

        def gen():
            yield from prefix
            yield from count(start, step)

        spec = {"prefix": prefix, "tail": {"start": start, "step": step}}
        if not prefix and start == 1 and step == 1:
            spec = {"all_naturals": True}
        return cls(gen, spec)

    @classmethod
    def evens(cls):
        return cls.arithmetic(start=2, step=2)

    @classmethod
    def from_json(cls, data):
        if data.get("all_naturals"):
            return cls.naturals()
        tail = data["tail"]
        return cls.arithmetic(data.get("prefix", []), tail["start"], tail.get("step", 1))

    @classmethod
    def random(cls, rng, density=0.5, start=1):
        """A seeded random stream: each integer kept with the given probability."""
        local = _Replay(rng, density)

        def gen():
            n = start
            while True:
                if local.keep(n):
                    yield n
                n += 1
        return cls(gen)

    # access

    def _fill(self, n):
        with self._lock:
            if self._gen is None:
                self._gen = iter(self._factory())
            while len(self._cache) < n:
                x = next(self._gen)
                if self._cache and x <= self._cache[-1]:
                    raise ValueError("stream is not strictly increasing")
                self._cache.append(x)

    def __call__(self, i):
        if i < 1:
            raise IndexError("streams are indexed from 1")
        self._fill(i)
        return self._cache[i - 1]

    def take(self, n):
        self._fill(n)
        return self._cache[:n]

    def __iter__(self):
        i = 1
        while True:
            yield self(i)
            i += 1

    def upto(self, bound):
        """Elements <= bound, as a list."""
        out = []
        for x in self:
            if x > bound:
                return out
            out.append(x)

    def first_at_least(self, m):
        """Index i of the least element >= m."""
        i = 1
        while self(i) < m:
            i += 1
        return i

    # derived streams

    def compose(self, other):
        """The stream i -> self(other(i)), i.e. M(L)."""
        return IndexStream(lambda: (self(j) for j in other))

    def image(self, E):
        """M(E) for a finite set of indices E."""
        return FiniteSet(self(j) for j in as_set(E))

    def minus(self, *sets):
        removed = FiniteSet().union(*sets)
        return IndexStream(lambda: (x for x in self if x not in removed))

    def tail_from(self, m):
        """Elements >= m."""
        return IndexStream(lambda: (x for x in self if x >= m))

    def drop(self, k):
        return IndexStream(lambda: islice(self, k, None))

    def select(self, choose):
        """Stream defined by choose(i, previous) -> next element (must increase)."""
        def gen():
            prev = 0
            i = 1
            while True:
                prev = choose(i, prev)
                yield prev
                i += 1
        return IndexStream(gen)

    def to_json(self, shown=16):
        if self._spec is not None:
            return dict(self._spec)
        return {"prefix": self.take(shown), "derived": True}

    def __repr__(self):
        head = ", ".join(map(str, self.take(6)))
        return f"IndexStream({head}, ...)"


class _Replay:
    """Deterministic membership coin flips from a seeded generator."""

    def __init__(self, rng, density):
        self.seed = rng.getrandbits(64)
        self.density = density

    def keep(self, n):
        return random.Random(self.seed ^ (n * 0x9E3779B97F4A7C15)).random() < self.density


class Peekable:
    """Iterator wrapper with one element of lookahead."""

    __slots__ = ("_it", "_head", "consumed")

    def __init__(self, iterable):
        self._it = iter(iterable)
        self._head = None
        self.consumed = 0

    def peek(self):
        if self._head is None:
            self._head = next(self._it)
        return self._head

    def next(self):
        x = self.peek()
        self._head = None
        self.consumed += 1
        return x
