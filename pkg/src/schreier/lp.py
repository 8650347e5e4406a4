"""A small exact simplex solver over the rationals.

Solves  max c.t  subject to  A t <= b,  t >= 0  with b >= 0, so the slack
basis is feasible from the start and no phase one is needed.  Rows can be
added after solving (cutting planes); the tableau is then repaired with
dual simplex pivots.  Both phases pivot on the largest violation for a
bounded number of steps and then fall back to Bland's rule, which rules
out cycling.  Arithmetic runs on gmpy2 rationals and results come back as
Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

__all__ = ["LPResult", "PackingLP", "solve_packing", "Unbounded"]


class Unbounded(ArithmeticError):
    pass


@dataclass
class LPResult:
    value: Fraction
    t: list            # optimal primal point
    y: list            # optimal dual multipliers, one per row
    pivots: int


# largest-violation pivots first, Bland's rule once this many are spent
_GREEDY_PIVOTS = 500


class PackingLP:
    def __init__(self, c):
        self.n = len(c)
        self.c = [_q(v) for v in c]
        self.rows = []               # each row spans n structural + one slack per row
        self.rhs = []
        self.basis = []
        self.obj = [-v for v in self.c]
        self.value = mpq(0)
        self.pivots = 0

    @property
    def m(self):
        return len(self.rows)

    def add_row(self, a, b=1):
        b = _q(b)
        if b < 0:
            raise ValueError("right-hand side must be nonnegative")
        zero = mpq(0)
        for row in self.rows:
            row.append(zero)
        self.obj.append(zero)
        row = [_q(v) for v in a] + [zero] * self.m + [mpq(1)]
        rhs = b
        for r, j in enumerate(self.basis):
            f = row[j]
            if f:
                src = self.rows[r]
                for k, v in enumerate(src):
                    if v:
                        row[k] -= f * v
                rhs -= f * self.rhs[r]
        self.rows.append(row)
        self.rhs.append(rhs)
        self.basis.append(self.n + self.m - 1)

    def _pivot(self, leave, enter):
        prow = self.rows[leave]
        piv = prow[enter]
        prow = [v / piv for v in prow]
        prhs = self.rhs[leave] / piv
        self.rows[leave], self.rhs[leave] = prow, prhs
        nz = [j for j, v in enumerate(prow) if v]
        for r, row in enumerate(self.rows):
            f = row[enter]
            if r != leave and f:
                for j in nz:
                    row[j] -= f * prow[j]
                self.rhs[r] -= f * prhs
        f = self.obj[enter]
        if f:
            for j in nz:
                self.obj[j] -= f * prow[j]
            self.value -= f * prhs
        self.basis[leave] = enter
        self.pivots += 1

    def _dual_phase(self):
        budget = _GREEDY_PIVOTS
        while True:
            bad = [r for r in range(self.m) if self.rhs[r] < 0]
            if not bad:
                return
            budget -= 1
            if budget > 0:
                leave = min(bad, key=lambda r: self.rhs[r])
            else:
                leave = min(bad, key=lambda r: self.basis[r])
            row = self.rows[leave]
            enter, best = None, None
            for j, a in enumerate(row):
                if a < 0:
                    ratio = self.obj[j] / -a
                    if best is None or ratio < best:
                        enter, best = j, ratio
            if enter is None:
                raise ArithmeticError("infeasible packing program")
            self._pivot(leave, enter)

    def _primal_phase(self):
        budget = _GREEDY_PIVOTS
        while True:
            neg = [j for j, v in enumerate(self.obj) if v < 0]
            if not neg:
                return
            budget -= 1
            enter = min(neg, key=lambda j: self.obj[j]) if budget > 0 else neg[0]
            leave, best = None, None
            for r in range(self.m):
                a = self.rows[r][enter]
                if a > 0:
                    ratio = self.rhs[r] / a
                    if best is None or ratio < best or (
                            ratio == best and self.basis[r] < self.basis[leave]):
                        leave, best = r, ratio
            if leave is None:
                raise Unbounded("objective is unbounded")
            self._pivot(leave, enter)

    def solve(self) -> LPResult:
        self._dual_phase()
        self._primal_phase()
        t = [Fraction(0)] * self.n
        for r, j in enumerate(self.basis):
            if j < self.n:
                t[j] = _f(self.rhs[r])
        y = [_f(self.obj[self.n + r]) for r in range(self.m)]
        return LPResult(_f(self.value), t, y, self.pivots)


def solve_packing(c, A, b=None) -> LPResult:
    lp = PackingLP(c)
    for r, row in enumerate(A):
        lp.add_row(row, 1 if b is None else b[r])
    return lp.solve()


def _q(v):
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    return mpq(v)


def _f(v):
    return Fraction(int(v.numerator), int(v.denominator))
