"""Exact Schreier norms, A_n[S_xi] seminorms and dual norms.

The primal norm is a dynamic program over (position in the support,
automaton state of the chosen set); see :func:`schreier.families.step`.
The dual norm is the packing linear program

    max sum |x*_i| t_i   s.t.  sum_{i in E} t_i <= 1  (E in S_xi),  t >= 0,

solved exactly with lazily generated constraints: the separation oracle
is the primal norm itself.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .caps import DEFAULT_CAPS, DomainError, ResourceCapError
from .families import (EMPTY_STATE, block_end, contained_from, is_member,
                       member_oracle, step, step_an)
from .lp import PackingLP
from .ordinal import ONE, ordinal
from .sets import FiniteSet
from .vectors import RationalVector, as_fraction

__all__ = [
    "NormCertificate", "schreier_norm", "An_seminorm", "norm_oracle",
    "dual_norm", "dual_norm_oracle", "check_domination", "ell1_sm_check",
    "c0_sm_check", "split_by_size", "strip_large_part", "flat_threshold",
]


@dataclass
class NormCertificate:
    value: Fraction
    witness: FiniteSet | None = None
    point: RationalVector | None = None
    tight: list = field(default_factory=list)

    def to_json(self):
        out = {"value": f"{self.value.numerator}/{self.value.denominator}"}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.point is not None:
            out["point"] = self.point.to_json()["entries"]
        if self.tight:
            out["tight"] = [E.to_json() for E in self.tight]
        return out


def _check_support(x, cap):
    cap = DEFAULT_CAPS.support if cap is None else cap
    if len(x) > cap:
        raise ResourceCapError(f"support of size {len(x)} exceeds cap {cap}")


def _saturated(xi, state, top):
    """True when every subset of [min, top] with the state's minimum is a member."""
    return bool(state) and state != 1 and top <= block_end(xi, state[0], top)


class _Graph:
    """The family automaton unrolled over a fixed support.

    Nodes are (position, state) pairs reachable from the given roots; a
    node's value is the best mass of a continuation from that position.
    Saturated nodes (every later element may be added) are leaves.  The
    graph depends only on the support, so one graph serves any number of
    weight vectors.
    """

    END, NONE = -1, -2

    def __init__(self, idx, advance, sat_xi, roots):
        self.idx = idx
        k = len(idx)
        top = idx[-1] if idx else 0
        ids = {}
        keys = []
        stack = [r for r in roots if r[0] < k]
        while stack:
            key = stack.pop()
            if key in ids:
                continue
            ids[key] = len(keys)
            keys.append(key)
            p, st = key
            if sat_xi is not None and _saturated(sat_xi, st, top):
                continue
            if p + 1 < k:
                stack.append((p + 1, st))
                nxt = advance(st, idx[p])
                if nxt is not None:
                    stack.append((p + 1, nxt))
        self.ids = ids
        self.pos = [p for p, _ in keys]
        self.sat, self.skip, self.take = [], [], []
        for p, st in keys:
            is_sat = sat_xi is not None and _saturated(sat_xi, st, top)
            self.sat.append(is_sat)
            if is_sat:
                self.skip.append(self.END)
                self.take.append(self.END)
                continue
            self.skip.append(ids[(p + 1, st)] if p + 1 < k else self.END)
            nxt = advance(st, idx[p])
            if nxt is None:
                self.take.append(self.NONE)
            else:
                self.take.append(ids[(p + 1, nxt)] if p + 1 < k else self.END)
        self.order = sorted(range(len(keys)), key=lambda i: -self.pos[i])
        self.starts = []
        for p, v in enumerate(idx):
            nxt = advance(EMPTY_STATE, v)
            self.starts.append(ids[(p + 1, nxt)] if p + 1 < k else self.END)

    def evaluate(self, w, zero):
        k = len(self.idx)
        suffix = [zero] * (k + 1)
        for p in range(k - 1, -1, -1):
            suffix[p] = suffix[p + 1] + w[p]
        val = [zero] * len(self.pos)
        pos, sat, skip, take = self.pos, self.sat, self.skip, self.take
        for i in self.order:
            p = pos[i]
            if sat[i]:
                val[i] = suffix[p]
                continue
            j = skip[i]
            best = val[j] if j >= 0 else zero
            j = take[i]
            if j != self.NONE:
                cand = w[p] + (val[j] if j >= 0 else zero)
                if cand > best:
                    best = cand
            val[i] = best
        return val

    def root(self, val, zero):
        i = self.ids.get((0, EMPTY_STATE))
        return zero if i is None else val[i]

    def by_min(self, val, w, zero):
        """Best mass of a set with minimum idx[p], for every p."""
        return [w[p] + (val[j] if j >= 0 else zero) for p, j in enumerate(self.starts)]

    def witness(self, val, w, node, first=(), tol=0):
        """Follow optimal choices from ``node`` (an id, or END)."""
        chosen = list(first)
        while node >= 0:
            p = self.pos[node]
            if self.sat[node]:
                chosen.extend(self.idx[p:])
                break
            j = self.take[node]
            if j != self.NONE:
                cand = w[p] + (val[j] if j >= 0 else 0)
                if cand >= val[node] - tol:
                    chosen.append(self.idx[p])
                    node = j
                    continue
            node = self.skip[node]
        return FiniteSet(chosen)


def _max_mass(idx, w, advance, xi_for_sat):
    g = _Graph(idx, advance, xi_for_sat, [(0, EMPTY_STATE)])
    zero = Fraction(0)
    val = g.evaluate(w, zero)
    i = g.ids.get((0, EMPTY_STATE))
    if i is None:
        return zero, FiniteSet()
    return val[i], g.witness(val, w, i)


def _level_one_mass(idx, w):
    # S_1 sets with minimum v hold v and at most v - 1 later elements, so
    # scan v downwards keeping the v - 1 largest later weights in a heap
    top, rest, total = [], [], Fraction(0)
    best, best_v = Fraction(0), None
    for p in range(len(idx) - 1, -1, -1):
        v = idx[p]
        while len(top) > v - 1:
            c = heapq.heappop(top)
            total -= c
            heapq.heappush(rest, -c)
        while rest and len(top) < v - 1:
            c = -heapq.heappop(rest)
            heapq.heappush(top, c)
            total += c
        if w[p] + total > best:
            best, best_v = w[p] + total, p
        heapq.heappush(top, w[p])
        total += w[p]
        if rest and -rest[0] > top[0]:
            a, b = heapq.heappop(top), -heapq.heappop(rest)
            heapq.heappush(top, b)
            heapq.heappush(rest, -a)
            total += b - a
    if best_v is None:
        return best, FiniteSet()
    v = idx[best_v]
    later = sorted(range(best_v + 1, len(idx)), key=lambda q: -w[q])[:v - 1]
    return best, FiniteSet([v] + [idx[q] for q in later])


def schreier_norm(x, xi, cap=None) -> NormCertificate:
    """||x||_xi = max over E in S_xi of sum_{i in E} |x_i|, with a norming E."""
    x, xi = _vec(x), ordinal(xi)
    _check_support(x, cap)
    idx = x.support
    w = [abs(x[i]) for i in idx]
    if xi == ONE:
        return NormCertificate(*_level_one_mass(idx, w))
    value, E = _max_mass(idx, w, lambda s, v: step(xi, s, v), xi)
    return NormCertificate(value, E)


def An_seminorm(x, xi, n, cap=None, certificate=False):
    """max over E in A_n[S_xi] of sum_{i in E} |x_i|."""
    x, xi = _vec(x), ordinal(xi)
    if n < 1:
        raise DomainError("n must be positive")
    _check_support(x, cap)
    idx = x.support
    w = [abs(x[i]) for i in idx]
    value, E = _max_mass(idx, w, lambda s, v: step_an(xi, n, s, v), None)
    return NormCertificate(value, E) if certificate else value


def norm_oracle(x, xi, cap=None):
    """Exhaustive maximum over all subsets of the support (definition-level membership)."""
    x, xi = _vec(x), ordinal(xi)
    cap = DEFAULT_CAPS.brute_force if cap is None else cap
    if len(x) > cap:
        raise ResourceCapError(f"brute force over {len(x)} coordinates exceeds cap {cap}")
    idx = x.support
    best = Fraction(0)
    for r in range(1, len(idx) + 1):
        for E in combinations(idx, r):
            if member_oracle(E, xi):
                best = max(best, sum(abs(x[i]) for i in E))
    return best


# ---------------------------------------------------------------- dual norm


def _runs_ok(xi, state, rest):
    for v in rest:
        state = step(xi, state, v)
        if state is None:
            return False
    return True


def _grow(E, pool, xi):
    """Enlarge E inside pool while it stays in S_xi, scanning pool in increasing order."""
    must = sorted(E)
    top = pool[-1] if pool else 0
    state, chosen, j = EMPTY_STATE, [], 0
    for v in pool:
        if state != EMPTY_STATE and _saturated(xi, state, top):
            chosen.extend(u for u in pool if u >= v)
            return FiniteSet(chosen)
        while j < len(must) and must[j] < v:
            # an element of E outside the pool
            state = step(xi, state, must[j])
            chosen.append(must[j])
            j += 1
        if j < len(must) and must[j] == v:
            state = step(xi, state, v)
            chosen.append(v)
            j += 1
            continue
        nxt = step(xi, state, v)
        if nxt is not None and _runs_ok(xi, nxt, must[j:]):
            state = nxt
            chosen.append(v)
    chosen.extend(must[j:])
    return FiniteSet(chosen)


_CUTS = 16
_FLOAT_ROUNDS = 400


@lru_cache(maxsize=64)
def _dual_graph(idx: tuple, xi):
    roots = [(p + 1, step(xi, EMPTY_STATE, v)) for p, v in enumerate(idx)]
    return _Graph(list(idx), lambda st, v: step(xi, st, v), xi, roots)


def _cuts(g, t, threshold, xi, tol):
    """Up to _CUTS sets of largest t-mass above threshold, each grown to be maximal in the support."""
    zero = 0.0 if tol else Fraction(0)
    val = g.evaluate(t, zero)
    bm = g.by_min(val, t, zero)
    worst = sorted((p for p in range(len(bm)) if bm[p] > threshold), key=lambda p: -bm[p])
    out = []
    for p in worst[:_CUTS]:
        E = g.witness(val, t, g.starts[p], [g.idx[p]], tol)
        out.append(_grow(E, g.idx, xi))
    return out, bool(worst)


def _float_rows(c, idx, g, xi, rows):
    """Grow the working set of constraints with a floating-point LP; exactness comes later."""
    import numpy as np
    from scipy.optimize import linprog
    col = {v: j for j, v in enumerate(idx)}
    cf = -np.array([float(v) for v in c])
    seen = set(rows)
    for _ in range(_FLOAT_ROUNDS):
        A = np.zeros((len(rows), len(idx)))
        for r, E in enumerate(rows):
            for v in E:
                A[r, col[v]] = 1.0
        res = linprog(cf, A_ub=A, b_ub=np.ones(len(rows)), bounds=(0, None), method="highs")
        if res.status != 0:
            return None, None
        t = [float(v) for v in res.x]
        new, _ = _cuts(g, t, 1 + 1e-9, xi, 1e-12)
        new = [E for E in new if E not in seen]
        if not new:
            break
        seen.update(new)
        rows.extend(new)
    slack = res.slack
    duals = res.ineqlin.marginals
    keep = [E for E, sl, y in zip(rows, slack, duals) if sl < 1e-7 or abs(y) > 1e-12]
    basis = ([j for j, v in enumerate(res.x) if v > 1e-9],
             [E for E, sl in zip(rows, slack) if sl < 1e-9],
             [E for E, y in zip(rows, duals) if abs(y) > 1e-9])
    return keep, basis


def _unique_solution(M, rhs):
    """The unique solution of a consistent linear system, or None."""
    n = len(M[0]) if M else 0
    a = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(M, rhs)]
    r, where = 0, []
    for col in range(n):
        piv = next((i for i in range(r, len(a)) if a[i][col]), None)
        if piv is None:
            return None
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [u - f * w for u, w in zip(a[i], a[r])]
        where.append(r)
        r += 1
    if any(row[n] for row in a[r:]):
        return None
    return [a[i][n] for i in where]


def _rounded_optimum(c, idx, g, xi, basis):
    """Recover the vertex found by the float LP exactly and check optimality exactly.

    Returns (value, t, tight) or None when the guess does not certify.
    """
    cols, tight_rows, dual_rows = basis
    if not cols or not dual_rows:
        return None
    M = [[1 if idx[j] in E else 0 for j in cols] for E in tight_rows]
    tc = _unique_solution(M, [1] * len(M))
    if tc is None or any(v < 0 for v in tc):
        return None
    MT = [[1 if idx[j] in E else 0 for E in dual_rows] for j in cols]
    y = _unique_solution(MT, [c[j] for j in cols])
    if y is None or any(v < 0 for v in y):
        return None
    for j, v in enumerate(idx):
        if sum(yv for yv, E in zip(y, dual_rows) if v in E) < c[j]:
            return None
    t = [Fraction(0)] * len(idx)
    for j, v in zip(cols, tc):
        t[j] = v
    # primal feasibility against every S_xi set in the support
    zero = Fraction(0)
    val = g.evaluate(t, zero)
    if any(m > 1 for m in g.by_min(val, t, zero)):
        return None
    value = sum(c[j] * t[j] for j in cols)
    if value != sum(y):
        return None
    return value, t, [E for E, yv in zip(dual_rows, y) if yv > 0]


def dual_norm(xstar, xi, cap=None) -> NormCertificate:
    """sup |x*(x)| over the unit ball of X_xi, with the optimal point and tight sets.

    The constraint sets are found by a floating-point cutting-plane loop;
    the value is then computed by the exact simplex over those sets and
    certified by exact separation (no S_xi set has mass above 1 at the
    optimal point), adding cuts until the certificate holds.
    """
    xs, xi = _vec(xstar), ordinal(xi)
    _check_support(xs, cap)
    idx = xs.support
    if not idx:
        return NormCertificate(Fraction(0), point=RationalVector())
    c = [abs(xs[i]) for i in idx]
    supp = FiniteSet(idx)
    if is_member(supp, xi):
        # every unit vector has l1 mass <= 1 on supp, so the sup norm is attained at a basis vector
        top = max(range(len(idx)), key=lambda j: c[j])
        i = idx[top]
        point = RationalVector.basis(i, 1 if xs[i] > 0 else -1)
        return NormCertificate(c[top], point=point, tight=[supp])
    g = _dual_graph(tuple(idx), xi)
    singles = [FiniteSet([v]) for v in idx]
    keep, basis = _float_rows(c, idx, g, xi, list(singles))
    if keep is None:
        keep = singles
    else:
        done = _rounded_optimum(c, idx, g, xi, basis)
        if done is not None:
            value, tv, tight = done
            point = RationalVector({i: (v if xs[i] > 0 else -v) for i, v in zip(idx, tv) if v})
            return NormCertificate(value, point=point, tight=tight)
    covered = FiniteSet().union(*keep)
    keep += [E for E in singles if E.min not in covered]
    lp = PackingLP(c)
    order = []

    def add(E):
        order.append(E)
        lp.add_row([1 if v in E else 0 for v in idx])

    for E in keep:
        add(E)
    in_lp = set(order)
    while True:
        res = lp.solve()
        new, violated = _cuts(g, res.t, 1, xi, 0)
        if not violated:
            break
        new = [E for E in new if E not in in_lp]
        if not new:
            raise ArithmeticError("cutting planes stalled")
        in_lp.update(new)
        for E in new:
            add(E)
    t = dict(zip(idx, res.t))
    point = RationalVector({i: (tv if xs[i] > 0 else -tv) for i, tv in t.items()})
    tight = [E for E, y in zip(order, res.y) if y > 0]
    return NormCertificate(res.value, point=point, tight=tight)


def _maximal_in(pool, xi):
    members = [FiniteSet(E) for r in range(1, len(pool) + 1)
               for E in combinations(pool, r) if member_oracle(E, xi)]
    mset = set(members)
    return [E for E in members if not any(E.add(v) in mset for v in pool if v not in E)]


def _solve(M, rhs):
    """Solve an integer system by fraction-free (Bareiss) elimination; None if singular."""
    n = len(M)
    a = [list(row) + [b] for row, b in zip(M, rhs)]
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k]), None)
        if piv is None:
            return None
        a[k], a[piv] = a[piv], a[k]
        for r in range(k + 1, n):
            a[r] = [(a[k][k] * a[r][j] - a[r][k] * a[k][j]) // prev for j in range(n + 1)]
        prev = a[k][k]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = Fraction(a[r][n]) - sum(a[r][j] * x[j] for j in range(r + 1, n))
        x[r] = acc / a[r][r]
    return x


@lru_cache(maxsize=4096)
def _vertices(idx: tuple, xi):
    cons = _maximal_in(idx, xi)
    out = []
    for r in range(1, len(idx) + 1):
        for S in combinations(idx, r):
            rows = {tuple(1 if v in E else 0 for v in S) for E in cons}
            rows.discard((0,) * r)
            for pick in combinations(sorted(rows), r):
                sol = _solve(pick, [1] * r)
                if sol is None or any(v < 0 for v in sol):
                    continue
                t = dict(zip(S, sol))
                if all(sum(t.get(v, 0) for v in E) <= 1 for E in cons):
                    out.append(t)
    return out


def dual_norm_oracle(xstar, xi, cap=6):
    """Dual norm by brute-force vertex enumeration of the constraint polytope.

    Independent of :func:`dual_norm`: membership comes from the recursive
    definition and the constraints are all sets maximal inside the support.
    """
    xs, xi = _vec(xstar), ordinal(xi)
    if len(xs) > cap:
        raise ResourceCapError(f"vertex enumeration over {len(xs)} coordinates exceeds cap {cap}")
    verts = _vertices(tuple(xs.support), xi)
    return max((sum(abs(xs[v]) * tv for v, tv in t.items()) for t in verts),
               default=Fraction(0))


# ---------------------------------------------------------------- checkers


_GRID = sorted({Fraction(k, d) for d in range(1, 5) for k in range(d + 1)})


def _combine(vectors, coeffs):
    out = RationalVector()
    for v, a in zip(vectors, coeffs):
        if a:
            out = out + v * a
    return out


def _coefficient_sample(n, exhaustive, trials, rng):
    if exhaustive and len(_GRID) ** n <= 20000:
        yield from (a for a in product(_GRID, repeat=n) if any(a))
        return
    yield (Fraction(1),) * n
    for _ in range(trials):
        a = tuple(rng.choice(_GRID) for _ in range(n))
        if any(a):
            yield a


def check_domination(A, B, C, xiA, xiB, exhaustive=True, trials=200, seed=0):
    """Search for the worst ratio ||sum a_i A_i||_{xiA} / ||sum a_i B_i||_{xiB} over a >= 0.

    Coefficients run over the grid of fractions with denominator <= 4
    (exhaustive when small, seeded samples otherwise).
    """
    if len(A) != len(B):
        raise DomainError("sequences must have equal length")
    C = as_fraction(C)
    rng = random.Random(seed)
    worst, witness = Fraction(0), None
    for a in _coefficient_sample(len(A), exhaustive, trials, rng):
        top = schreier_norm(_combine(A, a), xiA).value
        bot = schreier_norm(_combine(B, a), xiB).value
        if not bot:
            continue
        r = top / bot
        if r > worst:
            worst, witness = r, a
    return {"worst_ratio": worst, "bound": C, "passed": worst <= C,
            "witness": None if witness is None else [str(v) for v in witness]}


def _index_sets(rho, count, index):
    from .families import enumerate_members
    for F in sorted(enumerate_members(ordinal(rho), max(index), cap=max(index)),
                    key=lambda s: s.runs):
        pos = [index.index(v) for v in F if v in index]
        if F and len(pos) == len(F):
            yield F, pos


def ell1_sm_check(X, rho, xi, C, index=None, trials=8, seed=0, cap=None):
    """Worst constant c with ||sum_{i in E} a_i X_i||_xi >= c sum |a_i| over E in S_rho.

    ``index`` assigns each X_i the integer used for S_rho membership
    (default 1, 2, ...).
    """
    index = list(range(1, len(X) + 1)) if index is None else list(index)
    C = as_fraction(C)
    rng = random.Random(seed)
    worst, witness = None, None
    for F, pos in _index_sets(rho, len(X), index):
        samples = [(Fraction(1),) * len(pos)]
        samples += [tuple(rng.choice(_GRID[1:]) for _ in pos) for _ in range(trials)]
        for a in samples:
            val = schreier_norm(_combine([X[p] for p in pos], a), xi, cap).value / sum(a)
            if worst is None or val < worst:
                worst, witness = val, (F, a)
    return {"worst_constant": worst, "bound": C, "passed": worst is None or worst >= C,
            "witness": None if witness is None else
            {"F": witness[0].to_json(), "a": [str(v) for v in witness[1]]}}


def c0_sm_check(Xstar, rho, xi, C, index=None):
    """Worst value of ||sum_{i in E} X*_i||_xi^* over E in S_rho."""
    index = list(range(1, len(Xstar) + 1)) if index is None else list(index)
    C = as_fraction(C)
    worst, witness = Fraction(0), None
    for F, pos in _index_sets(rho, len(Xstar), index):
        val = dual_norm(_combine([Xstar[p] for p in pos], [1] * len(pos)), xi,
                        cap=10 ** 6).value
        if val > worst:
            worst, witness = val, F
    return {"worst_constant": worst, "bound": C, "passed": worst <= C,
            "witness": None if witness is None else witness.to_json()}


# ---------------------------------------------------------------- splitting


def split_by_size(xstar, eps):
    """(T, R): T keeps the coefficients with |c| > eps, R the rest."""
    xs, eps = _vec(xstar), as_fraction(eps)
    if eps < 0:
        raise DomainError("eps must be nonnegative")
    big = {i: c for i, c in xs.items() if abs(c) > eps}
    small = {i: c for i, c in xs.items() if abs(c) <= eps}
    return RationalVector(big), RationalVector(small)


def flat_threshold(beta, xi, eps, horizon=16):
    """Least l > 1 with l - 1 > 1/eps and S_{beta+1} on [l, oo) inside S_xi (certified to horizon)."""
    beta, xi, eps = ordinal(beta), ordinal(xi), as_fraction(eps)
    if not beta < xi:
        raise DomainError("need beta < xi")
    if not 0 < eps < 1:
        raise DomainError("eps must lie in (0, 1)")
    l = max(2, int(1 / eps) + 2)
    m = contained_from(beta + ONE, xi, horizon)
    if m is None:
        raise ResourceCapError(f"no tail bound for S_{beta + ONE} in S_{xi} up to {horizon}")
    return max(l, m)


def strip_large_part(xstar, beta, xi, eps, cap=None):
    """Return x with x*(x) > 1 - eps and ||x||_beta < eps, following the flat-functional argument.

    x* is first scaled to dual norm 1; it must then have sup norm <= 1/l
    and support in [l, oo).  A norming y is read off the dual LP, l
    disjoint S_beta-optimal pieces of y are removed and the rest is
    renormalized.
    """
    beta, xi, eps = ordinal(beta), ordinal(xi), as_fraction(eps)
    xs = _vec(xstar)
    l = flat_threshold(beta, xi, eps)
    dn = dual_norm(xs, xi, cap)
    if not dn.value:
        raise DomainError("x* is zero")
    xs = xs * (1 / dn.value)
    if xs.linf() > Fraction(1, l):
        raise DomainError(f"sup norm {xs.linf()} exceeds 1/l = 1/{l}")
    if xs.support[0] < l:
        raise DomainError(f"support starts at {xs.support[0]} < l = {l}")
    y = dn.point
    pieces, rest = [], y
    for _ in range(l):
        E = schreier_norm(rest, beta, cap).witness
        if not E:
            break
        pieces.append(E)
        rest = rest.restrict(rest.support_set().difference(E))
    E = FiniteSet().union(*pieces)
    z = y - y.restrict(E)
    zn = schreier_norm(z, xi, cap).value
    if not zn:
        raise DomainError("nothing left after stripping")
    x = z * (1 / zn)
    pairing = xs.dot(x)
    small = schreier_norm(x, beta, cap).value
    report = {"l": l, "scale": str(dn.value), "pieces": [P.to_json() for P in pieces],
              "pairing": str(pairing), "beta_norm": str(small),
              "passed": pairing > 1 - eps and small < eps}
    return x, report


def _vec(x):
    if isinstance(x, RationalVector):
        return x
    if isinstance(x, dict):
        return RationalVector(x)
    return RationalVector(enumerate(x, start=1))
