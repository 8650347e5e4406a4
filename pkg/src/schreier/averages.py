"""Repeated averages S^xi_{M,n} in exact arithmetic.

The n-th average of level xi lives on the n-th block of the partition of
M into successive maximal S_xi sets.  It is produced by walking M once:
level 0 emits the next element, a successor level averages min-many
averages of the level below, and a limit level xi at a block with
minimum m is the level xi_m + 1 average.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from itertools import combinations

from .caps import DEFAULT_CAPS, DomainError, ResourceCapError
from .families import contained_from
from .norms import An_seminorm, schreier_norm
from .ordinal import ONE, fundamental_sequence, ordinal
from .sets import FiniteSet
from .streams import Peekable
from .vectors import RationalVector, as_fraction

__all__ = [
    "repeated_average", "repeated_averages", "average_entries",
    "weak_summing_vector", "verify_weak_summing", "tail_threshold",
    "small_beta_vector", "isometric_c0_select", "level_seminorm",
    "RunVector", "interval_average", "runs_schreier_norm",
]


def _walk(xi, src, w):
    if xi.is_zero():
        yield src.next(), w
    elif xi.is_successor():
        m = src.peek()
        z = xi.pred()
        share = w / m
        for _ in range(m):
            yield from _walk(z, src, share)
    else:
        yield from _walk(fundamental_sequence(xi, src.peek()) + ONE, src, w)


def average_entries(xi, M):
    """Yield (n, index, coefficient) for S^xi_{M,1}, S^xi_{M,2}, ... in order."""
    xi = ordinal(xi)
    src = Peekable(iter(M))
    n = 0
    while True:
        n += 1
        for i, c in _walk(xi, src, Fraction(1)):
            yield n, i, c


def repeated_averages(xi, M, count, cap=None):
    """The first ``count`` averages S^xi_{M,1..count}."""
    cap = DEFAULT_CAPS.block if cap is None else cap
    out = [{} for _ in range(count)]
    used = 0
    for n, i, c in average_entries(xi, M):
        if n > count:
            break
        used += 1
        if used > cap:
            raise ResourceCapError(f"averages of level {ordinal(xi)} need more than {cap} entries")
        out[n - 1][i] = c
    return [RationalVector(d) for d in out]


def repeated_average(xi, M, n, cap=None) -> RationalVector:
    return repeated_averages(xi, M, n, cap)[n - 1]


def weak_summing_vector(xi, M, horizon):
    """sum_n S^xi_{M,n} restricted to [1, horizon]."""
    entries = {}
    for _, i, c in average_entries(xi, M):
        if i > horizon:
            break
        entries[i] = c
    return RationalVector(entries)


def verify_weak_summing(xi, M, horizon, cap=None) -> Fraction:
    """max over nonempty F in S_xi within M and [1, horizon] of sum_{i in F} sum_n S^xi_{M,n}(i)."""
    cap = DEFAULT_CAPS.horizon if cap is None else cap
    if horizon > cap:
        raise ResourceCapError(f"horizon {horizon} exceeds cap {cap}")
    v = weak_summing_vector(xi, M, horizon)
    return schreier_norm(v, xi, cap=horizon).value


def tail_threshold(beta, xi, eps, horizon=16):
    """n(beta, xi, eps) from the proof: ||S^xi_{M,1}||_beta <= eps whenever n <= M.

    The tail bound that enters is the exact containment when available and
    otherwise the empirical bound certified up to ``horizon``.
    """
    beta, xi, eps = ordinal(beta), ordinal(xi), as_fraction(eps)
    if not beta < xi:
        raise DomainError("need beta < xi")
    if not 0 < eps < 1:
        raise DomainError("eps must lie in (0, 1)")
    floor = int(6 / eps) + 1
    if xi.is_successor():
        m = contained_from(beta, xi.pred(), horizon)
        parts = [m]
    else:
        l = 1
        while not beta < fundamental_sequence(xi, l):
            l += 1
        m = contained_from(beta, fundamental_sequence(xi, l), horizon)
        parts = [l, m]
    if m is None:
        raise ResourceCapError(f"no tail bound for S_{beta} found up to {horizon}")
    return max(floor, *parts)


def small_beta_vector(beta, xi, eps, M, cap=None, tries=4096):
    """(E, x): x = S^xi_{M',1} on a tail M' of M, with ||x||_beta < eps checked exactly.

    M' starts at the least element of M that works, so E is a maximal
    S_xi set.
    """
    beta, xi, eps = ordinal(beta), ordinal(xi), as_fraction(eps)
    if not beta < xi:
        raise DomainError("need beta < xi")
    # an average of m level-beta averages has beta-norm at least 1/m
    floor = int(1 / eps) if xi.is_successor() and xi.pred() <= beta else 0
    for j in range(1, tries + 1):
        if M(j) <= floor:
            continue
        x = repeated_average(xi, M.drop(j - 1), 1, cap)
        if schreier_norm(x, beta, cap=len(x)).value < eps:
            return x.support_set(), x
    raise ResourceCapError(f"no admissible tail among the first {tries} elements of M")


class RunVector:
    """A vector constant on runs: ((lo, hi, value), ...) with lo <= hi, increasing."""

    def __init__(self, runs):
        self.runs = tuple((int(a), int(b), as_fraction(v)) for a, b, v in runs)

    def __len__(self):
        return sum(b - a + 1 for a, b, _ in self.runs)

    def support_set(self):
        return FiniteSet.from_runs([(a, b) for a, b, v in self.runs if v])

    def l1(self):
        return sum((abs(v) * (b - a + 1) for a, b, v in self.runs), Fraction(0))

    def linf(self):
        return max((abs(v) for _, _, v in self.runs), default=Fraction(0))

    def __getitem__(self, i):
        for a, b, v in self.runs:
            if a <= i <= b:
                return v
        return Fraction(0)

    def to_json(self):
        return {"runs": [[a, b, str(v)] for a, b, v in self.runs]}

    def __repr__(self):
        return f"RunVector({len(self.runs)} runs on {len(self)} coordinates)"


def _walk_interval(xi, pos, w, out, limit):
    # the first average of level xi on [pos, oo); returns the next free position
    if len(out) >= limit:
        raise ResourceCapError(f"interval average needs more than {limit} runs")
    if xi.is_zero():
        out.append((pos, pos, w))
        return pos + 1
    if xi == ONE:
        out.append((pos, 2 * pos - 1, w / pos))
        return 2 * pos
    if xi.is_successor():
        m, z = pos, xi.pred()
        share = w / m
        for _ in range(m):
            pos = _walk_interval(z, pos, share, out, limit)
        return pos
    return _walk_interval(fundamental_sequence(xi, pos) + ONE, pos, w, out, limit)


def interval_average(xi, start, max_runs=1 << 16) -> RunVector:
    """S^xi_{M,1} for M = [start, oo), one run per level-1 block."""
    out = []
    _walk_interval(ordinal(xi), start, Fraction(1), out, max_runs)
    return RunVector(out)


def runs_schreier_norm(u: RunVector, beta):
    """||u||_beta for beta <= 1 and u nonnegative and nonincreasing on its support.

    For such u the best S_1 set with minimum s is the window [s, 2s - 1],
    and the window mass is linear in s between breakpoints, so checking the
    breakpoints and their neighbours is exact.
    """
    beta = ordinal(beta)
    runs = [r for r in u.runs if r[2]]
    if any(v < 0 for _, _, v in runs) or any(x[2] < y[2] for x, y in zip(runs, runs[1:])):
        raise DomainError("run norm needs a nonnegative nonincreasing vector")
    if beta.is_zero():
        return u.linf()
    if beta != ONE:
        raise DomainError("run norm is implemented for levels 0 and 1")
    if not runs:
        return Fraction(0)
    starts = [a for a, _, _ in runs]
    cum = [Fraction(0)]
    for a, b, v in runs:
        cum.append(cum[-1] + v * (b - a + 1))

    def prefix(n):
        # mass on coordinates < n
        k = bisect_right(starts, n - 1)
        if k == 0:
            return Fraction(0)
        a, b, v = runs[k - 1]
        return cum[k - 1] + v * (min(n - 1, b) - a + 1)

    hi = runs[-1][1]
    cand = set()
    for a, b, _ in runs:
        for e in (a, b + 1):
            for s in (e, e - 1, (e + 1) // 2, e // 2, (e + 1) // 2 + 1, e // 2 - 1):
                cand.add(s)
    best = Fraction(0)
    for s in cand:
        if 1 <= s <= hi:
            best = max(best, prefix(2 * s) - prefix(s))
    return best


def level_seminorm(x, xi, n):
    """|x|_n: the A_n[S_beta] seminorm if xi = beta + 1, the S_{xi_n + 1} norm if xi is a limit."""
    xi = ordinal(xi)
    if xi.is_successor():
        return An_seminorm(x, xi.pred(), n, cap=len(x))
    return schreier_norm(x, fundamental_sequence(xi, n) + ONE, cap=len(x)).value


def isometric_c0_select(xi, L, count, rule="exact", cap=None, tries=4096, norm_cap=1024):
    """Blocks E_1 < E_2 < ... in L whose averages span c_0 isometrically.

    Each L_i is a tail of L starting after E_{i-1}; E_i is its first maximal
    S_xi block and x_i = S^xi_{L_i,1}.  The start of L_i is the least
    element passing the admissibility test:

    * ``rule="proof"``: |x_i|_{max E_k} < eta / 2^i for every k < i, with
      eta the least coefficient of x_1..x_{i-1};
    * ``rule="exact"``: ||sum_{n in A} x_n||_xi = 1 for every A containing i.

    Returns (M, vectors) with M the union of the blocks.  The exact rule
    refuses sums whose support exceeds ``norm_cap``.
    """
    xi = ordinal(xi)
    limit = DEFAULT_CAPS.horizon if cap is None else cap
    if count > limit:
        raise ResourceCapError(f"count {count} exceeds cap {limit}")
    if rule not in ("exact", "proof"):
        raise DomainError(f"unknown rule {rule!r}")
    if xi.is_zero():
        vecs = [RationalVector.basis(L(i)) for i in range(1, count + 1)]
        return FiniteSet(L(i) for i in range(1, count + 1)), vecs
    vecs, blocks = [], []
    for i in range(1, count + 1):
        after = blocks[-1].max if blocks else 0
        start = L.first_at_least(after + 1)
        for j in range(start, start + tries):
            x = repeated_average(xi, L.drop(j - 1), 1)
            if not blocks or _admissible(x, xi, i, vecs, blocks, rule, norm_cap):
                break
        else:
            raise ResourceCapError(f"no admissible start for block {i} within {tries} tries")
        vecs.append(x)
        blocks.append(x.support_set())
    return FiniteSet().union(*blocks), vecs


def _admissible(x, xi, i, vecs, blocks, rule, norm_cap):
    if rule == "proof":
        eta = min(v.min_coefficient() for v in vecs)
        bound = eta / 2 ** i
        return all(level_seminorm(x, xi, E.max) < bound for E in blocks)
    for r in range(len(vecs) + 1):
        for A in combinations(vecs, r):
            s = x
            for v in A:
                s = s + v
            if len(s) > norm_cap:
                raise ResourceCapError(f"exact check on a support of {len(s)} exceeds cap {norm_cap}")
            if schreier_norm(s, xi, cap=len(s)).value != 1:
                return False
    return True
