"""Schreier families S_xi, the families A_n[S_xi] and S_xi^M.

Every function here depends on the fundamental sequences fixed in
:mod:`schreier.ordinal`; changing those changes the families.

Membership is decided by greedy stripping of maximal initial segments,
with a fast path through :func:`block_end`, the right end of the maximal
interval [e, f] in S_xi.  Independent oracles (definition-level search
and the modified family) exist for testing.
"""

from __future__ import annotations

import sys
from functools import lru_cache

from .caps import DEFAULT_CAPS, DomainError, ResourceCapError
from .ordinal import ONE, Ordinal, fundamental_sequence, left_subtract, ordinal
from .sets import EMPTY, FiniteSet, as_set
from .streams import IndexStream

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

__all__ = [
    "FiniteSet", "IndexStream", "block_end", "is_member", "is_member_An",
    "is_maximal", "tau", "tau_oracle", "member_oracle", "is_member_modified",
    "modified_members", "is_spread", "enumerate_members", "enumerate_maximal",
    "maximal_partition", "tail_bound_empirical", "contained_from",
    "select_union_stream", "select_split_witness", "select_glue_witness",
    "certify_union_stream", "certify_split_witness", "certify_glue_witness",
    "find_split", "EMPTY_STATE", "step", "step_an",
]


def _level(xi, m):
    """xi_m + 1, the family a limit level uses for sets with minimum m."""
    return fundamental_sequence(xi, m) + ONE


# ---------------------------------------------------------------- block ends


def _round_cap(x):
    return 1 << max(int(x), 1).bit_length()


_REACH: dict = {}


def _reach(xi: Ordinal, e: int, cap: int) -> int:
    # exact when the true end is <= cap, otherwise some value > cap; the
    # recursion runs on an explicit stack since its depth grows with xi
    key = (xi, e, cap)
    if key in _REACH:
        return _REACH[key]
    frames = [[xi, e, None, None]]
    ret = None
    while frames:
        f = frames[-1]
        x, e0, k, s = f
        if k is None:
            hit = _REACH.get((x, e0, cap))
            if hit is not None:
                ret = hit
                frames.pop()
                continue
            if x.is_zero():
                v = e0
            elif x == ONE:
                v = 2 * e0 - 1
            elif x.is_successor():
                f[2], f[3] = e0, e0
                frames.append([x.pred(), e0, None, None])
                continue
            else:
                f[2] = -1
                frames.append([_level(x, e0), e0, None, None])
                continue
        elif k == -1:
            v = ret
        else:
            s, k = ret + 1, k - 1
            if k > 0 and s <= cap + 1:
                f[2], f[3] = k, s
                frames.append([x.pred(), s, None, None])
                continue
            v = s - 1
        _REACH[(x, e0, cap)] = v
        ret = v
        frames.pop()
    return ret


def block_end(xi, e, cap=None):
    """Right end of the maximal interval [e, f] belonging to S_xi.

    With ``cap`` the search stops early and any value > cap means "beyond".
    Without it the true value is returned (which may be astronomically slow
    for xi >= 2 and large e).
    """
    xi = ordinal(xi)
    if cap is None:
        return _reach_exact(xi, e)
    return _reach(xi, e, _round_cap(cap))


def _reach_exact(xi, e):
    if xi.is_zero():
        return e
    if xi == ONE:
        return 2 * e - 1
    if xi.is_successor():
        z = xi.pred()
        s = e
        for _ in range(e):
            s = _reach_exact(z, s) + 1
        return s - 1
    return _reach_exact(_level(xi, e), e)


# ---------------------------------------------------------------- membership


@lru_cache(maxsize=1 << 20)
def _member(E: FiniteSet, xi: Ordinal) -> bool:
    if not E:
        return True
    e, top = E.min, E.max
    if top <= _reach(xi, e, _round_cap(top)):
        return True
    if xi.is_zero():
        return False
    if xi.is_successor():
        return _greedy(E, xi.pred(), e) <= e
    return _member(E, _level(xi, e))


def _longest_prefix(A: FiniteSet, z: Ordinal) -> int:
    n = len(A)
    if z.is_zero():
        return min(n, 1)
    if z == ONE:
        return min(n, A.min)
    lo = A.count_le(_reach(z, A.min, _round_cap(A.max)))
    if lo >= n or _member(A, z):
        return n
    hi = n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _member(A.prefix(mid), z):
            lo = mid
        else:
            hi = mid
    return lo


def _greedy(A: FiniteSet, z: Ordinal, limit=None) -> int:
    if z.is_zero():
        return len(A)
    count = 0
    while A:
        A = A.drop(_longest_prefix(A, z))
        count += 1
        if limit is not None and count > limit:
            break
    return count


def greedy_blocks(A, xi):
    """The greedy decomposition of A into successive S_xi sets."""
    A, xi = as_set(A), ordinal(xi)
    out = []
    while A:
        k = _longest_prefix(A, xi)
        out.append(A.prefix(k))
        A = A.drop(k)
    return out


def is_member(E, xi) -> bool:
    """E in S_xi."""
    return _member(as_set(E), ordinal(xi))


def is_member_An(E, xi, n: int) -> bool:
    """E in A_n[S_xi], i.e. a union of at most n successive S_xi sets."""
    E = as_set(E)
    return _greedy(E, ordinal(xi), n) <= n


def tau(A, xi) -> int:
    """Greedy count of successive S_xi sets needed to cover A."""
    return _greedy(as_set(A), ordinal(xi))


def is_maximal(E, xi) -> bool:
    E, xi = as_set(E), ordinal(xi)
    if not _member(E, xi):
        raise DomainError(f"{E.describe()} is not in S_{xi}")
    return bool(E) and not _member(E.add(E.max + 1), xi)


def is_spread(target, source) -> bool:
    t, s = as_set(target), as_set(source)
    return len(t) == len(s) and all(a <= b for a, b in zip(s, t))


# ---------------------------------------------------------------- oracles


@lru_cache(maxsize=1 << 18)
def _oracle_member(E: tuple, xi: Ordinal) -> bool:
    if len(E) <= 1:
        return True
    if xi.is_zero():
        return False
    if xi.is_limit():
        return _oracle_member(E, _level(xi, E[0]))
    return _oracle_tau(E, xi.pred()) <= E[0]


@lru_cache(maxsize=1 << 18)
def _oracle_tau(A: tuple, xi: Ordinal) -> int:
    # exhaustive over every split of A into contiguous pieces
    if not A:
        return 0
    return min(1 + _oracle_tau(A[k:], xi)
               for k in range(1, len(A) + 1) if _oracle_member(A[:k], xi))


def member_oracle(E, xi) -> bool:
    """Membership straight from the recursive definition (no greedy step)."""
    return _oracle_member(tuple(as_set(E)), ordinal(xi))


def tau_oracle(A, xi) -> int:
    """Exact minimum number of successive S_xi pieces covering A."""
    return _oracle_tau(tuple(as_set(A)), ordinal(xi))


# ---------------------------------------------------------------- S^M


_MOD_TABLES: dict = {}
_MOD_SUCC: dict = {}


def _succ_table(fam: bytes, values: tuple) -> bytes:
    n = len(values)
    size = 1 << n
    key = (fam, values)
    if key in _MOD_SUCC:
        return _MOD_SUCC[key]
    big = n + 2
    pieces = [0] * size
    for mask in range(1, size):
        if fam[mask]:
            pieces[mask] = 1
            continue
        low = mask & -mask
        rest = mask ^ low
        best = big
        sub = rest
        while True:
            s = sub | low
            if fam[s]:
                v = pieces[mask ^ s] + 1
                if v < best:
                    best = v
                    if v == 2:
                        break
            if not sub:
                break
            sub = (sub - 1) & rest
        pieces[mask] = best
    out = bytearray(size)
    out[0] = 1
    for mask in range(1, size):
        out[mask] = pieces[mask] <= values[(mask & -mask).bit_length() - 1]
    out = bytes(out)
    _MOD_SUCC[key] = out
    return out


def _mod_table(xi: Ordinal, values: tuple) -> bytes:
    key = (xi, values)
    if key in _MOD_TABLES:
        return _MOD_TABLES[key]
    n = len(values)
    size = 1 << n
    if xi.is_zero():
        out = bytes(1 if mask & (mask - 1) == 0 else 0 for mask in range(size))
    elif xi.is_successor():
        out = _succ_table(_mod_table(xi.pred(), values), values)
    else:
        out = bytearray(size)
        out[0] = 1
        by_min = {}
        for mask in range(1, size):
            i = (mask & -mask).bit_length() - 1
            if i not in by_min:
                by_min[i] = _mod_table(_level(xi, values[i]), values)
            out[mask] = by_min[i][mask]
        out = bytes(out)
    _MOD_TABLES[key] = out
    return out


def modified_members(xi, universe) -> set:
    """All members of S_xi^M inside a small universe, as FiniteSets."""
    values = tuple(as_set(universe))
    table = _mod_table(ordinal(xi), values)
    return {FiniteSet(v for j, v in enumerate(values) if mask >> j & 1)
            for mask in range(len(table)) if table[mask]}


def is_member_modified(E, xi, cap=None, universe=None) -> bool:
    """E in S_xi^M: pieces only pairwise disjoint instead of successive.

    Exhaustive over set partitions (as a subset dynamic program).  When a
    ``universe`` containing E is given, the table for that universe is
    built once and reused.
    """
    cap = DEFAULT_CAPS.modified_family if cap is None else cap
    E, xi = as_set(E), ordinal(xi)
    values = tuple(as_set(universe)) if universe is not None else tuple(E)
    if len(values) > cap:
        raise ResourceCapError(f"modified-family universe of size {len(values)} exceeds cap {cap}")
    pos = {v: j for j, v in enumerate(values)}
    try:
        mask = sum(1 << pos[v] for v in E)
    except KeyError:
        raise DomainError("E is not inside the given universe") from None
    return bool(_mod_table(xi, values)[mask])


# ---------------------------------------------------------------- enumeration


def enumerate_members(xi, N, cap=None):
    """Every member of S_xi contained in [1, N]."""
    cap = DEFAULT_CAPS.horizon if cap is None else cap
    if N > cap:
        raise ResourceCapError(f"N={N} exceeds cap {cap}")
    xi = ordinal(xi)
    out = [EMPTY]
    stack = [EMPTY]
    while stack:
        E = stack.pop()
        for m in range(E.max + 1, N + 1):
            F = E.add(m)
            if _member(F, xi):
                out.append(F)
                stack.append(F)
    return set(out)


def enumerate_maximal(xi, N, cap=None):
    xi = ordinal(xi)
    return {E for E in enumerate_members(xi, N, cap) if E and is_maximal(E, xi)}


def maximal_partition(M, xi, count, cap=None):
    """First ``count`` blocks of the partition of M into successive maximal S_xi sets."""
    cap = DEFAULT_CAPS.block if cap is None else cap
    xi = ordinal(xi)
    if not isinstance(M, IndexStream):
        raise TypeError("M must be an IndexStream")
    blocks = []
    start = 1
    for _ in range(count):
        def seg(k):
            if k > cap:
                raise ResourceCapError(f"maximal S_{xi} block exceeds {cap} elements")
            return FiniteSet(M(j) for j in range(start, start + k))
        k = 1
        while _member(seg(2 * k), xi):
            k *= 2
        lo, hi = k, 2 * k
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if _member(seg(mid), xi):
                lo = mid
            else:
                hi = mid
        blocks.append(seg(lo))
        start += lo
    return blocks


# ---------------------------------------------------------------- containment


def contained_from(beta, xi, horizon=16):
    """A tail bound m with S_beta within [m, horizon] inside S_xi.

    Returns 1 when S_beta is a subset of S_xi outright (xi = beta + k for
    finite k, since each family sits inside its successor); otherwise the
    empirical bound from :func:`tail_bound_empirical`, valid only up to
    ``horizon``.
    """
    beta, xi = ordinal(beta), ordinal(xi)
    if beta <= xi and left_subtract(xi, beta).is_finite():
        return 1
    return tail_bound_empirical(beta, xi, horizon)


@lru_cache(maxsize=None)
def _tail_bound(beta: Ordinal, xi: Ordinal, N: int):
    if beta == xi:
        return 1
    worst = 0
    stack = [EMPTY]
    top = FiniteSet.interval(1, N)
    while stack:
        E = stack.pop()
        if E and _member(E, xi) and _member(E.union(top.between(E.max + 1, N)), xi):
            continue                       # every extension stays inside S_xi
        if E and not _member(E, xi):
            worst = max(worst, E.min)
        for m in range(E.max + 1, N + 1):
            F = E.add(m)
            if F.min > worst and _member(F, beta):
                stack.append(F)
    return worst + 1


def tail_bound_empirical(beta, xi, N):
    """Least m such that every E in S_beta with E inside [m, N] lies in S_xi.

    A certificate up to N only: it says nothing about sets reaching past N.
    Returns None if no m <= N works.
    """
    m = _tail_bound(ordinal(beta), ordinal(xi), int(N))
    return m if m <= N else None


# ---------------------------------------------------------------- selections


def _stream_of(choose):
    return IndexStream.naturals().select(choose)


def _next_in(K, after, at_least):
    """Least element of K greater than ``after`` and at least ``at_least``."""
    i = 1
    while K(i) <= after or K(i) < at_least:
        i += 1
    return K(i)


def select_union_stream(gamma, rho, K=None, blocks=None, n=1, horizon=16):
    """L in [K] with unions of E_{L(j)}, j in F in S_rho, inside S_{gamma+rho}.

    Follows the inductive proof: rho = 1 takes L(i) >= i*n, successors
    reuse the stream of the predecessor, limits diagonalize L(i) = L_i(i)
    over streams L_i chosen for rho_i + 1 inside L_{i-1}.  The blocks only
    enter through the hypothesis i <= min E_i, E_i in A_n[S_gamma]; when
    ``blocks`` (i -> E_i) is given that hypothesis is checked up to
    ``horizon``.  Check the output with :func:`certify_union_stream`.
    """
    gamma, rho = ordinal(gamma), ordinal(rho)
    K = IndexStream.naturals() if K is None else K
    if rho.is_zero():
        raise DomainError("rho must be at least 1")
    if blocks is not None:
        _check_blocks(blocks, gamma, n, horizon)
    if rho == ONE:
        return K.select(lambda i, prev: _next_in(K, prev, i * n))
    if rho.is_successor():
        return select_union_stream(gamma, rho.pred(), K, None, n, horizon)
    mu = gamma + rho

    def first(i, prev):
        target = gamma + fundamental_sequence(rho, i) + ONE
        j = 1
        while True:
            l = K(j)
            if l > prev and target < fundamental_sequence(mu, l) + ONE:
                bound = contained_from(target, fundamental_sequence(mu, l) + ONE, horizon)
                if bound is not None and bound <= l:
                    return l
            j += 1

    chain = [K.select(first)]

    def stage(i):
        while len(chain) <= i:
            k = len(chain)
            chain.append(select_union_stream(
                gamma, fundamental_sequence(rho, k) + ONE, chain[k - 1], None, n, horizon))
        return chain[i]

    return IndexStream(lambda: (stage(i)(i) for i in _count_from(1)))


def _check_blocks(blocks, gamma, n, horizon):
    prev = EMPTY
    for i in range(1, horizon + 1):
        E = as_set(blocks(i))
        if not E or E.min < i:
            raise DomainError(f"block E_{i} must be nonempty with min >= {i}")
        if not prev.precedes(E):
            raise DomainError(f"blocks E_{i - 1}, E_{i} are not successive")
        if not is_member_An(E, gamma, n):
            raise DomainError(f"E_{i} = {E.describe()} is not in A_{n}[S_{gamma}]")
        prev = E


def _count_from(i):
    while True:
        yield i
        i += 1


def certify_union_stream(gamma, rho, L, blocks, horizon):
    """Check every F in S_rho inside [1, horizon]: the union of E_{L(j)} is in S_{gamma+rho}.

    ``blocks`` maps an index i to E_i.  Returns (ok, failing F or None).
    """
    target = ordinal(gamma) + ordinal(rho)
    for F in sorted(enumerate_members(rho, horizon, cap=max(horizon, 1)), key=lambda s: s.runs):
        if not F:
            continue
        U = FiniteSet().union(*(blocks(L(j)) for j in F))
        if not is_member(U, target):
            return False, F
    return True, None


def select_split_witness(gamma, delta, horizon=16):
    """M for which each E in S_{gamma+delta} splits into S_gamma pieces with M(mins) in S_delta."""
    gamma, delta = ordinal(gamma), ordinal(delta)
    if delta.is_zero():
        return IndexStream.naturals()
    if delta.is_successor():
        return select_split_witness(gamma, delta.pred(), horizon)
    mu = gamma + delta

    def pick_I(i, prev):
        need = fundamental_sequence(mu, i) + ONE
        m = prev + 1
        while True:
            have = gamma + fundamental_sequence(delta, m)
            if need <= have:
                bound = contained_from(need, have, horizon)
                if bound is not None and bound <= m:
                    return m
            m += 1

    I = _stream_of(pick_I)
    subs = {}

    def sub(k):
        if k not in subs:
            subs[k] = select_split_witness(gamma, fundamental_sequence(delta, k), horizon)
        return subs[k]

    def pick_M(i, prev):
        return max(prev + 1, 2, I(i), *(sub(k)(i) for k in range(1, i + 1)))

    return _stream_of(pick_M)


def find_split(E, gamma, delta, M):
    """A split of E into successive S_gamma pieces with M(mins) in S_delta, or None."""
    E = tuple(as_set(E))
    gamma, delta = ordinal(gamma), ordinal(delta)

    def search(start, mins):
        if start == len(E):
            return []
        for k in range(len(E) - start, 0, -1):
            piece = E[start:start + k]
            if not is_member(piece, gamma):
                continue
            nxt = mins + (M(piece[0]),)
            if not is_member(nxt, delta):
                continue
            rest = search(start + k, nxt)
            if rest is not None:
                return [FiniteSet(piece)] + rest
        return None

    return search(0, ())


def certify_split_witness(gamma, delta, M, horizon):
    target = ordinal(gamma) + ordinal(delta)
    for E in enumerate_members(target, horizon, cap=max(horizon, 1)):
        if E and find_split(E, gamma, delta, M) is None:
            return False, E
    return True, None


def select_glue_witness(gamma, delta, horizon=16):
    """N such that successive S_gamma sets E_i with min E_i >= N(i), i in F in S_delta, glue into S_{gamma+delta}."""
    gamma, delta = ordinal(gamma), ordinal(delta)
    if delta.is_zero():
        return IndexStream.naturals()
    if delta.is_successor():
        return select_glue_witness(gamma, delta.pred(), horizon)
    mu = gamma + delta

    def pick_I(i, prev):
        have = gamma + fundamental_sequence(delta, i) + ONE
        m = prev + 1
        while True:
            need = fundamental_sequence(mu, m) + ONE
            if have <= need:
                bound = contained_from(have, need, horizon)
                if bound is not None and bound <= m:
                    return m
            m += 1

    I = _stream_of(pick_I)
    subs = {}

    def sub(k):
        if k not in subs:
            subs[k] = select_glue_witness(gamma, fundamental_sequence(delta, k) + ONE, horizon)
        return subs[k]

    def pick_N(i, prev):
        return max(prev + 1, I(i), *(sub(k)(i) for k in range(1, i + 1)))

    return _stream_of(pick_N)


def certify_glue_witness(gamma, delta, N, horizon, block_cap=4096):
    """Glue the tightest admissible blocks (maximal S_gamma intervals) over each F in S_delta."""
    gamma, delta = ordinal(gamma), ordinal(delta)
    target = gamma + delta
    for F in enumerate_members(delta, horizon, cap=max(horizon, 1)):
        if not F:
            continue
        parts, prev = [], 0
        for i in F:
            a = max(N(i), prev + 1)
            b = block_end(gamma, a, block_cap)
            if b > block_cap:
                raise ResourceCapError(f"S_{gamma} block from {a} passes {block_cap}")
            parts.append(FiniteSet.interval(a, b))
            prev = b
        if not is_member(FiniteSet().union(*parts), target):
            return False, F
    return True, None


# ---------------------------------------------------------------- automaton
#
# A prefix-closed walk over S_xi: feeding the elements of E in increasing
# order moves through states; a step returns None when E stops being a
# member.  The state of a successor level records the minimum, the number
# of finished greedy pieces and the state of the open piece, which is all
# that decides the future.


EMPTY_STATE = ()


@lru_cache(maxsize=1 << 20)
def step(xi: Ordinal, state, v: int):
    if xi.is_zero():
        return 1 if state == EMPTY_STATE else None
    if xi.is_successor():
        z = xi.pred()
        if state == EMPTY_STATE:
            return (v, 0, step(z, EMPTY_STATE, v))
        m, c, sub = state
        nxt = step(z, sub, v)
        if nxt is not None:
            return (m, c, nxt)
        if c + 2 <= m:
            return (m, c + 1, step(z, EMPTY_STATE, v))
        return None
    if state == EMPTY_STATE:
        return (v, step(_level(xi, v), EMPTY_STATE, v))
    m, sub = state
    nxt = step(_level(xi, m), sub, v)
    return None if nxt is None else (m, nxt)


@lru_cache(maxsize=1 << 20)
def step_an(xi: Ordinal, n: int, state, v: int):
    """Automaton for A_n[S_xi]."""
    if state == EMPTY_STATE:
        return (0, step(xi, EMPTY_STATE, v))
    c, sub = state
    nxt = step(xi, sub, v)
    if nxt is not None:
        return (c, nxt)
    if c + 2 <= n:
        return (c + 1, step(xi, EMPTY_STATE, v))
    return None


def state_min(state):
    """Minimum recorded in a top-level state of a positive level."""
    return state[0] if isinstance(state, tuple) and state else None
