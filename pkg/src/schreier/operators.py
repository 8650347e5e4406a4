"""Finite sections of operators between Schreier spaces.

An operator is a finite rational matrix acting from X_xi (columns) to
X_zeta (rows).  Operators that come as sums of rank-one pieces u (x) v,
y -> v(y) u, keep those pieces, which lets the norm computation work with
one coordinate per piece instead of one per column.

Norms of nonnegative operators are exact.  Because the unit ball of the
dual of X_zeta is the closed convex hull of the signed indicators of
S_zeta sets,

    ||T|| = max over E in S_zeta of ||T^t 1_E||_xi^*,

and T^t 1_E only depends on the profile of E: its row sums per piece (or
per column).  The profiles are collected by a Pareto dynamic program over
the rows with the family automaton; each surviving profile costs one dual
norm, and profiles whose cheap upper bound cannot beat the current best
are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .caps import DomainError, ResourceCapError
from .families import (EMPTY_STATE, block_end, enumerate_members, is_member,
                       step, tau)
from .norms import _saturated, dual_norm, schreier_norm
from .ordinal import ONE, ordinal, r_set
from .sets import EMPTY, FiniteSet, as_set
from .vectors import RationalVector, as_fraction

__all__ = [
    "FiniteOperator", "IndexMap", "formal_identity", "op_norm", "ss_witness", "witness_report",
    "non_ss_witness", "build_ss_chain", "xi_injectivity_report",
    "dyadic_family", "dyadic_conditions", "branch_union", "collapse_map",
]


def _frac_str(c):
    return f"{c.numerator}/{c.denominator}"


class FiniteOperator:
    """Matrix {(row, col): value} from X_domain_xi to X_codomain_xi."""

    def __init__(self, matrix=None, domain_xi=0, codomain_xi=0, factors=None):
        self.domain_xi = ordinal(domain_xi)
        self.codomain_xi = ordinal(codomain_xi)
        self.factors = None
        m = {}
        if factors is not None:
            self.factors = [(u, v) for u, v in factors]
            for u, v in self.factors:
                for r, a in u.items():
                    for c, b in v.items():
                        m[(r, c)] = m.get((r, c), 0) + a * b
        for (r, c), a in (matrix or {}).items():
            m[(int(r), int(c))] = m.get((int(r), int(c)), 0) + as_fraction(a)
        self.matrix = {k: Fraction(v) for k, v in m.items() if v}

    @classmethod
    def rank_one_sum(cls, pieces, domain_xi, codomain_xi):
        """sum_k u_k (x) v_k, i.e. y -> sum_k v_k(y) u_k."""
        return cls(domain_xi=domain_xi, codomain_xi=codomain_xi, factors=pieces)

    def rows(self):
        return sorted({r for r, _ in self.matrix})

    def cols(self):
        return sorted({c for _, c in self.matrix})

    def is_nonnegative(self):
        return all(v > 0 for v in self.matrix.values())

    def apply(self, x) -> RationalVector:
        x = x if isinstance(x, RationalVector) else RationalVector(x)
        out = {}
        for (r, c), a in self.matrix.items():
            b = x[c]
            if b:
                out[r] = out.get(r, 0) + a * b
        return RationalVector(out)

    __call__ = apply

    def compose(self, other: "FiniteOperator") -> "FiniteOperator":
        """self o other (apply other first)."""
        if self.factors is not None and other.factors is not None:
            pieces = []
            for u, v in self.factors:
                for u2, v2 in other.factors:
                    s = v.dot(u2)
                    if s:
                        pieces.append((u * s, v2))
            return FiniteOperator(domain_xi=other.domain_xi, codomain_xi=self.codomain_xi,
                                  factors=pieces)
        by_row = {}
        for (r, c), a in other.matrix.items():
            by_row.setdefault(r, []).append((c, a))
        out = {}
        for (r, k), a in self.matrix.items():
            for c, b in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), 0) + a * b
        return FiniteOperator(out, other.domain_xi, self.codomain_xi)

    def __abs__(self):
        if self.factors is not None:
            return FiniteOperator(domain_xi=self.domain_xi, codomain_xi=self.codomain_xi,
                                  factors=[(abs(u), abs(v)) for u, v in self.factors])
        return FiniteOperator({k: abs(v) for k, v in self.matrix.items()},
                              self.domain_xi, self.codomain_xi)

    def to_json(self):
        return {"domain_xi": str(self.domain_xi), "codomain_xi": str(self.codomain_xi),
                "triplets": [[r, c, _frac_str(v)] for (r, c), v in sorted(self.matrix.items())]}

    @classmethod
    def from_json(cls, data):
        m = {(int(r), int(c)): Fraction(str(v)) for r, c, v in data["triplets"]}
        return cls(m, data.get("domain_xi", "0"), data.get("codomain_xi", "0"))

    def __repr__(self):
        return (f"FiniteOperator({len(self.matrix)} entries, "
                f"X_{self.domain_xi} -> X_{self.codomain_xi})")


def formal_identity(xi, zeta, N) -> FiniteOperator:
    """id_{xi,zeta} on span(e_1..e_N)."""
    return FiniteOperator({(i, i): 1 for i in range(1, N + 1)}, xi, zeta)


# ---------------------------------------------------------------- norms


def _pareto(vectors):
    """Keep the componentwise-maximal tuples."""
    vs = sorted(set(vectors), key=lambda v: sum(v), reverse=True)
    keep = []
    for v in vs:
        if not any(all(a >= b for a, b in zip(k, v)) for k in keep):
            keep.append(v)
    return keep


def _profiles(rows, weight, dim, zeta, limit):
    """Pareto-maximal sums of weight(r) over E in S_zeta, E a set of rows."""
    k = len(rows)
    top = rows[-1] if rows else 0
    zero = (Fraction(0),) * dim
    suffix = [zero] * (k + 1)
    for p in range(k - 1, -1, -1):
        suffix[p] = tuple(a + b for a, b in zip(suffix[p + 1], weight[p]))
    memo = {}
    stack = [(0, EMPTY_STATE)]
    while stack:
        p, s = key = stack[-1]
        if key in memo:
            stack.pop()
            continue
        if p == k:
            memo[key] = [zero]
            stack.pop()
            continue
        if _saturated(zeta, s, top):
            memo[key] = [suffix[p]]
            stack.pop()
            continue
        skip = (p + 1, s)
        nxt = step(zeta, s, rows[p])
        take = None if nxt is None else (p + 1, nxt)
        missing = [d for d in (skip, take) if d is not None and d not in memo]
        if missing:
            stack.extend(missing)
            continue
        cands = list(memo[skip])
        if take is not None:
            w = weight[p]
            cands += [tuple(a + b for a, b in zip(v, w)) for v in memo[take]]
        front = _pareto(cands)
        if len(front) > limit:
            raise ResourceCapError(f"more than {limit} Pareto profiles")
        memo[key] = front
        stack.pop()
    return [v for v in memo[(0, EMPTY_STATE)] if any(v)]


def _member_runs(vs, xi):
    """ok[j][k]: the supports of v_j..v_{k-1} together form an S_xi set."""
    n = len(vs)
    supp = [v.support_set() for v in vs]
    ok = [[False] * (n + 1) for _ in range(n + 1)]
    for j in range(n):
        U = FiniteSet()
        for k in range(j + 1, n + 1):
            U = U.union(supp[k - 1])
            ok[j][k] = is_member(U, xi)
            if not ok[j][k]:
                break
    return ok


def _grouped_bound(c, vs, ok, single):
    """Upper bound for ||sum c_k v_k||^*: split into runs whose joint support is in S_xi.

    On such a run the dual norm is the sup norm, and the dual norm is
    subadditive; a piece in no such run costs c_k ||v_k||^*.
    """
    n = len(vs)
    best = [Fraction(0)] + [None] * n
    for k in range(1, n + 1):
        best[k] = best[k - 1] + c[k - 1] * single[k - 1]
        for j in range(k):
            if ok[j][k]:
                part = RationalVector()
                for a, v in zip(c[j:k], vs[j:k]):
                    if a:
                        part = part + v * a
                best[k] = min(best[k], best[j] + part.linf())
    return best[n]


@dataclass
class NormReport:
    lower: Fraction
    upper: Fraction
    profiles: int = 0
    evaluated: int = 0
    point: RationalVector | None = None
    notes: list = field(default_factory=list)

    def to_json(self):
        out = {"lower": _frac_str(self.lower), "upper": _frac_str(self.upper),
               "exact": self.lower == self.upper, "profiles": self.profiles,
               "evaluated": self.evaluated}
        if self.point is not None:
            out["point"] = self.point.to_json()["entries"]
        return out


def _nonnegative_norm(T, cap, limit):
    rows = T.rows()
    if not rows:
        return NormReport(Fraction(0), Fraction(0))
    if len(T.cols()) > cap or len(rows) > cap:
        raise ResourceCapError(f"operator of size {len(rows)}x{len(T.cols())} exceeds cap {cap}")
    if T.factors is not None:
        us = [u for u, _ in T.factors]
        vs = [v for _, v in T.factors]
        weight = [tuple(u[r] for u in us) for r in rows]
        bounds = [dual_norm(v, T.domain_xi, cap).value for v in vs]

        def functional(c):
            out = RationalVector()
            for a, v in zip(c, vs):
                if a:
                    out = out + v * a
            return out

        runs = _member_runs(vs, T.domain_xi)

        def bound(c):
            return min(_grouped_bound(c, vs, runs, bounds), functional(c).l1())
    else:
        cols = T.cols()
        pos = {c: j for j, c in enumerate(cols)}
        weight = []
        for r in rows:
            w = [Fraction(0)] * len(cols)
            for c in cols:
                a = T.matrix.get((r, c))
                if a:
                    w[pos[c]] = a
            weight.append(tuple(w))

        def functional(c):
            return RationalVector({cols[j]: a for j, a in enumerate(c) if a})

        def bound(c):
            return sum(c)
    profiles = _profiles(rows, weight, len(weight[0]), T.codomain_xi, limit)
    order = sorted(profiles, key=bound, reverse=True)
    best, point, evaluated = Fraction(0), None, 0
    for c in order:
        if bound(c) <= best:
            break
        cert = dual_norm(functional(c), T.domain_xi, cap)
        evaluated += 1
        if cert.value > best:
            best, point = cert.value, cert.point
    return NormReport(best, best, len(profiles), evaluated, point)


def op_norm(T: FiniteOperator, cap=256, limit=200000, report=False):
    """(lower, upper) for ||T: X_domain -> X_codomain||.

    Exact (lower == upper) for entrywise nonnegative T.  Otherwise the
    upper value is the exact norm of |T| (the bases are 1-unconditional)
    and the lower value is the best ratio found among basis vectors and
    sign patterns of the |T|-optimal point.
    """
    if T.is_nonnegative():
        rep = _nonnegative_norm(T, cap, limit)
        return rep if report else (rep.lower, rep.upper)
    absrep = _nonnegative_norm(abs(T), cap, limit)
    cands = [RationalVector.basis(c) for c in T.cols()]
    if absrep.point is not None:
        y = abs(absrep.point)
        cands.append(y)
        for r in T.rows():
            signs = {c: (1 if T.matrix.get((r, c), 0) >= 0 else -1) for c in y.support}
            cands.append(RationalVector({c: a * signs[c] for c, a in y.items()}))
    lower = Fraction(0)
    for x in cands:
        nx = schreier_norm(x, T.domain_xi, cap).value
        if nx:
            lower = max(lower, schreier_norm(T.apply(x), T.codomain_xi, cap).value / nx)
    rep = NormReport(lower, absrep.upper, absrep.profiles, absrep.evaluated,
                     notes=["upper bound is the exact norm of |T|"])
    return rep if report else (rep.lower, rep.upper)


# ---------------------------------------------------------------- strict singularity


def ss_witness(xi, zeta, rho, eps, M=None, cap=None):
    """(F, u): supp u = F in S_{rho+1}, sum |u_i| = 1 and ||u||_rho < eps, checked exactly.

    u is the first S_{rho+1} repeated average on a tail of M (default N)
    that passes; see :func:`schreier.averages.small_beta_vector`.  For
    M = N and rho <= 1 the same average is built as a RunVector (one run
    per S_1 block), which stays small at any length.  xi and zeta name the
    operator being tested and only enter the report.
    """
    from .averages import interval_average, runs_schreier_norm, small_beta_vector
    from .streams import IndexStream
    xi, zeta, rho, eps = ordinal(xi), ordinal(zeta), ordinal(rho), as_fraction(eps)
    if eps <= 0:
        raise DomainError("eps must be positive")
    if M is not None or rho > ONE:
        M = IndexStream.naturals() if M is None else M
        return small_beta_vector(rho, rho + ONE, eps, M, cap)
    for start in range(1, 4097):
        u = interval_average(rho + ONE, start)
        if runs_schreier_norm(u, rho) < eps:
            return u.support_set(), u
    raise ResourceCapError("no admissible run-length witness below start 4097")


def witness_report(F, u, rho, eps, cap=None):
    """Exact re-check of an ss_witness output."""
    from .averages import RunVector, runs_schreier_norm
    rho, eps = ordinal(rho), as_fraction(eps)
    if isinstance(u, RunVector):
        small = runs_schreier_norm(u, rho)
    else:
        cap = max(len(u), 1) if cap is None else cap
        small = schreier_norm(u, rho, cap=cap).value
    member = is_member(F, rho + ONE) and u.support_set() == F
    return {"F": F.to_json(), "size": len(F), "member": member, "mass": str(u.l1()),
            "rho_norm": str(small), "eps": str(eps),
            "passed": member and u.l1() == 1 and small < eps}


def _prefix_part(xi, rho):
    """iota with iota + rho = xi, for rho in R(xi)."""
    from .ordinal import i_set
    for iota in i_set(xi):
        if iota + rho == xi:
            return iota
    raise DomainError(f"{rho} is not in R({xi})")


def non_ss_witness(xi, rho, horizon=5, trials=8, seed=0):
    """(E, certificate): E in S_rho on which T: e_i -> x_i is an l_1 isometry.

    For rho in R(xi) the x_i come from the rho-Schreier pair of
    :func:`schreier.pairs.build_pair`; T then maps onto a rho-type
    sequence and is not S_rho-strictly singular.  For rho < xi outside
    R(xi) the x_i are the unit vectors themselves and T is the formal
    identity into X_rho.  E is a largest S_rho subset of [1, horizon]
    inside S_xi; the certificate checks both norms equal sum |a_i|
    exactly on seeded lattice coefficients.
    """
    from .norms import _combine, _GRID
    import random
    xi, rho = ordinal(xi), ordinal(rho)
    if not rho <= xi:
        raise DomainError("need rho <= xi")
    rng = random.Random(seed)
    members = [F for F in enumerate_members(rho, horizon, cap=horizon)
               if F and is_member(F, xi)]
    E = max(members, key=lambda F: (len(F), [-v for v in F]))
    if rho in r_set(xi):
        from .pairs import build_pair
        p = build_pair(xi, _prefix_part(xi, rho), count=E.max)
        images = {i: p.X[i - 1] for i in E}
        target = xi
        source = "pair"
    else:
        images = {i: RationalVector.basis(i) for i in E}
        target = rho
        source = "identity"
    samples = [(Fraction(1),) * len(E)]
    samples += [tuple(rng.choice(_GRID[1:]) for _ in E) for _ in range(trials)]
    worst = None
    for a in samples:
        dom = schreier_norm(RationalVector(dict(zip(E, a))), xi, cap=len(E)).value
        img_vec = _combine([images[i] for i in E], a)
        img = schreier_norm(img_vec, target, cap=max(len(img_vec), 1)).value
        mass = sum(a)
        ok = dom == mass and img == mass
        if worst is None or not ok:
            worst = {"a": [str(v) for v in a], "domain": str(dom), "image": str(img),
                     "mass": str(mass), "ok": ok}
        if not ok:
            break
    cert = {"E": E.to_json(), "source": source, "in_S_rho": is_member(E, rho),
            "in_S_xi": is_member(E, xi), "checked": len(samples), "sample": worst,
            "passed": bool(worst["ok"]) and is_member(E, rho)}
    return E, cert


def build_ss_chain(xi, horizon=5, eps=Fraction(1, 8), cap=None):
    """Operators T_1, ..., T_k on X_xi with T_1 ... T_k x^k_i = x^0_i.

    R(xi) = {rho_0 < ... < rho_k}; x^s is the rho_s-Schreier pair from
    build_pair and T_s = sum_i x^{s-1}_i (x) x^{s*}_i = R_s P_s.  The
    certificate checks the composite on x^k_1..x^k_horizon exactly, the
    separation of the images, and for each T_s a unit vector
    u = sum a_i x^s_i with ||T_s u|| < eps, where a is an S_{rho_{s-1}+1}
    average with small rho_{s-1} norm.
    """
    from .averages import small_beta_vector
    from .pairs import build_pair
    from .streams import IndexStream
    xi, eps = ordinal(xi), as_fraction(eps)
    R = r_set(xi)
    k = len(R) - 1
    if k < 1:
        raise DomainError("need |R(xi)| >= 2")
    # positions used by each factor's witness
    wits = []
    for s in range(1, k + 1):
        F, a = small_beta_vector(R[s - 1], R[s - 1] + ONE, eps, IndexStream.naturals(), cap)
        wits.append((F, a))
    need = max([horizon] + [F.max for F, _ in wits])
    pairs = [build_pair(xi, _prefix_part(xi, rho), count=need) for rho in R]
    ops = []
    for s in range(1, k + 1):
        pieces = [(pairs[s - 1].X[i], pairs[s].Xstar[i]) for i in range(need)]
        ops.append(FiniteOperator.rank_one_sum(pieces, xi, xi))
    images = []
    fixed = True
    for i in range(horizon):
        y = pairs[k].X[i]
        for T in reversed(ops):
            y = T.apply(y)
        images.append(y)
        fixed = fixed and y == pairs[0].X[i]
    norms = [schreier_norm(y, xi, cap=max(len(y), 1)).value for y in images]
    gaps = [schreier_norm(images[i] - images[j], xi, cap=10 ** 6).value
            for i in range(horizon) for j in range(i)]
    factor_checks = []
    for s, (F, a) in enumerate(wits, start=1):
        u = RationalVector()
        for i, c in a.items():
            u = u + pairs[s].X[i - 1] * c
        nu = schreier_norm(u, xi, cap=10 ** 6).value
        Tu = ops[s - 1].apply(u)
        nt = schreier_norm(Tu, xi, cap=10 ** 6).value
        factor_checks.append({"s": s, "rho_from": str(R[s]), "rho_to": str(R[s - 1]),
                              "positions": F.to_json(), "domain_norm": str(nu),
                              "image_norm": str(nt), "eps": str(eps),
                              "passed": nu == 1 and nt < eps})
    cert = {"xi": str(xi), "R": [str(r) for r in R], "horizon": horizon,
            "composite_fixes": fixed, "image_norms": [str(v) for v in norms],
            "min_separation": str(min(gaps)) if gaps else None,
            "factors": factor_checks,
            "passed": fixed and all(v == 1 for v in norms)
            and all(f["passed"] for f in factor_checks)}
    return ops, cert


# ---------------------------------------------------------------- xi-injectivity


class IndexMap:
    """A finite map psi, stored as blocks of the domain sent to one value."""

    def __init__(self, pieces=()):
        self.pieces = []
        seen = EMPTY
        for block, target in pieces:
            block = as_set(block)
            both = seen.union(block)
            if len(both) != len(seen) + len(block):
                raise DomainError("domain blocks overlap")
            seen = both
            self.pieces.append((block, int(target)))
        self.domain = seen

    @classmethod
    def from_dict(cls, table):
        groups = {}
        for a, b in table.items():
            groups.setdefault(int(b), []).append(int(a))
        return cls((FiniteSet(v), k) for k, v in groups.items())

    @classmethod
    def identity(cls, N):
        return cls((FiniteSet([i]), i) for i in range(1, N + 1))

    def __call__(self, a):
        for block, t in self.pieces:
            if a in block:
                return t
        raise KeyError(a)

    def image(self):
        return FiniteSet(t for _, t in self.pieces)

    def preimage(self, F):
        F = as_set(F)
        return FiniteSet().union(*(b for b, t in self.pieces if t in F))

    def to_json(self):
        return {"pieces": [[b.to_json(), t] for b, t in self.pieces]}

    @classmethod
    def from_json(cls, data):
        return cls((FiniteSet.from_json(b), t) for b, t in data["pieces"])


def collapse_map(blocks, N=None):
    """psi sending each block to its minimum and fixing every other point of [1, N]."""
    blocks = [as_set(B) for B in blocks]
    covered = FiniteSet().union(*blocks)
    pieces = [(B, B.min) for B in blocks if B]
    if N is not None:
        pieces += [(FiniteSet([i]), i) for i in range(1, N + 1) if i not in covered]
    return IndexMap(pieces)


def xi_injectivity_report(psi: IndexMap, xi, horizon, limit=200000):
    """(max ratio, witness F) of tau(psi^-1(F)) / max(1, tau(F)) over F in S_xi within [1, horizon].

    Only F inside the image matter (tau is monotone under subsets), so
    the enumeration runs over S_xi subsets of psi's image up to horizon.
    """
    xi = ordinal(xi)
    values = sorted(v for v in psi.image() if v <= horizon)
    best, witness = Fraction(0), EMPTY
    count = 0
    stack = [((), EMPTY_STATE, 0)]
    while stack:
        chosen, state, start = stack.pop()
        if chosen:
            count += 1
            if count > limit:
                raise ResourceCapError(f"more than {limit} sets enumerated")
            F = FiniteSet(chosen)
            r = Fraction(tau(psi.preimage(F), xi), max(1, tau(F, xi)))
            if r > best:
                best, witness = r, F
        for j in range(start, len(values)):
            nxt = step(xi, state, values[j])
            if nxt is not None:
                stack.append((chosen + (values[j],), nxt, j + 1))
    return best, witness


# ---------------------------------------------------------------- dyadic family


def dyadic_family(xi, n, cap=1 << 62):
    """F_1 < ... < F_n with the growth conditions of the dyadic construction.

    F_1 = {1}; F_{i+1} starts past max F_i and past |F_1| + ... + |F_i| and
    is the union of i * (tau(F_1) + ... + tau(F_i)) + 1 successive maximal
    S_xi sets, so its tau is exactly that count.  Sets are stored as
    intervals, so huge members cost nothing until their ends overflow cap.
    """
    xi = ordinal(xi)
    if n < 1:
        return []
    fam = [FiniteSet([1])]
    taus = [1]
    for i in range(1, n):
        lo = max(fam[-1].max, sum(len(F) for F in fam)) + 1
        need = i * sum(taus) + 1
        start = lo
        for _ in range(need):
            end = block_end(xi, start, cap)
            if end >= cap:
                raise ResourceCapError(f"F_{i + 1} reaches past {cap}")
            start = end + 1
        fam.append(FiniteSet.interval(lo, start - 1))
        taus.append(need)
    return fam


def dyadic_conditions(family, xi):
    """Re-check the three growth conditions through tau(); returns per-step records."""
    xi = ordinal(xi)
    taus = [tau(F, xi) for F in family]
    out = []
    for i in range(1, len(family)):
        prev_max = family[i - 1].max
        mass = sum(len(F) for F in family[:i])
        bound = i * sum(taus[:i])
        out.append({"i": i + 1, "min": family[i].min, "prev_max": prev_max,
                    "sizes_before": mass, "tau": taus[i], "tau_bound": bound,
                    "passed": family[i].min > prev_max and family[i].min > mass
                    and taus[i] > bound})
    return taus, out


def branch_union(family, A) -> FiniteSet:
    """Union of F_n over n in A (1-based)."""
    A = sorted(set(A))
    if any(a < 1 or a > len(family) for a in A):
        raise DomainError("branch index outside the family")
    return FiniteSet().union(*(family[a - 1] for a in A))
