"""Construction and finite-horizon certification of rho-Schreier pairs.

A pair in X_xi is built from repeated averages of level iota, with
iota + rho = xi:

* N is a tail of L on which S_iota sets are S_xi sets;
* K is a union stream: for F in S_rho the union of the supports of the
  averages S^iota_{N,K(i)}, i in F, is an S_xi set;
* x_i = S^iota_{N,K(i)} and x_i* is the indicator of its support.

Every x_i is a probability vector on an S_xi set, so x_i*(x_i) = 1 and the
pair is normalized; for F in S_rho the sum of the x_i* has dual norm 1 and
sum a_i x_i has norm sum |a_i|.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .averages import average_entries, level_seminorm
from .caps import DEFAULT_CAPS, CheckFailure, DomainError, ResourceCapError
from .families import (certify_union_stream, contained_from, is_member,
                       select_union_stream)
from .norms import (_combine, c0_sm_check, dual_norm, ell1_sm_check,
                    schreier_norm)
from .operators import FiniteOperator, _prefix_part, op_norm
from .ordinal import ZERO, fundamental_sequence, i_set, left_subtract, ordinal, r_set
from .sets import FiniteSet
from .streams import IndexStream
from .vectors import RationalVector, as_fraction

__all__ = [
    "SchreierPair", "build_pair", "verify_pair", "pair_projection_norm",
    "pair_projection_check", "partial_sum_operator", "beta_profile",
    "convex_block_descend",
]


@dataclass
class SchreierPair:
    xi: object
    iota: object
    rho: object
    J: list
    X: list
    Xstar: list
    horizon: int
    K: list = field(default_factory=list)
    eta: Fraction = Fraction(1, 2)
    certificate: dict = field(default_factory=dict)
    source: dict = field(default_factory=dict, repr=False)

    @property
    def count(self):
        return len(self.X)

    def to_json(self):
        return {
            "xi": str(self.xi), "iota": str(self.iota), "rho": str(self.rho),
            "J": list(self.J), "K": list(self.K), "horizon": self.horizon,
            "eta": f"{self.eta.numerator}/{self.eta.denominator}",
            "X": [x.to_json()["entries"] for x in self.X],
            "Xstar": [x.to_json()["entries"] for x in self.Xstar],
            "certificate": self.certificate,
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            ordinal(data["xi"]), ordinal(data["iota"]), ordinal(data["rho"]),
            list(data["J"]), [RationalVector.from_json(v) for v in data["X"]],
            [RationalVector.from_json(v) for v in data["Xstar"]], int(data["horizon"]),
            list(data.get("K", [])), Fraction(data.get("eta", "1/2")),
            dict(data.get("certificate", {})))


class _Averages:
    """S^iota_{N,1}, S^iota_{N,2}, ... computed on demand and kept."""

    def __init__(self, iota, N, cap):
        self.entries = average_entries(iota, N)
        self.done = []
        self.cur = {}
        self.cap = cap
        self.used = 0
        self.pending = None

    def vec(self, i) -> RationalVector:
        while len(self.done) < i:
            n = len(self.done) + 1
            if self.pending is not None:
                self.cur[self.pending[0]] = self.pending[1]
                self.pending = None
            for m, j, c in self.entries:
                self.used += 1
                if self.used > self.cap:
                    raise ResourceCapError(
                        f"averages need more than {self.cap} entries (at block {n})")
                if m > n:
                    self.pending = (j, c)
                    break
                self.cur[j] = c
            self.done.append(RationalVector(self.cur))
            self.cur = {}
        return self.done[i - 1]

    def block(self, i) -> FiniteSet:
        return self.vec(i).support_set()


def _thin(avg, iota, K, count, eta, tries):
    """Thinning: |x_{I(j)}|_{max supp x_{I(i)}} < eta / (max supp x_{I(i)} 2^(i+j))."""
    chosen = []
    t = 1
    for j in range(1, count + 1):
        for _ in range(tries):
            cand = avg.vec(K(t))
            t += 1
            ok = True
            for i, k in enumerate(chosen, start=1):
                top = avg.block(k).max
                if level_seminorm(cand, iota, top) >= eta / (top * 2 ** (i + j)):
                    ok = False
                    break
            if ok:
                chosen.append(K(t - 1))
                break
        else:
            raise ResourceCapError(f"thinning found no admissible x for position {j}")
    return chosen


def build_pair(xi, iota, L=None, count=5, thin=False, eta=Fraction(1, 2),
               tail_horizon=16, cap=None, tries=64):
    """The rho-Schreier pair of averages of level iota in X_xi, rho = xi - iota.

    The tail bound for N and the union stream K are certified up to
    ``tail_horizon``; the union property itself is then checked for every
    F in S_rho inside [1, count].  ``thin`` applies the extra subsequence
    selection that bounds the partial sums by 2(1 + eta); it is off by
    default because its thresholds outgrow any finite budget after a few
    terms (the partial sums are measured exactly in verify_pair instead).
    """
    xi, iota = ordinal(xi), ordinal(iota)
    if not iota <= xi:
        raise DomainError("need iota <= xi")
    rho = left_subtract(xi, iota)
    cap = DEFAULT_CAPS.block if cap is None else cap
    L = IndexStream.naturals() if L is None else L
    m = contained_from(iota, xi, tail_horizon)
    if m is None:
        raise ResourceCapError(f"no tail of N puts S_{iota} inside S_{xi} up to {tail_horizon}")
    N = L.tail_from(max(m, L(1)))
    avg = _Averages(iota, N, cap)
    if rho.is_zero():
        K = IndexStream.naturals()
    else:
        K = select_union_stream(iota, rho, blocks=avg.block, horizon=count)
    ks = _thin(avg, iota, K, count, as_fraction(eta), tries) if thin else K.take(count)
    X = [avg.vec(k) for k in ks]
    Xstar = [RationalVector.indicator(x.support_set()) for x in X]
    blocks = [x.support_set() for x in X]
    for i, B in enumerate(blocks, start=1):
        if not (is_member(B, iota) and is_member(B, xi)):
            raise CheckFailure(f"supp x_{i} = {B.describe()} is not in S_{iota} and S_{xi}")
    if not rho.is_zero():
        ok, F = certify_union_stream(iota, rho, IndexStream.naturals(),
                                     lambda j: blocks[j - 1], count)
        if not ok:
            raise CheckFailure(f"union of supports over F = {F.describe()} in S_{rho} "
                               f"is not in S_{xi}")
    source = {"L": L, "N_start": N(1), "thin": thin, "tail_horizon": tail_horizon,
              "cap": cap}
    return SchreierPair(xi, iota, rho, list(range(1, count + 1)), X, Xstar, count,
                        list(ks), as_fraction(eta), {}, source)


def _extend(p: SchreierPair, count):
    if count <= p.count:
        return p
    if not p.source or "L" not in p.source:
        raise DomainError("pair cannot be extended: construction data missing")
    s = p.source
    return build_pair(p.xi, p.iota, s["L"], count, s["thin"], p.eta, s["tail_horizon"], s["cap"])


# ---------------------------------------------------------------- verification


def partial_sum_operator(p: SchreierPair, n, normalize=False) -> FiniteOperator:
    """sum_{i <= n} x_i (x) x_i*, divided by x_i*(x_i) when ``normalize``."""
    pieces = []
    for x, xs in zip(p.X[:n], p.Xstar[:n]):
        s = xs.dot(x)
        pieces.append((x * (1 / s) if normalize else x, xs))
    return FiniteOperator.rank_one_sum(pieces, p.xi, p.xi)


def verify_pair(p: SchreierPair, theta=1, trials=8, seed=0, bound=None, cap=4096):
    """Exact checks of the pair conditions on the stored vectors.

    (i) biorthogonality, (ii) x_i*(x_i) = |x_i*|(|x_i|), (iii) inf x_i*(x_i)
    >= theta, (iv) lower l_1^rho constant over F in S_rho, (v) c_0^rho
    constant of the x_i*, (vi) norms of the partial-sum operators, whose
    bound defaults to 2(1 + eta).  For rho = 0 the c_0 behaviour of the x_i
    themselves is recorded too.
    """
    theta = as_fraction(theta)
    bound = 2 * (1 + p.eta) if bound is None else as_fraction(bound)
    xi, rho = ordinal(p.xi), ordinal(p.rho)
    n = p.count
    cert = {}

    bad = []
    for i in range(n):
        for j in range(n):
            if i != j and p.Xstar[i].dot(p.X[j]):
                bad.append([i + 1, j + 1])
    cert["i"] = {"passed": not bad, "failures": bad[:16]}

    bad = [i + 1 for i in range(n) if p.Xstar[i].dot(p.X[i]) != abs(p.Xstar[i]).dot(abs(p.X[i]))]
    cert["ii"] = {"passed": not bad, "failures": bad}

    pairing = [p.Xstar[i].dot(p.X[i]) for i in range(n)]
    low = min(pairing, default=Fraction(0))
    cert["iii"] = {"passed": low >= theta, "min": str(low), "theta": str(theta)}

    xn = [schreier_norm(x, xi, cap).value for x in p.X]
    xsn = [dual_norm(x, xi, cap).value for x in p.Xstar]
    cert["normalized"] = {"passed": all(v == 1 for v in xn + xsn),
                          "x": [str(v) for v in xn], "xstar": [str(v) for v in xsn]}

    l1 = ell1_sm_check(p.X, rho, xi, theta, index=p.J, trials=trials, seed=seed,
                       cap=cap)
    cert["iv"] = {"passed": l1["passed"], "constant": str(l1["worst_constant"]),
                  "witness": l1["witness"]}
    c0 = c0_sm_check(p.Xstar, rho, xi, 1, index=p.J)
    cert["v"] = {"passed": c0["passed"], "constant": str(c0["worst_constant"]),
                 "witness": c0["witness"]}

    sums = []
    for k in range(1, n + 1):
        lo, hi = op_norm(partial_sum_operator(p, k), cap=cap)
        sums.append(hi)
    top = max(sums, default=Fraction(0))
    cert["vi"] = {"passed": top <= bound, "norms": [str(v) for v in sums],
                  "max": str(top), "bound": str(bound)}

    if rho.is_zero():
        worst = Fraction(0)
        for r in range(1, n + 1):
            for A in combinations(range(n), r):
                worst = max(worst, schreier_norm(_combine([p.X[i] for i in A], [1] * r),
                                                 xi, cap).value)
        cert["c0_sums"] = {"passed": worst == 1, "max": str(worst)}

    cert["passed"] = all(v["passed"] for v in cert.values())
    return cert


def pair_projection_norm(p: SchreierPair, n) -> Fraction:
    """Norm of sum_{i <= n} x_i (x) x_i* / x_i*(x_i) on X_xi."""
    if n < 0 or n > p.count:
        raise DomainError(f"n must lie in [0, {p.count}]")
    if n == 0:
        return Fraction(0)
    return op_norm(partial_sum_operator(p, n, normalize=True), cap=4096)[1]


def pair_projection_check(p: SchreierPair, n):
    """The projection norm together with an exact idempotence check on x_1..x_n."""
    value = pair_projection_norm(p, n)
    if n == 0:
        return {"norm": "0/1", "idempotent": True, "failures": []}
    P = partial_sum_operator(p, n, normalize=True)
    bad = [j + 1 for j in range(n) if P.apply(p.X[j]) != p.X[j]]
    return {"norm": f"{value.numerator}/{value.denominator}", "idempotent": not bad,
            "failures": bad}


# ---------------------------------------------------------------- diagnostics


def _probes(gamma):
    out = {ZERO}
    for b in i_set(gamma):
        if b < gamma:
            out.add(b)
    if gamma.is_successor():
        out.add(gamma.pred())
    elif not gamma.is_zero():
        out.update(fundamental_sequence(gamma, k) for k in (1, 2, 3))
    return sorted((b for b in out if b < gamma), key=lambda b: (b != ZERO, b))


def beta_profile(X, xi, threshold=Fraction(1, 4), cap=None):
    """||x_i||_beta for probe ordinals beta, and a heuristic index estimate.

    For each gamma in I(xi) the probes are 0, the members of I(gamma)
    below gamma, its predecessor or its first fundamental terms.  The
    estimate is the largest gamma all of whose probes end below
    ``threshold`` on the last vector: a finite-horizon heuristic for
    "lim ||x_i||_beta = 0 for beta < gamma", not a decision.
    """
    xi, threshold = ordinal(xi), as_fraction(threshold)
    cap = max([len(x) for x in X] + [1]) if cap is None else cap
    table = {}
    estimate = ZERO
    for gamma in i_set(xi):
        probes = _probes(gamma)
        for b in probes:
            if str(b) not in table:
                table[str(b)] = [schreier_norm(x, b, cap).value for x in X]
        if all(table[str(b)][-1] <= threshold for b in probes) and X:
            estimate = max(estimate, gamma)
    return {"label": "finite-horizon heuristic", "threshold": str(threshold),
            "norms": {b: [str(v) for v in vals] for b, vals in table.items()},
            "iota_estimate": str(estimate)}


def convex_block_descend(p: SchreierPair, delta, count):
    """A delta-Schreier pair from p by averaging blocks of level rho - delta.

    With sigma + delta = rho and B_k = supp S^sigma_{N,k} (positions of p):
    y_k = sum_{j in B_k} S^sigma_{N,k}(j) x_j and y_k* = sum_{j in B_k} x_j*.
    """
    delta, rho = ordinal(delta), ordinal(p.rho)
    if delta not in r_set(rho):
        raise DomainError(f"{delta} is not in R({rho})")
    if delta == rho:
        return p
    sigma = _prefix_part(rho, delta)
    entries = average_entries(sigma, IndexStream.naturals())
    weights = [{} for _ in range(count)]
    for k, j, c in entries:
        if k > count:
            break
        weights[k - 1][j] = c
    need = max(max(w) for w in weights)
    q = _extend(p, need)
    Y, Ystar = [], []
    for w in weights:
        y = RationalVector()
        ys = RationalVector()
        for j, c in w.items():
            y = y + q.X[j - 1] * c
            ys = ys + q.Xstar[j - 1]
        Y.append(y)
        Ystar.append(ys)
    iota = _prefix_part(ordinal(p.xi), delta)
    return SchreierPair(p.xi, iota, delta, list(range(1, count + 1)), Y, Ystar, count,
                        [sorted(w) for w in weights], p.eta, {},
                        {"parent": p.to_json(), "sigma": str(sigma)})
