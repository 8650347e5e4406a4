"""Verification suites: exact finite-horizon checks of the library's claims.

Each suite takes a config dict and returns check records::

    {"id", "claim", "params", "expected", "computed", "passed", ["witness"]}

Records are sorted by id and contain no timings unless the config asks
for them, so identical configs give identical reports.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import combinations

from .averages import isometric_c0_select, verify_weak_summing
from .caps import DEFAULT_CAPS, CheckFailure, DomainError, ResourceCapError
from .families import (block_end, enumerate_members, is_maximal,
                       is_member, maximal_partition, modified_members, tau,
                       tau_oracle)
from .norms import dual_norm, dual_norm_oracle, schreier_norm
from .operators import (build_ss_chain, collapse_map, dyadic_conditions,
                        dyadic_family, non_ss_witness, ss_witness, witness_report,
                        xi_injectivity_report)
from .ordinal import ONE, fundamental_sequence, ordinal
from .pairs import build_pair, verify_pair
from .sets import FiniteSet
from .streams import IndexStream
from .vectors import RationalVector

__all__ = ["SUITES", "run_suite", "verify_all", "DEFAULT_SEED", "SUPPORTED_LIMITS"]

DEFAULT_SEED = 20240601

# limit ordinals whose families stay tractable on subsets of [1, 14]; from
# w^w + w on, block ends need S_(w^m + 1) for m up to 14
SUPPORTED_LIMITS = ["w", "w*2", "w*3", "w^2", "w^2+w", "w^2*2", "w^3", "w^w"]


def _q(v):
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def _record(cid, claim, params, expected, computed, passed, witness=None):
    rec = {"id": cid, "claim": claim, "params": params, "expected": expected,
           "computed": computed, "passed": bool(passed)}
    if not passed and witness is not None:
        rec["witness"] = witness
    return rec


def _capped(cid, claim, params, expected, err):
    return _record(cid, claim, params, expected, None, False,
                   {"error": type(err).__name__, "message": str(err)})


def _streams(rng):
    return [("naturals", IndexStream.naturals()), ("evens", IndexStream.evens()),
            ("random", IndexStream.random(random.Random(rng.randrange(1 << 30))))]


# ---------------------------------------------------------------- families


def family_equality(cfg):
    """S_xi and the modified family agree on every subset of [1, N]."""
    N = cfg.get("N", 14)
    out = []
    for xi in cfg.get("xis", ["1", "2", "3", "w", "w+1", "w*2", "w^2"]):
        xi = ordinal(xi)
        universe = range(1, N + 1)
        modified = modified_members(xi, universe)
        plain = enumerate_members(xi, N, cap=N)
        diff = sorted(modified ^ plain, key=lambda E: (len(E), list(E)))
        out.append(_record(f"family-equality/xi={xi}", "S_xi = S_xi^M on subsets of [1,N]",
                           {"xi": str(xi), "N": N}, "0 disagreements",
                           f"{len(diff)} disagreements over {2 ** N} sets", not diff,
                           [list(E) for E in diff[:4]]))
    return out


def _blocks_in(xi, M, name, N):
    # blocks of the partition of M into maximal S_xi sets, up to the first
    # block starting past N; blocks of N are intervals, so only ends are computed
    if name == "naturals":
        blocks, start = [], 1
        while start <= N:
            end = block_end(xi, start, cap=1 << 62)
            blocks.append((start, end))
            start = end + 1
        return blocks, True
    out = []
    try:
        for B in maximal_partition(M, xi, N, cap=4096):
            out.append((B.min, B.max))
            if B.min > N:
                break
    except ResourceCapError:
        return out, False
    return out, True


def properties(cfg):
    """S_1 inside S_xi, max E >= 2 min E - 1 on maximal sets, block growth 2^(1-j)."""
    N = cfg.get("N", 64)
    small = cfg.get("exhaustive_N", 14)
    rng = random.Random(cfg.get("seed", DEFAULT_SEED))
    out = []
    for xi in cfg.get("xis", ["1", "2", "3", "w", "w+1", "w*2", "w^2"]):
        xi = ordinal(xi)
        # spreading + hereditary: [m, 2m-1] in S_xi covers every S_1 set with minimum m
        bad = [m for m in range(1, N // 2 + 1) if not is_member(FiniteSet.interval(m, 2 * m - 1), xi)]
        out.append(_record(f"properties/s1-inside/xi={xi}", "S_1 is contained in S_xi",
                           {"xi": str(xi), "N": N}, "every [m,2m-1] in S_xi",
                           f"{len(bad)} failures", not bad, bad[:4]))

        members = enumerate_members(xi, small, cap=small)
        short = []
        checked = 0
        for E in members:
            if E and E.max < small and is_maximal(E, xi):
                checked += 1
                if E.max < 2 * E.min - 1:
                    short.append(list(E))
        streams = _streams(rng)
        ratios, truncated = [], []
        for name, M in streams:
            blocks, complete = _blocks_in(xi, M, name, N)
            if not complete:
                truncated.append(name)
            for lo, hi in blocks:
                checked += 1
                if hi < 2 * lo - 1 and name == "naturals":
                    short.append([lo, hi])
            for i in range(len(blocks)):
                for j in range(1, len(blocks) - i):
                    r = Fraction(blocks[i][1], blocks[i + j][0])
                    ok = r <= Fraction(2) ** (1 - j)
                    ratios.append(ok)
                    if not ok:
                        short.append({"stream": name, "i": i + 1, "j": j, "ratio": _q(r)})
        out.append(_record(f"properties/maximal-growth/xi={xi}",
                           "maximal E has max E >= 2 min E - 1; max E_i / min E_(i+j) <= 2^(1-j)",
                           {"xi": str(xi), "N": N, "exhaustive_N": small,
                            "truncated_streams": truncated},
                           "no violations", f"{checked} maximal sets, {len(ratios)} ratios",
                           not short, short[:4]))
    return out


def tau_suite(cfg):
    """tau against brute force on every subset of [1, N]; subadditivity on random unions."""
    N = cfg.get("N", 12)
    trials = cfg.get("trials", 1000)
    rng = random.Random(cfg.get("seed", DEFAULT_SEED))
    out = []
    for xi in cfg.get("xis", ["1", "2", "w"]):
        xi = ordinal(xi)
        bad = []
        for mask in range(1, 1 << N):
            A = FiniteSet(i + 1 for i in range(N) if mask >> i & 1)
            if tau(A, xi) != tau_oracle(A, xi):
                bad.append(list(A))
        out.append(_record(f"tau/oracle/xi={xi}", "greedy tau equals the brute-force minimum",
                           {"xi": str(xi), "N": N}, "0 disagreements",
                           f"{len(bad)} disagreements", not bad, bad[:4]))
        worst = []
        for _ in range(trials):
            A = FiniteSet(i for i in range(1, 65) if rng.random() < 0.3)
            B = FiniteSet(i for i in range(1, 65) if rng.random() < 0.3)
            if tau(A.union(B), xi) > tau(A, xi) + tau(B, xi):
                worst.append([list(A), list(B)])
        out.append(_record(f"tau/subadditive/xi={xi}", "tau(A u B) <= tau(A) + tau(B)",
                           {"xi": str(xi), "trials": trials}, "no violations",
                           f"{len(worst)} violations", not worst, worst[:2]))
    return out


# ---------------------------------------------------------------- averages


def weaksumming(cfg):
    """max over F in S_xi of the F-mass of sum_n S^xi_{M,n}, up to a horizon."""
    horizon = cfg.get("horizon", 48)
    rng = random.Random(cfg.get("seed", DEFAULT_SEED))
    out = []
    for xi in cfg.get("xis", ["1", "2", "w"]):
        xi = ordinal(xi)
        for name, M in _streams(rng):
            if name not in cfg.get("streams", ["naturals", "evens", "random"]):
                continue
            params = {"xi": str(xi), "M": name, "horizon": horizon}
            try:
                v = verify_weak_summing(xi, M, horizon, cap=max(horizon, DEFAULT_CAPS.horizon))
            except ResourceCapError as e:
                out.append(_capped(f"weaksumming/xi={xi}/M={name}", "weak summing bound",
                                   params, "<= 6", e))
                continue
            exact = xi == ONE and name == "naturals"
            ok = v <= 6 and (v == 1 if exact else True)
            out.append(_record(f"weaksumming/xi={xi}/M={name}", "weak summing bound",
                               params, "= 1" if exact else "<= 6", _q(v), ok))
    return out


def isometric(cfg):
    """||sum_{n in A} x_n||_xi = 1 for every nonempty A, for the selected averages."""
    count = cfg.get("count", 4)
    out = []
    for xi in cfg.get("xis", ["1", "2", "w"]):
        xi = ordinal(xi)
        params = {"xi": str(xi), "count": count}
        cid = f"isometric/xi={xi}"
        try:
            _, vecs = isometric_c0_select(xi, IndexStream.naturals(), count)
        except ResourceCapError as e:
            out.append(_capped(cid, "isometric c_0 averages", params, "all norms 1", e))
            continue
        bad = []
        for r in range(1, count + 1):
            for A in combinations(range(count), r):
                s = RationalVector()
                for i in A:
                    s = s + vecs[i]
                v = schreier_norm(s, xi, cap=len(s)).value
                if v != 1:
                    bad.append({"A": [i + 1 for i in A], "norm": _q(v)})
        params["blocks"] = [x.support_set().to_json() for x in vecs]
        out.append(_record(cid, "isometric c_0 averages", params, "all norms 1",
                           f"{2 ** count - 1 - len(bad)} of {2 ** count - 1} equal 1",
                           not bad, bad[:4]))
    return out


# ---------------------------------------------------------------- norms


def dualnorm(cfg):
    """dual_norm against vertex enumeration on seeded random vectors."""
    trials = cfg.get("trials", 200)
    size = cfg.get("support", 6)
    N = cfg.get("N", 12)
    rng = random.Random(cfg.get("seed", DEFAULT_SEED))
    xis = [ordinal(x) for x in cfg.get("xis", ["1", "2"])]
    bad = []
    for t in range(trials):
        xi = xis[t % len(xis)]
        idx = rng.sample(range(1, N + 1), rng.randint(1, size))
        v = RationalVector({i: Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for i in idx})
        a = dual_norm(v, xi).value
        b = dual_norm_oracle(v, xi, cap=size)
        if a != b:
            bad.append({"xi": str(xi), "vector": v.to_json()["entries"],
                        "lp": _q(a), "vertices": _q(b)})
    return [_record("dualnorm/oracle", "dual norm equals vertex enumeration",
                    {"xis": [str(x) for x in xis], "trials": trials, "support": size},
                    "0 disagreements", f"{len(bad)} disagreements", not bad, bad[:2])]


# ---------------------------------------------------------------- pairs


def pairs(cfg):
    """Build and verify rho-Schreier pairs at a horizon."""
    horizon = cfg.get("horizon", 5)
    out = []
    for xi, iota in cfg.get("pairs", [["1", "1"], ["2", "1"], ["2", "2"], ["w", "1"]]):
        xi, iota = ordinal(xi), ordinal(iota)
        cid = f"pairs/xi={xi}/iota={iota}"
        params = {"xi": str(xi), "iota": str(iota), "horizon": horizon}
        try:
            p = build_pair(xi, iota, count=horizon)
            cert = verify_pair(p, seed=cfg.get("seed", DEFAULT_SEED))
        except (ResourceCapError, CheckFailure) as e:
            out.append(_capped(cid, "Schreier pair conditions", params, "all conditions", e))
            continue
        failed = {k: v for k, v in cert.items() if k != "passed" and not v["passed"]}
        summary = {k: v.get("max", v.get("constant", v.get("min")))
                   for k, v in cert.items() if k != "passed"}
        params["rho"] = str(p.rho)
        out.append(_record(cid, "Schreier pair conditions", params,
                           "(i)-(iii), unit norms, l1/c0 constants 1, partial sums <= 3",
                           summary, cert["passed"], failed))
    return out


def negative(cfg):
    """A corrupted pair must be rejected."""
    p = build_pair("1", "1", count=cfg.get("horizon", 4))
    p.X[1] = p.X[1] * 2
    cert = verify_pair(p)
    rejected = not cert["passed"]
    return [_record("negative/corrupted-pair", "verify_pair rejects a rescaled vector",
                    {"xi": "1", "iota": "1", "corruption": "x_2 doubled"},
                    "rejected", "rejected" if rejected else "accepted", rejected,
                    {k: v for k, v in cert.items() if k != "passed"})]


# ---------------------------------------------------------------- operators


def ss(cfg):
    """Small-norm witnesses and exact norming sets for the formal identities."""
    out = []
    for xi, zeta in cfg.get("cases", [["1", "0"], ["2", "1"], ["w", "2"]]):
        xi, zeta = ordinal(xi), ordinal(zeta)
        for eps in cfg.get("eps", ["1/4", "1/16"]):
            cid = f"ss/witness/xi={xi}/zeta={zeta}/eps={eps}"
            params = {"xi": str(xi), "zeta": str(zeta), "eps": eps}
            try:
                F, u = ss_witness(xi, zeta, zeta, eps)
            except ResourceCapError as e:
                out.append(_capped(cid, "small zeta-norm average on an S_(zeta+1) set",
                                   params, "||u||_zeta < eps", e))
                continue
            rep = witness_report(F, u, zeta, eps)
            params["support_size"] = rep["size"]
            out.append(_record(cid, "small zeta-norm average on an S_(zeta+1) set", params,
                               "||u||_zeta < eps, mass 1", rep["rho_norm"], rep["passed"],
                               rep))
        cid = f"ss/norming/xi={xi}/zeta={zeta}"
        params = {"xi": str(xi), "zeta": str(zeta)}
        try:
            E, cert = non_ss_witness(xi, zeta)
        except ResourceCapError as e:
            out.append(_capped(cid, "isometry on an S_zeta set", params, "equality", e))
            continue
        params["E"] = E.to_json()
        out.append(_record(cid, "isometry on an S_zeta set", params, "equality",
                           cert.get("source"), cert["passed"], cert))
    return out


def sschain(cfg):
    """Operator chain T_1...T_k fixing designated vectors, each factor small somewhere."""
    out = []
    for xi in cfg.get("xis", ["2"]):
        xi = ordinal(xi)
        horizon = cfg.get("horizon", 5)
        cid = f"sschain/xi={xi}"
        params = {"xi": str(xi), "horizon": horizon, "eps": cfg.get("eps", "1/8")}
        try:
            _, cert = build_ss_chain(xi, horizon, Fraction(cfg.get("eps", "1/8")))
        except (ResourceCapError, CheckFailure) as e:
            out.append(_capped(cid, "chain of strictly singular factors", params,
                               "composite fixes, factor images < eps", e))
            continue
        out.append(_record(cid, "chain of strictly singular factors", params,
                           "composite fixes, factor images < eps",
                           {"fixes": cert["composite_fixes"],
                            "images": [f["image_norm"] for f in cert["factors"]]},
                           cert["passed"], cert))
    return out


def dyadic(cfg):
    """Growth conditions of the dyadic family and the collapse ratio on F_n."""
    n = cfg.get("n", 4)
    out = []
    for xi in cfg.get("xis", ["1", "2"]):
        xi = ordinal(xi)
        cid = f"dyadic/xi={xi}"
        params = {"xi": str(xi), "n": n}
        try:
            fam = dyadic_family(xi, n)
        except ResourceCapError as e:
            out.append(_capped(cid, "dyadic growth and collapse ratio", params,
                               "conditions hold, ratio >= n", e))
            continue
        taus, recs = dyadic_conditions(fam, xi)
        psi = collapse_map(fam)
        ratio, F = xi_injectivity_report(psi, xi, max(B.min for B in fam))
        ok = all(r["passed"] for r in recs) and ratio >= n
        params["family"] = [B.to_json() for B in fam]
        out.append(_record(cid, "dyadic growth and collapse ratio", params,
                           "conditions hold, ratio >= n",
                           {"taus": taus, "ratio": _q(ratio), "F": F.to_json()}, ok, recs))
    return out


def containment(cfg):
    """S_(xi_n + 1) inside S_(xi_(n+1)) on subsets of [1, N]."""
    N = cfg.get("N", 14)
    out = []
    for xi in cfg.get("xis", SUPPORTED_LIMITS):
        xi = ordinal(xi)
        for n in range(1, cfg.get("n", 3) + 1):
            lo, hi = fundamental_sequence(xi, n) + ONE, fundamental_sequence(xi, n + 1)
            bad = [list(E) for E in enumerate_members(lo, N, cap=N) if not is_member(E, hi)]
            out.append(_record(f"containment/xi={xi}/n={n}",
                               "S_(xi_n + 1) is contained in S_(xi_(n+1))",
                               {"xi": str(xi), "n": n, "N": N, "from": str(lo), "to": str(hi)},
                               "0 escapes", f"{len(bad)} escapes", not bad, bad[:4]))
    return out


SUITES = {
    "family-equality": family_equality,
    "properties": properties,
    "tau": tau_suite,
    "weaksumming": weaksumming,
    "isometric": isometric,
    "pairs": pairs,
    "dualnorm": dualnorm,
    "ss": ss,
    "sschain": sschain,
    "dyadic": dyadic,
    "containment": containment,
    "negative": negative,
}


def run_suite(name, cfg=None):
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    cfg = dict(cfg or {})
    t0 = time.perf_counter()
    recs = SUITES[name](cfg)
    if cfg.get("timings"):
        for r in recs:
            r["suite_seconds"] = round(time.perf_counter() - t0, 3)
    return sorted(recs, key=lambda r: r["id"])


def verify_all(config):
    """Run the suites named in config["suites"] (a mapping name -> suite config)."""
    seed = config.get("seed", DEFAULT_SEED)
    suites = config.get("suites", {})
    report = {"seed": seed, "caps": DEFAULT_CAPS.asdict(), "suites": {}}
    for name in sorted(suites):
        cfg = {"seed": seed, **(suites[name] or {})}
        recs = run_suite(name, cfg)
        report["suites"][name] = recs
    checks = [r for recs in report["suites"].values() for r in recs]
    report["passed"] = all(r["passed"] for r in checks)
    report["counts"] = {"checks": len(checks), "failed": sum(not r["passed"] for r in checks)}
    return report
