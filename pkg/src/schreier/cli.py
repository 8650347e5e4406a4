"""Command-line front end.  Every command prints one JSON document.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .averages import repeated_average
from .caps import DEFAULT_CAPS, Caps, CheckFailure, DomainError, ResourceCapError
from .families import greedy_blocks, is_maximal, is_member, tau
from .norms import dual_norm, schreier_norm
from .operators import (FiniteOperator, build_ss_chain, collapse_map, dyadic_conditions,
                        dyadic_family, formal_identity, op_norm, xi_injectivity_report)
from .ordinal import OrdinalError, fundamental_sequence, i_set, ordinal, r_set
from .pairs import SchreierPair, build_pair, verify_pair
from .sets import FiniteSet
from .streams import IndexStream
from .suites import DEFAULT_SEED, SUITES, run_suite, verify_all
from .vectors import RationalVector


class UsageError(Exception):
    pass


def _q(v):
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def _load(text):
    """JSON given inline or as a path to a file."""
    if text is None:
        return None
    if os.path.exists(text):
        with open(text) as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"not JSON and not a file: {text!r} ({e})") from None


def _vector(text):
    data = _load(text)
    if data is None:
        raise UsageError("--vector is required")
    if isinstance(data, dict) and "entries" not in data:
        data = [[int(k), v] for k, v in data.items()]
    elif isinstance(data, list) and not any(isinstance(v, list) for v in data):
        data = [[i, v] for i, v in enumerate(data, start=1)]   # dense coefficients
    try:
        return RationalVector.from_json(data)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise UsageError(f"bad vector: {e}") from None


def _set(text):
    if text is None:
        raise UsageError("--set is required")
    try:
        items = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise UsageError(f"bad set {text!r}") from None
    if any(i < 1 for i in items):
        raise UsageError("set elements must be positive")
    return FiniteSet(items)


def _caps(args):
    if not args.caps:
        return DEFAULT_CAPS
    try:
        return Caps.from_mapping(_load(args.caps))
    except (TypeError, ValueError) as e:
        raise UsageError(f"bad caps: {e}") from None


def _xi(args, caps, name="xi"):
    text = getattr(args, name)
    if text is None:
        raise UsageError(f"--{name} is required")
    xi = ordinal(text)
    if xi.depth() > caps.cnf_depth:
        raise ResourceCapError(f"CNF depth {xi.depth()} of {xi} exceeds cap {caps.cnf_depth}")
    return xi


def _horizon(args, caps, default):
    h = default if args.horizon is None else args.horizon
    if h < 0:
        raise UsageError("--horizon must be nonnegative")
    if h > caps.horizon:
        raise ResourceCapError(f"horizon {h} exceeds cap {caps.horizon}")
    return h


# ---------------------------------------------------------------- commands


def cmd_ordinal(args, caps):
    xi = _xi(args, caps)
    out = {"ordinal": str(xi), "successor": xi.is_successor(), "limit": xi.is_limit(),
           "I": [str(o) for o in i_set(xi)], "R": [str(o) for o in r_set(xi)]}
    if xi.is_limit():
        n = _horizon(args, caps, 4)
        out["fundamental"] = [str(fundamental_sequence(xi, k)) for k in range(1, n + 1)]
    return out, True


def cmd_member(args, caps):
    return {"member": is_member(_set(args.set), _xi(args, caps))}, True


def cmd_maximal(args, caps):
    E, xi = _set(args.set), _xi(args, caps)
    if not is_member(E, xi):
        return {"member": False, "maximal": False}, True
    return {"member": True, "maximal": is_maximal(E, xi)}, True


def cmd_partition(args, caps):
    blocks = greedy_blocks(_set(args.set), _xi(args, caps))
    return {"blocks": [B.to_json() for B in blocks], "tau": len(blocks)}, True


def cmd_tau(args, caps):
    return {"tau": tau(_set(args.set), _xi(args, caps))}, True


def cmd_average(args, caps):
    xi = _xi(args, caps)
    M = IndexStream.from_json(_load(args.stream)) if args.stream else IndexStream.naturals()
    x = repeated_average(xi, M, args.n, cap=caps.block)
    return {"xi": str(xi), "n": args.n, "support": x.support_set().to_json(),
            "vector": x.to_json()["entries"]}, True


def cmd_norm(args, caps):
    cert = schreier_norm(_vector(args.vector), _xi(args, caps), cap=caps.support)
    return {"value": _q(cert.value), "witness": cert.witness.to_json()}, True


def cmd_dualnorm(args, caps):
    cert = dual_norm(_vector(args.vector), _xi(args, caps), cap=caps.support)
    return {"value": _q(cert.value), "witness": cert.point.to_json()["entries"],
            "tight": [E.to_json() for E in cert.tight]}, True


def cmd_pair(args, caps):
    if args.action == "build":
        xi, iota = _xi(args, caps), _xi(args, caps, "iota")
        p = build_pair(xi, iota, count=_horizon(args, caps, 5), thin=args.thin)
        return p.to_json(), True
    data = _load(args.pair) if args.pair else None
    if data is None:
        xi, iota = _xi(args, caps), _xi(args, caps, "iota")
        p = build_pair(xi, iota, count=_horizon(args, caps, 5))
    else:
        p = SchreierPair.from_json(data)
    cert = verify_pair(p, seed=args.seed)
    return {"pair": {"xi": str(p.xi), "iota": str(p.iota), "rho": str(p.rho),
                     "count": p.count}, "certificate": cert}, cert["passed"]


def cmd_op(args, caps):
    xi = _xi(args, caps)
    if args.action == "identity":
        zeta = _xi(args, caps, "zeta")
        T = formal_identity(xi, zeta, _horizon(args, caps, 8))
        rep = op_norm(T, cap=caps.support * 16, report=True)
        return {"operator": T.to_json(), "norm": rep.to_json()}, True
    if args.action == "norm":
        data = _load(args.matrix)
        if data is None:
            raise UsageError("--matrix is required")
        if isinstance(data, list):
            data = {"triplets": data}
        try:
            T = FiniteOperator.from_json(data)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise UsageError(f"bad matrix, expected [[row, col, value], ...]: {e!r}") from None
        T = FiniteOperator(T.matrix, xi, ordinal(args.zeta) if args.zeta else xi)
        rep = op_norm(T, cap=caps.support * 16, report=True)
        return rep.to_json(), True
    if args.action == "sschain":
        _, cert = build_ss_chain(xi, _horizon(args, caps, 5))
        return cert, cert["passed"]
    if args.action == "dyadic":
        fam = dyadic_family(xi, args.n)
        taus, recs = dyadic_conditions(fam, xi)
        ok = all(r["passed"] for r in recs)
        return {"family": [F.to_json() for F in fam], "tau": taus, "conditions": recs}, ok
    if args.action == "injectivity":
        blocks = _load(args.blocks)
        if not blocks:
            raise UsageError("--blocks is required, e.g. '[[1,2],[3,4,5]]'")
        psi = collapse_map(blocks)
        h = max(psi.image()) if args.horizon is None else _horizon(args, caps, 0)
        ratio, F = xi_injectivity_report(psi, xi, h)
        return {"map": psi.to_json(), "ratio": _q(ratio), "witness": F.to_json(),
                "preimage": psi.preimage(F).to_json()}, True
    raise UsageError(f"unknown op action {args.action!r}")


def _suite_cfg(args, caps):
    cfg = {"seed": args.seed}
    if args.xi is not None:
        cfg["xis"] = [str(_xi(args, caps))]
    if args.horizon is not None:
        cfg["horizon"] = _horizon(args, caps, 0)
    return cfg


def cmd_verify(args, caps):
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}")
    recs = run_suite(args.suite, _suite_cfg(args, caps))
    report = {"suite": args.suite, "seed": args.seed, "caps": caps.asdict(), "checks": recs,
              "passed": all(r["passed"] for r in recs)}
    return report, report["passed"]


def cmd_report(args, caps):
    config = _load(args.config) if args.config else {"suites": {k: {} for k in SUITES}}
    if not isinstance(config, dict):
        raise UsageError("config must be a JSON object")
    config.setdefault("seed", args.seed)
    report = verify_all(config)
    report["caps"] = caps.asdict()
    return report, report["passed"]


COMMANDS = {
    "ordinal": cmd_ordinal, "member": cmd_member, "maximal": cmd_maximal,
    "partition": cmd_partition, "tau": cmd_tau, "average": cmd_average,
    "norm": cmd_norm, "dualnorm": cmd_dualnorm, "pair": cmd_pair, "op": cmd_op,
    "verify": cmd_verify, "report": cmd_report,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--xi")
    common.add_argument("--set")
    common.add_argument("--vector")
    common.add_argument("--horizon", type=int)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--caps")
    common.add_argument("--out")

    parser = argparse.ArgumentParser(prog="schreier", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("ordinal", "member", "maximal", "partition", "tau", "norm", "dualnorm"):
        sub.add_parser(name, parents=[common])
    p = sub.add_parser("average", parents=[common])
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--stream", help="stream JSON, e.g. '{\"tail\": {\"start\": 2, \"step\": 2}}'")
    p = sub.add_parser("pair", parents=[common])
    p.add_argument("action", choices=["build", "verify"])
    p.add_argument("--iota")
    p.add_argument("--pair", help="pair JSON (inline or file) to verify")
    p.add_argument("--thin", action="store_true")
    p = sub.add_parser("op", parents=[common])
    p.add_argument("action", choices=["norm", "identity", "sschain", "dyadic", "injectivity"])
    p.add_argument("--zeta")
    p.add_argument("--matrix")
    p.add_argument("--blocks")
    p.add_argument("--n", type=int, default=4)
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--suite", required=True)
    p = sub.add_parser("report", parents=[common])
    p.add_argument("--config")
    return parser


def _emit(doc, out):
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        caps = _caps(args)
        doc, ok = COMMANDS[args.command](args, caps)
    except (UsageError, OrdinalError, DomainError) as e:
        _emit({"error": "usage", "message": str(e)}, None)
        return 2
    except ResourceCapError as e:
        _emit({"error": "resource_cap", "message": str(e)}, None)
        return 3
    except CheckFailure as e:
        _emit({"error": "check_failed", "message": str(e)}, None)
        return 1
    _emit(doc, getattr(args, "out", None))
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
