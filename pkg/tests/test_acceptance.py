"""Acceptance criteria, one test each, run through the verification suites.

Every test records a PASS/FAIL line (printed in the terminal summary) and
then asserts that all checks of its suite passed.  Checks that hit a
resource cap fail with the cap message as witness; nothing is skipped.
"""

import time

import pytest

from schreier.suites import run_suite

CRITERIA = [
    (1, "family equality S_xi = S_xi^M on [1,14]", "family-equality", 120),
    (2, "S_1 inside S_xi, maximal growth, block ratios at N=64", "properties", 60),
    (3, "tau = tau_oracle on [1,12], subadditivity on 1000 unions", "tau", 120),
    (4, "weak summing <= 6, exactly 1 for xi=1 on N", "weaksumming", 180),
    (5, "isometric c0 sums have norm 1, count 4", "isometric", 120),
    (6, "Schreier pairs (1,1),(2,1),(2,2),(w,1) at horizon 5", "pairs", 300),
    (7, "dual norm = vertex enumeration on 200 vectors", "dualnorm", 120),
    (8, "strictly singular witnesses and norming sets", "ss", 120),
    (9, "SS chain for xi=2 at horizon 5", "sschain", 120),
    (10, "dyadic family conditions and injectivity ratio, n=4", "dyadic", 60),
    (11, "fundamental-sequence containment on [1,14]", "containment", 120),
]


def _summary(recs):
    bad = [r for r in recs if not r["passed"]]
    if not bad:
        return f"{len(recs)} checks passed"
    first = bad[0]
    why = first.get("witness")
    if isinstance(why, dict) and "message" in why:
        why = why["message"]
    return f"{len(bad)} of {len(recs)} checks failed, first {first['id']}: {why}"


@pytest.mark.parametrize("num,title,suite,budget", CRITERIA, ids=[c[2] for c in CRITERIA])
def test_criterion(num, title, suite, budget, acceptance):
    t = time.perf_counter()
    recs = run_suite(suite, {})
    took = time.perf_counter() - t
    ok = bool(recs) and all(r["passed"] for r in recs) and took < budget
    detail = f"{_summary(recs)} in {took:.1f}s (budget {budget}s)"
    acceptance[num] = (title, ok, detail)
    print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {title}: {detail}")
    assert recs, "suite produced no checks"
    assert all(r["passed"] for r in recs), _summary(recs)
    assert took < budget, f"took {took:.1f}s, budget {budget}s"
