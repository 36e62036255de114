"""Acceptance criteria 1-9, one test each.

Each test records a PASS/FAIL line; ``conftest.py`` prints them in the
terminal summary (they also go to stdout when run with ``-s``).
"""

import time

import pytest

from carto import verify

RESULTS: dict = {}

CRITERIA = {
    1: ("bijection round trips on all objects with <= 4 edges, under 2 minutes",
        "roundtrip", {"max_edges": 4}, 120),
    2: ("oracle counts equal series coefficients", "oracle", {"n_max": 4}, None),
    3: ("closed forms equal recurrences, i <= 8, order 30 (20 on the half grid)",
        "closed", {"i_max": 8, "order": 30, "half_order": 20}, None),
    4: ("printed y and alpha expansions, alpha(t,1) = 1 to order 30", "printed", {}, None),
    5: ("structural identities to order 30", "identities", {"order": 30}, None),
    6: ("continued fraction R, S at z = 1, 1/2, 2, -1/3 to order 30", "contfrac",
        {"order": 30}, None),
    7: ("exact asymptotic constants and order-400 estimates within 1%, under 10 minutes",
        "asymptotics", {"n_max": 400, "rel_tol": 0.01}, 600),
    8: ("cpq identity within 1e-30 at 50 digits, p = 2..5", "cpq", {"tol": 1e-30}, None),
    9: ("sampler chi-square at n = 2, 1e5 trials, significance 1e-3; seed determinism",
        "sampler", {"n": 2, "trials": 100_000, "seed": 2024, "alpha": 1e-3}, None),
}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    text, suite, kw, limit = CRITERIA[number]
    start = time.perf_counter()
    rep = verify.run_suite(suite, **kw)
    elapsed = time.perf_counter() - start
    ok = rep["ok"] and (limit is None or elapsed < limit)
    line = (f"criterion {number}: {'PASS' if ok else 'FAIL'} - {text} "
            f"[{rep['checked']} checks, {elapsed:.1f}s]")
    RESULTS[number] = line
    print(line)
    assert rep["ok"], rep["failures"]
    if limit is not None:
        assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
