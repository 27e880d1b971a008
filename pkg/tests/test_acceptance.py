"""Acceptance criteria, evaluated on the whole catalog at N = 16, seed 42.

Each criterion prints one line ``[ID] PASS|FAIL ...``.  Run directly with
``python3 tests/test_acceptance.py`` or through pytest (``-s`` shows the lines).
"""

import sys
import time

import pytest

from dadelab.harness import REGISTRY, run_suite
from dadelab.pgroup import CATALOG

PRECISION, SEED = 16, 42
CRITERIA = ["D1", "D2", "D3", "D4", "D5", "D6", "S1", "S2", "S3", "K1", "T1", "P1", "O1"]

# groups each criterion must cover
EXPECTED_GROUPS = {
    "D1": {"C2", "C4", "C8", "C2xC2", "C2xC4", "D8", "Q8"},
    "D2": {"C2", "C4", "C8"},
    "D3": {"C2", "C4", "C8", "C2xC2", "C2xC4", "D8", "Q8"},
    "D4": {"C4", "C8"},
    "D5": set(CATALOG),
    "D6": {"C3", "C9", "C3xC3"},
    "S1": {"Q8"},
    "S2": {"D8", "Q8"},
    "S3": set(CATALOG),
    "K1": set(CATALOG),
    "T1": set(CATALOG),
    "P1": set(CATALOG),
    "O1": {"C2", "C4"},
}

_cache = {}


def all_results():
    if "res" not in _cache:
        start = time.perf_counter()
        _cache["res"] = run_suite(list(CATALOG), PRECISION, SEED, "all")
        _cache["secs"] = time.perf_counter() - start
    return _cache["res"]


def evaluate(cid):
    """(passed, message) for one criterion."""
    res = [r for r in all_results() if r.check_id == cid]
    groups = {r.group for r in res}
    problems = []
    if groups != EXPECTED_GROUPS[cid]:
        problems.append(f"ran on {sorted(groups)}")
    fails = [r for r in res if r.status == "fail"]
    problems += [f"{r.group}: {r.details}" for r in fails]
    unresolved = [r for r in res if r.status == "unresolved"]
    if cid == "S2":
        # an order-2 class must be found somewhere; an unresolved search is
        # reported with its log, never counted as found
        if not any(r.status == "pass" for r in res):
            problems.append("no class of order 2 found")
    else:
        problems += [f"{r.group}: unresolved: {r.details}" for r in unresolved]
    if cid == "S3":
        v4 = [r for r in res if r.group == "C2xC2"]
        want = "omega/order=unresolved (order over k = Unresolved(4), over O = Unresolved(4))"
        if not v4 or want not in v4[0].details:
            problems.append("C2xC2: order of [Omega^1] is not Unresolved(4) on both sides")
    if cid == "D5":
        for g in ("C4", "C2xC2", "Q8"):
            r = [x for x in res if x.group == g]
            if not r or "Phi multiplicativity" not in r[0].details:
                problems.append(f"{g}: Phi multiplicativity not checked")
    ok = not problems
    notes = ", ".join(f"{r.group}={r.status}" for r in res)
    msg = f"[{cid}] {'PASS' if ok else 'FAIL'} {REGISTRY[cid].statement} ({notes})"
    if problems:
        msg += " :: " + " | ".join(problems)
    return ok, msg


@pytest.mark.parametrize("cid", CRITERIA)
def test_criterion(cid, capsys):
    ok, msg = evaluate(cid)
    with capsys.disabled():
        print("\n" + msg)
    assert ok, msg


def test_runtime_budget(capsys):
    all_results()
    with capsys.disabled():
        print(f"\nsuite with precision rerun took {_cache['secs']:.1f}s")
    assert _cache["secs"] < 600


if __name__ == "__main__":
    outcomes = [evaluate(c) for c in CRITERIA]
    for _, msg in outcomes:
        print(msg)
    print(f"total {_cache['secs']:.1f}s")
    sys.exit(0 if all(ok for ok, _ in outcomes) else 1)
