"""Acceptance battery: criteria 1-10, one PASS/FAIL line each.

Run directly (``python tests/test_acceptance.py``) or through pytest; the
lines are printed either way.
"""
import subprocess
import sys
import time
from pathlib import Path

import pytest

from fglab import selftest as st

SEED = 42
# runtime targets in seconds
LIMITS = {1: 30, 7: 60, 8: 60}
ROOT = Path(__file__).resolve().parent.parent


def _cli_selftest():
    p = subprocess.run([sys.executable, "-m", "fglab", "selftest", "--seed", str(SEED)],
                       capture_output=True, cwd=ROOT)
    return p.returncode, p.stdout


def evaluate(cid):
    t0 = time.perf_counter()
    res = st.run_criterion(cid, SEED)
    elapsed = time.perf_counter() - t0
    failed = [k for k, v in res["checks"].items() if not v]
    notes = []
    if res["golden"] != "match":
        notes.append(f"golden {res['golden']}")
    if cid in LIMITS and elapsed > LIMITS[cid]:
        notes.append(f"over {LIMITS[cid]} s")
    if cid == 10:
        a, b = _cli_selftest(), _cli_selftest()
        if a[0] != 0 or a != b:
            notes.append("cli reports differ")
    ok = res["ok"] and not failed and not notes
    return ok, elapsed, failed + notes


def report_line(cid, ok, elapsed, problems):
    name = st.CRITERIA[cid][0]
    line = f"criterion {cid:2d} {'PASS' if ok else 'FAIL'}  {name} ({elapsed:.1f} s)"
    if problems:
        line += "  [" + ", ".join(problems) + "]"
    return line


@pytest.mark.parametrize("cid", sorted(st.CRITERIA))
def test_criterion(cid, capsys):
    ok, elapsed, problems = evaluate(cid)
    with capsys.disabled():
        print("\n" + report_line(cid, ok, elapsed, problems))
    assert ok, problems


if __name__ == "__main__":
    all_ok = True
    for cid in sorted(st.CRITERIA):
        ok, elapsed, problems = evaluate(cid)
        all_ok &= ok
        print(report_line(cid, ok, elapsed, problems), flush=True)
    sys.exit(0 if all_ok else 1)
