"""Acceptance criteria C1-C10, one test per criterion.

Each test prints a single PASS/FAIL line with the check's detail and its
wall time.  Run this file directly to get just the ten lines:

    python tests/test_acceptance.py
"""
import sys
import time

import pytest

from ffcubic import verify
from ffcubic.ffield import make_field

# (id, description, check, kwargs, runtime budget in seconds)
CRITERIA = [
    ("C1", "Gauss modulus |G(1,F)|^2 = q^(2 deg F)", verify.gauss_modulus, {}, 10),
    ("C2", "functional equation solved exactly, literal form flagged", verify.functional_equation, {}, 30),
    ("C3", "Weil bound for g=0,2 and 100 sampled g=4 characters", verify.weil_bound, {}, 60),
    ("C4", "family and conductor-side enumeration agree", verify.family_bijection, {}, 60),
    ("C5", "A3 definition equals rearrangement on a,b <= 3", verify.a3_rearrangement, {"U": 3, "V": 3}, 300),
    ("C6", "moment against main term for g=0,2,4", verify.moment_vs_main, {"D": 30, "jobs": 8}, 900),
    ("C7", "twisted multiplicativity and prime-power cases over GF(25)", verify.gauss_product_suite, {}, 60),
    ("C8", "chi_D(N) = 1 for D, N in GF(5)[T] of degree <= 3", verify.chi_D_trivial, {"maxdeg": 3}, 30),
    ("C9", "moment report identical across jobs and cache states", verify.determinism, {"jobs": (1, 4, 8)}, 120),
    ("C10", "Euler constants converge; Z product matches N-sum", verify.euler_convergence, {"D": 30, "zdeg": 6}, 10),
]


def run_criterion(cid, check, kwargs):
    ctx = make_field(5)
    t0 = time.perf_counter()
    ok, detail = check(ctx, **kwargs)
    return bool(ok), detail, time.perf_counter() - t0


def format_line(cid, desc, ok, seconds, budget, detail):
    status = "PASS" if ok else "FAIL"
    return f"{cid:<4} {status}  {desc}  [{seconds:.2f}s / {budget}s]  {detail}"


@pytest.mark.parametrize("cid,desc,check,kwargs,budget", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(cid, desc, check, kwargs, budget, capsys):
    ok, detail, seconds = run_criterion(cid, check, kwargs)
    within = seconds <= budget
    with capsys.disabled():
        print("\n" + format_line(cid, desc, ok and within, seconds, budget, detail))
    assert ok, detail
    assert within, f"{cid} took {seconds:.1f}s (budget {budget}s)"


if __name__ == "__main__":
    failures = 0
    for cid, desc, check, kwargs, budget in CRITERIA:
        ok, detail, seconds = run_criterion(cid, check, kwargs)
        ok = ok and seconds <= budget
        failures += not ok
        print(format_line(cid, desc, ok, seconds, budget, detail), flush=True)
    sys.exit(1 if failures else 0)
