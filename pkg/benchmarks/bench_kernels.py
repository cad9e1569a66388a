"""Compare the numba kernels with the interpreted fallback.

The backend is fixed at import time by FFCUBIC_NUMBA, so each backend runs
in its own subprocess.  Every workload is run once to warm up (JIT compile
or cache load) and then timed; the best of ``--repeat`` runs is reported.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick] [--json out.json]
"""
import argparse
import json
import os
import subprocess
import sys
import tempfile

WORKER = r"""
import json, sys, time
from ffcubic._accel import backend
from ffcubic.ffield import make_field
from ffcubic.characters import family_array
from ffcubic.gauss import gauss_general
from ffcubic.lfunc import family_lcoeffs
from ffcubic.polyring import Poly, prime_table, _prime_table_mem
from ffcubic.series import a3_from_definition

repeat, quick = int(sys.argv[1]), sys.argv[2] == "1"
ctx = make_field(5)
fam2 = family_array(ctx, 2)
fam4 = family_array(ctx, 4)[: 500 if quick else 3000]
f = Poly.parse(ctx, "T^3+(1*x)*T+2", over="q2")
V = Poly.parse(ctx, "T+1", over="q2")

def primes():
    _prime_table_mem.cache_clear()
    prime_table(ctx, "q", 6)

work = {
    "prime_table_deg6": primes,
    "lcoeffs_g2_all": lambda: family_lcoeffs(ctx, fam2, 3),
    f"lcoeffs_g4_{len(fam4)}": lambda: family_lcoeffs(ctx, fam4, 5),
    "gauss_deg3": lambda: gauss_general(V, f, method="direct"),
    "a3_definition_2x3": lambda: a3_from_definition(ctx, 2, 3),
}
out = {"backend": backend(), "times": {}}
for name, fn in work.items():
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out["times"][name] = best
print(json.dumps(out))
"""


def run_backend(flag, repeat, quick):
    env = dict(os.environ, FFCUBIC_NUMBA=flag)
    env.setdefault("FFCUBIC_CACHE", tempfile.mkdtemp(prefix="ffcubic-bench-"))
    p = subprocess.run(
        [sys.executable, "-c", WORKER, str(repeat), "1" if quick else "0"],
        capture_output=True,
        text=True,
        env=env,
    )
    if p.returncode:
        sys.exit(p.stderr)
    return json.loads(p.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller g=4 slice")
    ap.add_argument("--json", help="write the timings to this path")
    args = ap.parse_args()

    fast = run_backend("1", args.repeat, args.quick)
    slow = run_backend("0", args.repeat, args.quick)
    print(f"{'workload':<24}{'numba [s]':>12}{'python [s]':>12}{'speedup':>10}")
    for name, t_fast in fast["times"].items():
        t_slow = slow["times"][name]
        print(f"{name:<24}{t_fast:>12.4f}{t_slow:>12.4f}{t_slow / t_fast:>9.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"numba": fast, "python": slow}, fh, indent=2)


if __name__ == "__main__":
    main()
