"""Compare the compiled and pure-Python row-reduction kernels.

    python3 benchmarks/bench_kernels.py [--sizes 40 80 160] [--repeat 3] [--no-end-to-end]

The first table times ``rref`` on random dense matrices over F_p; the second
runs ``thilb coeffs`` on bundled rings in a subprocess with and without
``THILB_PURE=1``.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from thilb import linalg


def random_matrix(n: int, p: int, seed: int) -> list[list[int]]:
    rng = random.Random(seed)
    return [[rng.randrange(p) for _ in range(n)] for _ in range(n)]


def bench_rref(sizes, p: int, repeat: int) -> list[tuple]:
    rows = []
    for n in sizes:
        m = random_matrix(n, p, n)
        assert linalg.rref(m, n, p, "python") == linalg.rref(m, n, p, "cython")
        t_py = min(timeit.repeat(lambda: linalg.rref(m, n, p, "python"), number=1, repeat=repeat))
        t_cy = min(timeit.repeat(lambda: linalg.rref(m, n, p, "cython"), number=1, repeat=repeat))
        rows.append((n, t_py, t_cy))
    return rows


def bench_cli(rings, repeat: int) -> list[tuple]:
    rows = []
    cmd = [sys.executable, "-m", "thilb.cli", "coeffs"]
    for ring in rings:
        times = {}
        for label, pure in (("python", "1"), ("cython", "0")):
            env = dict(os.environ, THILB_PURE=pure)
            times[label] = min(
                timeit.repeat(
                    lambda: subprocess.run(cmd + [ring, "--json"], env=env, check=True, capture_output=True),
                    number=1,
                    repeat=repeat,
                )
            )
        rows.append((ring, times["python"], times["cython"]))
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[40, 80, 160, 240])
    ap.add_argument("--prime", type=int, default=32003)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--rings", nargs="+", default=["two-planes-thick", "fermat-cubic"])
    ap.add_argument("--no-end-to-end", action="store_true")
    args = ap.parse_args(argv)

    if linalg.BACKEND != "cython":
        print("compiled kernel not available; build with `pip install -e . --no-build-isolation`")
        return 1
    print(f"rref over F_{args.prime}, best of {args.repeat}")
    print(f"{'n':>6} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for n, t_py, t_cy in bench_rref(args.sizes, args.prime, args.repeat):
        print(f"{n:>6} {t_py:>10.4f} {t_cy:>10.4f} {t_py / t_cy:>7.1f}x")
    if not args.no_end_to_end:
        print()
        print(f"thilb coeffs, wall clock, best of {args.repeat}")
        print(f"{'ring':<18} {'python s':>10} {'cython s':>10} {'speedup':>8}")
        for ring, t_py, t_cy in bench_cli(args.rings, args.repeat):
            print(f"{ring:<18} {t_py:>10.3f} {t_cy:>10.3f} {t_py / t_cy:>7.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
